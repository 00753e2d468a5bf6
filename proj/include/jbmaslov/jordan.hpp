#pragma once

#include <span>

#include "jbmaslov/linalg.hpp"

namespace jbmaslov {

/// An invertible tripotent of Sym(C^n): a complex symmetric unitary matrix.
///
/// The conjugation on C^n is entrywise, so the bar operation on matrices is
/// entrywise conjugation and Sigma = { x symmetric : x conj(x) = I }.
/// Construction re-symmetrizes the input and then validates both invariants
/// at the given Frobenius tolerance.
class SymUnitary {
 public:
  static SymUnitary from_matrix(const CMatrix& m, double tol = kTolStruct);
  static SymUnitary identity(int n);
  /// diag(e^{i angles_j}).
  static SymUnitary diagonal(std::span<const double> angles);
  /// frame * diag(e^{i angles_j}) * frame^T for a real orthogonal frame.
  static SymUnitary frame_diagonal(const RMatrix& frame, std::span<const double> angles,
                                   double tol = kTolStruct);

  const CMatrix& matrix() const { return m_; }
  int dimension() const { return static_cast<int>(m_.rows()); }

  /// Frobenius residuals of the two defining invariants.
  static double symmetry_residual(const CMatrix& m);
  static double unitarity_residual(const CMatrix& m);

 private:
  explicit SymUnitary(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// {x, y, z} = (x conj(y) z + z conj(y) x) / 2.
CMatrix triple_product(const CMatrix& x, const CMatrix& y, const CMatrix& z);

/// Orthonormal basis of Sym(C^n) under the Frobenius pairing:
/// E_jj, then (E_jk + E_kj)/sqrt(2) for j < k, in row order.
std::vector<CMatrix> sym_basis(int n);

/// The Bergman operator z -> (I - x conj(y)) z (I - conj(y) x) on Sym(C^n).
class BergmanOperator {
 public:
  BergmanOperator(CMatrix left, CMatrix right) : left_(std::move(left)), right_(std::move(right)) {}

  CMatrix apply(const CMatrix& z) const { return left_ * z * right_; }
  /// Matrix of the operator on sym_basis(n); size n(n+1)/2.
  CMatrix dense() const;
  int dimension() const { return static_cast<int>(left_.rows()); }

 private:
  CMatrix left_;
  CMatrix right_;
};

BergmanOperator bergman(const CMatrix& x, const CMatrix& y);

/// Inverse of x in the Jordan algebra with unit e; for units this is
/// Q(e)x = e conj(x) e.
CMatrix jordan_inverse(const SymUnitary& x, const SymUnitary& e);

/// Jordan product x o y = {x, e, y} of the algebra with unit e.
CMatrix jordan_product(const CMatrix& x, const CMatrix& e, const CMatrix& y);

struct AxiomResiduals {
  double triple_identity = 0.0;  // Frobenius residual of the Jordan triple identity
  double norm_axiom = 0.0;       // | ||{x,x,x}|| - ||x||^3 | / max(||x||^3, tiny)
};

/// Residuals of the Jordan triple identity on (u, v, x, y, z) and of the
/// cubic norm axiom on x, with the operator norm.
AxiomResiduals validate_axioms(const CMatrix& x, const CMatrix& y, const CMatrix& z,
                               const CMatrix& u, const CMatrix& v);

}  // namespace jbmaslov

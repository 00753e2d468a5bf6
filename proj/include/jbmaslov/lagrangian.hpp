#pragma once

#include "jbmaslov/jordan.hpp"

namespace jbmaslov {

// Coordinates on R^2n are (eta, xi) with eta the first n entries. The
// symplectic form is omega(eta+xi, eta'+xi') = <eta, xi'> - <xi, eta'>,
// i.e. omega(u, v) = u^T Omega v with Omega = [[0, I], [-I, 0]].

/// Omega for R^2n.
RMatrix symplectic_matrix(int n);

/// Orthonormal real 2n x n frame spanning a Lagrangian subspace of R^2n.
/// Frames are canonicalized through a positive-diagonal QR of the input
/// basis; compare subspaces with principal angles, not entries.
class LagrangianFrame {
 public:
  /// Validates orthonormality and isotropy at tol, then canonicalizes.
  static LagrangianFrame from_matrix(const RMatrix& frame, double tol = kTolStruct);
  /// Accepts any full-rank basis of a Lagrangian; orthonormalizes first.
  static LagrangianFrame from_basis(const RMatrix& basis, double tol = kTolStruct);

  const RMatrix& frame() const { return frame_; }
  int dimension() const { return static_cast<int>(frame_.cols()); }

 private:
  explicit LagrangianFrame(RMatrix f) : frame_(std::move(f)) {}
  RMatrix frame_;
};

/// Real Lagrangian -> unit. With frame [A; B], the complexified Lagrangian
/// is mapped by the Cayley transform onto the graph of x = -i U U^T where
/// U = A + iB.
SymUnitary lagrangian_to_tripotent(const LagrangianFrame& lambda);

/// Unit -> real Lagrangian: the conjugation-stable subspace
/// C^{-1}(graph x) = span [x - iI; I - ix] intersected with R^2n.
LagrangianFrame tripotent_to_lagrangian(const SymUnitary& x);

struct PairReport {
  int dim_intersection = 0;
  bool transverse = false;
  bool fredholm = true;  // always, in finite dimension
};

/// dim ker(y - x) = dim(lambda cap mu) for the Lagrangians of x and y.
PairReport pair_report(const SymUnitary& x, const SymUnitary& y, double tol_rank = kTolRank);

/// dim(lambda cap mu) from frames alone: 2n - rank [frame_l | frame_m].
int intersection_dimension(const LagrangianFrame& l, const LagrangianFrame& m,
                           double tol_rank = kTolRank);

/// z -> u z u^T. u must be unitary within tol.
CMatrix unitary_act(const CMatrix& u, const CMatrix& z, double tol = kTolStruct);
SymUnitary unitary_act(const CMatrix& u, const SymUnitary& x, double tol = kTolStruct);

}  // namespace jbmaslov

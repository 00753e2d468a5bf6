#include "jbmaslov/jordan.hpp"

#include <cmath>
#include <sstream>

namespace jbmaslov {

double SymUnitary::symmetry_residual(const CMatrix& m) { return (m - m.transpose()).norm(); }

double SymUnitary::unitarity_residual(const CMatrix& m) {
  return (m * m.conjugate() - CMatrix::Identity(m.rows(), m.cols())).norm();
}

SymUnitary SymUnitary::from_matrix(const CMatrix& m, double tol) {
  require_square(m, "SymUnitary");
  if (!m.allFinite()) throw InvalidArgument("SymUnitary: non-finite entries");
  const double asym = symmetry_residual(m);
  if (asym > tol) {
    std::ostringstream os;
    os << "SymUnitary: matrix is not symmetric (||m^T - m||_F = " << asym << ")";
    throw InvalidArgument(os.str());
  }
  CMatrix sym = 0.5 * (m + m.transpose());
  const double unit = unitarity_residual(sym);
  if (unit > tol) {
    std::ostringstream os;
    os << "SymUnitary: matrix is not unitary (||m conj(m) - I||_F = " << unit << ")";
    throw InvalidArgument(os.str());
  }
  return SymUnitary(std::move(sym));
}

SymUnitary SymUnitary::identity(int n) {
  if (n <= 0) throw InvalidArgument("SymUnitary::identity: n must be positive");
  return SymUnitary(CMatrix::Identity(n, n));
}

SymUnitary SymUnitary::diagonal(std::span<const double> angles) {
  if (angles.empty()) throw InvalidArgument("SymUnitary::diagonal: no angles");
  const auto n = static_cast<Eigen::Index>(angles.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m(j, j) = std::polar(1.0, angles[j]);
  return SymUnitary(std::move(m));
}

SymUnitary SymUnitary::frame_diagonal(const RMatrix& frame, std::span<const double> angles,
                                      double tol) {
  const auto n = static_cast<Eigen::Index>(angles.size());
  if (frame.rows() != n || frame.cols() != n || n == 0) {
    throw InvalidArgument("SymUnitary::frame_diagonal: frame must be n x n with n = #angles");
  }
  if ((frame.transpose() * frame - RMatrix::Identity(n, n)).norm() > tol) {
    throw InvalidArgument("SymUnitary::frame_diagonal: frame is not orthogonal");
  }
  CVector d(n);
  for (Eigen::Index j = 0; j < n; ++j) d[j] = std::polar(1.0, angles[j]);
  const CMatrix o = frame.cast<Complex>();
  CMatrix m = o * d.asDiagonal() * o.transpose();
  return SymUnitary(0.5 * (m + m.transpose()));
}

CMatrix triple_product(const CMatrix& x, const CMatrix& y, const CMatrix& z) {
  require_square(x, "triple_product");
  require_same_dimension(x, y, "triple_product");
  require_same_dimension(x, z, "triple_product");
  const CMatrix yb = y.conjugate();
  return 0.5 * (x * yb * z + z * yb * x);
}

CMatrix jordan_product(const CMatrix& x, const CMatrix& e, const CMatrix& y) {
  return triple_product(x, e, y);
}

std::vector<CMatrix> sym_basis(int n) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    CMatrix b = CMatrix::Zero(n, n);
    b(j, j) = 1.0;
    basis.push_back(std::move(b));
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      CMatrix b = CMatrix::Zero(n, n);
      b(j, k) = s;
      b(k, j) = s;
      basis.push_back(std::move(b));
    }
  }
  return basis;
}

CMatrix BergmanOperator::dense() const {
  const auto basis = sym_basis(dimension());
  const auto d = static_cast<Eigen::Index>(basis.size());
  CMatrix out(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    const CMatrix image = apply(basis[b]);
    for (Eigen::Index a = 0; a < d; ++a) {
      // <basis_a, image>_F with the Hermitian Frobenius pairing.
      out(a, b) = (basis[a].conjugate().cwiseProduct(image)).sum();
    }
  }
  return out;
}

BergmanOperator bergman(const CMatrix& x, const CMatrix& y) {
  require_square(x, "bergman");
  require_same_dimension(x, y, "bergman");
  const auto n = x.rows();
  const CMatrix yb = y.conjugate();
  const CMatrix id = CMatrix::Identity(n, n);
  return BergmanOperator(id - x * yb, id - yb * x);
}

CMatrix jordan_inverse(const SymUnitary& x, const SymUnitary& e) {
  require_same_dimension(x.matrix(), e.matrix(), "jordan_inverse");
  const CMatrix& em = e.matrix();
  return em * x.matrix().conjugate() * em;
}

AxiomResiduals validate_axioms(const CMatrix& x, const CMatrix& y, const CMatrix& z,
                               const CMatrix& u, const CMatrix& v) {
  require_square(x, "validate_axioms");
  for (const CMatrix* m : {&y, &z, &u, &v}) require_same_dimension(x, *m, "validate_axioms");

  const CMatrix lhs = triple_product(u, v, triple_product(x, y, z));
  const CMatrix rhs = triple_product(triple_product(u, v, x), y, z) -
                      triple_product(x, triple_product(v, u, y), z) +
                      triple_product(x, y, triple_product(u, v, z));
  AxiomResiduals r;
  r.triple_identity = (lhs - rhs).norm();

  const double nx = operator_norm(x);
  const double cube = nx * nx * nx;
  const double nxxx = operator_norm(triple_product(x, x, x));
  r.norm_axiom = cube > 0.0 ? std::abs(nxxx - cube) / cube : nxxx;
  return r;
}

}  // namespace jbmaslov

#include "jbmaslov/lagrangian.hpp"

#include <cmath>
#include <sstream>

namespace jbmaslov {

RMatrix symplectic_matrix(int n) {
  RMatrix omega = RMatrix::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = RMatrix::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -RMatrix::Identity(n, n);
  return omega;
}

namespace {

void check_lagrangian(const RMatrix& f, double tol) {
  const auto n = f.cols();
  if (f.rows() != 2 * n || n == 0) {
    throw InvalidArgument("LagrangianFrame: frame must be 2n x n with n >= 1");
  }
  if (!f.allFinite()) throw InvalidArgument("LagrangianFrame: non-finite entries");
  const double ortho = (f.transpose() * f - RMatrix::Identity(n, n)).norm();
  if (ortho > tol) {
    std::ostringstream os;
    os << "LagrangianFrame: columns are not orthonormal (residual " << ortho << ")";
    throw InvalidArgument(os.str());
  }
  const double iso = (f.transpose() * symplectic_matrix(static_cast<int>(n)) * f).norm();
  if (iso > tol) {
    std::ostringstream os;
    os << "LagrangianFrame: span is not isotropic (||F^T Omega F|| = " << iso << ")";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

LagrangianFrame LagrangianFrame::from_matrix(const RMatrix& frame, double tol) {
  check_lagrangian(frame, tol);
  return LagrangianFrame(orthonormalize_positive_qr(frame));
}

LagrangianFrame LagrangianFrame::from_basis(const RMatrix& basis, double tol) {
  if (basis.rows() != 2 * basis.cols() || basis.cols() == 0) {
    throw InvalidArgument("LagrangianFrame: basis must be 2n x n with n >= 1");
  }
  if (numerical_rank(basis) != basis.cols()) {
    throw InvalidArgument("LagrangianFrame: basis is rank deficient");
  }
  const RMatrix q = orthonormalize_positive_qr(basis);
  check_lagrangian(q, tol);
  return LagrangianFrame(q);
}

SymUnitary lagrangian_to_tripotent(const LagrangianFrame& lambda) {
  const auto n = lambda.dimension();
  const RMatrix& f = lambda.frame();
  CMatrix u(n, n);
  u.real() = f.topRows(n);
  u.imag() = f.bottomRows(n);
  const CMatrix x = Complex(0.0, -1.0) * u * u.transpose();
  return SymUnitary::from_matrix(x, 1e-8);
}

LagrangianFrame tripotent_to_lagrangian(const SymUnitary& x) {
  const auto n = x.dimension();
  const CMatrix id = CMatrix::Identity(n, n);
  const Complex i(0.0, 1.0);
  CMatrix m(2 * n, n);
  m.topRows(n) = x.matrix() - i * id;
  m.bottomRows(n) = id - i * x.matrix();
  m /= std::sqrt(2.0);  // orthonormal columns
  const RMatrix real_frame = real_basis_of_conjugation_stable(m);
  return LagrangianFrame::from_matrix(real_frame, 1e-8);
}

PairReport pair_report(const SymUnitary& x, const SymUnitary& y, double tol_rank) {
  require_same_dimension(x.matrix(), y.matrix(), "pair_report");
  const int n = x.dimension();
  PairReport r;
  r.dim_intersection = n - numerical_rank(CMatrix(y.matrix() - x.matrix()), tol_rank);
  r.transverse = r.dim_intersection == 0;
  r.fredholm = true;
  return r;
}

int intersection_dimension(const LagrangianFrame& l, const LagrangianFrame& m, double tol_rank) {
  if (l.dimension() != m.dimension()) {
    throw InvalidArgument("intersection_dimension: dimension mismatch");
  }
  const int n = l.dimension();
  RMatrix stacked(2 * n, 2 * n);
  stacked << l.frame(), m.frame();
  return 2 * n - numerical_rank(stacked, tol_rank);
}

CMatrix unitary_act(const CMatrix& u, const CMatrix& z, double tol) {
  require_square(u, "unitary_act");
  require_same_dimension(u, z, "unitary_act");
  const double res = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
  if (res > tol) {
    std::ostringstream os;
    os << "unitary_act: u is not unitary (||u^* u - I||_F = " << res << ")";
    throw InvalidArgument(os.str());
  }
  return u * z * u.transpose();
}

SymUnitary unitary_act(const CMatrix& u, const SymUnitary& x, double tol) {
  return SymUnitary::from_matrix(unitary_act(u, x.matrix(), tol), 1e-8);
}

}  // namespace jbmaslov

#include "jbmaslov/index_calculus.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "jbmaslov/spectral.hpp"

namespace jbmaslov {

namespace {

// Takagi form of a symmetric unitary relative to the identity.
JordanDecomposition takagi(const SymUnitary& x, double tol_cluster) {
  const int n = x.dimension();
  const RelativeEigen rel = relative_eigen(x, SymUnitary::identity(n), tol_cluster);
  JordanDecomposition d;
  d.frame.resize(n, n);
  d.transport = CMatrix::Identity(n, n);
  int col = 0;
  for (const auto& cluster : rel.clusters) {
    CMatrix v(n, static_cast<Eigen::Index>(cluster.members.size()));
    for (std::size_t k = 0; k < cluster.members.size(); ++k) {
      v.col(static_cast<Eigen::Index>(k)) = rel.eigen.vectors.col(cluster.members[k]);
    }
    const RMatrix q = real_basis_of_conjugation_stable(v);
    std::vector<int> group;
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
      d.frame.col(col) = q.col(k);
      d.angles.push_back(cluster.angle);
      group.push_back(col++);
    }
    d.groups.push_back(std::move(group));
  }
  if (col != n) throw NumericalFailure("jordan_decompose: eigenspaces do not span C^n");
  return d;
}

double det_arg(const CMatrix& m) { return std::arg(m.determinant()); }

RMatrix angle_rows(const std::vector<double>& from, const std::vector<double>& to) {
  const auto n = static_cast<Eigen::Index>(from.size());
  RMatrix a(2, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    a(0, j) = from[static_cast<std::size_t>(j)];
    a(1, j) = to[static_cast<std::size_t>(j)];
  }
  return a;
}

TripotentPath::Piece leg_of(const TripotentPath& single) { return single.pieces().front(); }

}  // namespace

std::vector<CMatrix> JordanDecomposition::idempotents() const {
  std::vector<CMatrix> out;
  const CMatrix o = frame.cast<Complex>();
  for (const auto& group : groups) {
    CMatrix sub(o.rows(), static_cast<Eigen::Index>(group.size()));
    for (std::size_t k = 0; k < group.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = o.col(group[k]);
    out.push_back(transport * sub * sub.transpose() * transport.transpose());
  }
  return out;
}

CMatrix JordanDecomposition::reconstruct() const {
  const auto n = frame.rows();
  CVector diag(n);
  for (Eigen::Index j = 0; j < n; ++j) diag(j) = std::polar(1.0, angles[static_cast<std::size_t>(j)]);
  const CMatrix o = frame.cast<Complex>();
  return transport * o * diag.asDiagonal() * o.transpose() * transport.transpose();
}

JordanDecomposition jordan_decompose(const SymUnitary& x, const SymUnitary& e, double tol_cluster) {
  require_same_dimension(x.matrix(), e.matrix(), "jordan_decompose");
  const int n = x.dimension();
  CMatrix u = CMatrix::Identity(n, n);
  JordanDecomposition d;
  if ((e.matrix() - CMatrix::Identity(n, n)).norm() <= kTolStruct) {
    d = takagi(x, tol_cluster);
  } else {
    const JordanDecomposition de = takagi(e, tol_cluster);
    CVector half(n);
    for (int j = 0; j < n; ++j) half(j) = std::polar(1.0, 0.5 * de.angles[static_cast<std::size_t>(j)]);
    u = de.frame.cast<Complex>() * half.asDiagonal();
    const CMatrix moved = u.adjoint() * x.matrix() * u.conjugate();
    d = takagi(SymUnitary::from_matrix(moved, 1e-8), tol_cluster);
  }
  d.transport = u;
  const double residual = (d.reconstruct() - x.matrix()).norm();
  if (residual > 1e-8) {
    std::ostringstream os;
    os << "jordan_decompose: reconstruction residual " << residual;
    throw NumericalFailure(os.str());
  }
  return d;
}

LiftedPoint::LiftedPoint(SymUnitary x, double lift, SymUnitary base, double tol)
    : x_(std::move(x)), lift_(lift), base_(std::move(base)) {
  require_same_dimension(x_.matrix(), base_.matrix(), "LiftedPoint");
  if (!std::isfinite(lift_)) throw InvalidArgument("LiftedPoint: lift is not finite");
  const Complex d = (x_.matrix() * base_.matrix().conjugate()).determinant();
  const double gap = std::abs(d - std::polar(1.0, lift_));
  if (gap > tol) {
    std::ostringstream os;
    os << "LiftedPoint: e^{i lift} differs from det(x conj(base)) by " << gap;
    throw InvalidArgument(os.str());
  }
}

LiftedPoint::LiftedPoint(SymUnitary x, double lift, double tol)
    : LiftedPoint(x, lift, SymUnitary::identity(x.dimension()), tol) {}

LiftedPoint LiftedPoint::principal(SymUnitary x, SymUnitary base) {
  const double lift = det_arg(x.matrix() * base.matrix().conjugate());
  return LiftedPoint(std::move(x), lift, std::move(base));
}

LiftedPoint LiftedPoint::principal(SymUnitary x) {
  const int n = x.dimension();
  return principal(std::move(x), SymUnitary::identity(n));
}

LiftedPoint LiftedPoint::deck(int k) const { return LiftedPoint(x_, lift_ + kTwoPi * k, base_); }

LiftedPoint LiftedPoint::rebased(const SymUnitary& new_base) const {
  require_same_dimension(base_.matrix(), new_base.matrix(), "LiftedPoint::rebased");
  const Complex shift = base_.matrix().determinant() * std::conj(new_base.matrix().determinant());
  return LiftedPoint(x_, lift_ + std::arg(shift), new_base);
}

double lift_path(const TripotentPath& path, const SymUnitary& e_ref, double lift0,
                 const IndexOptions& options) {
  const Complex d0 = (path.start().matrix() * e_ref.matrix().conjugate()).determinant();
  if (std::abs(d0 - std::polar(1.0, lift0)) > 1e-8) {
    throw InvalidArgument("lift_path: initial lift does not match det(x(0) conj(e_ref))");
  }
  return lift0 + det_argument_change(path, e_ref, options);
}

TripotentPath connecting_path(const LiftedPoint& sigma, const LiftedPoint& tau, ConnectingRoute route,
                              double tol_cluster) {
  if (sigma.dimension() != tau.dimension()) throw InvalidArgument("connecting_path: dimension mismatch");
  if ((sigma.base().matrix() - tau.base().matrix()).norm() > 1e-8) {
    throw InvalidArgument("connecting_path: lifted points use different cover bases");
  }
  const int n = sigma.dimension();
  const SymUnitary id = SymUnitary::identity(n);
  const JordanDecomposition ds = jordan_decompose(sigma.point(), id, tol_cluster);
  JordanDecomposition dt = jordan_decompose(tau.point(), id, tol_cluster);
  const std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);

  std::vector<TripotentPath> legs;
  if (route == ConnectingRoute::through_identity) {
    legs.push_back(TripotentPath::frame_diagonal(ds.frame, {0.0, 1.0}, angle_rows(ds.angles, zeros), 1e-8));
    legs.push_back(TripotentPath::frame_diagonal(dt.frame, {0.0, 1.0}, angle_rows(zeros, dt.angles), 1e-8));
  } else {
    if (ds.frame.determinant() * dt.frame.determinant() < 0.0) dt.frame.col(0) *= -1.0;
    const RMatrix generator = skew_log(dt.frame * ds.frame.transpose());
    legs.push_back(TripotentPath::frame_rotation(generator, sigma.point(), 1e-8));
    legs.push_back(TripotentPath::frame_diagonal(dt.frame, {0.0, 1.0}, angle_rows(ds.angles, dt.angles), 1e-8));
  }

  const double moved = std::accumulate(dt.angles.begin(), dt.angles.end(), 0.0) -
                       std::accumulate(ds.angles.begin(), ds.angles.end(), 0.0);
  const double turns = (tau.lift() - sigma.lift() - moved) / kTwoPi;
  const double k = std::round(turns);
  if (std::abs(turns - k) > 1e-6) {
    std::ostringstream os;
    os << "connecting_path: lifts need " << turns << " eigenvalue turns; lift data is inconsistent";
    throw InvalidArgument(os.str());
  }
  if (k != 0.0) {
    std::vector<double> twisted = dt.angles;
    twisted[0] += kTwoPi * k;
    legs.push_back(TripotentPath::frame_diagonal(dt.frame, {0.0, 1.0}, angle_rows(dt.angles, twisted), 1e-8));
  }

  std::vector<TripotentPath::Piece> pieces;
  const double width = 1.0 / static_cast<double>(legs.size());
  for (std::size_t i = 0; i < legs.size(); ++i) {
    TripotentPath::Piece p = leg_of(legs[i]);
    p.t0 = width * static_cast<double>(i);
    p.t1 = i + 1 == legs.size() ? 1.0 : width * static_cast<double>(i + 1);
    pieces.push_back(std::move(p));
  }
  return TripotentPath::from_pieces(std::move(pieces), 1e-8);
}

int mas_two_points(const LiftedPoint& sigma, const LiftedPoint& tau, const SymUnitary& e,
                   ConnectingRoute route, const IndexOptions& options) {
  const TripotentPath path = connecting_path(sigma, tau, route, options.tol_cluster);
  const IndexReport report = maslov_index(path, e, options);
  if (!report.certified) {
    throw NumericalFailure("mas_two_points: connecting path could not be certified");
  }
  return report.value;
}

int kashiwara_index(const LagrangianFrame& l1, const LagrangianFrame& l2, const LagrangianFrame& l3,
                    double tol) {
  const int n = l1.dimension();
  if (l2.dimension() != n || l3.dimension() != n) {
    throw InvalidArgument("kashiwara_index: dimension mismatch");
  }
  const RMatrix omega = symplectic_matrix(n);
  const RMatrix* f[3] = {&l1.frame(), &l2.frame(), &l3.frame()};
  RMatrix gram = RMatrix::Zero(3 * n, 3 * n);
  // q = omega(v1,v2) + omega(v2,v3) + omega(v3,v1): block (a, a+1) carries half of omega.
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const RMatrix half = 0.5 * f[a]->transpose() * omega * *f[b];
    gram.block(a * n, b * n, n, n) += half;
    gram.block(b * n, a * n, n, n) += half.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<RMatrix> eig(gram, Eigen::EigenvaluesOnly);
  const RVector& ev = eig.eigenvalues();
  const double cut = tol * std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  int signature = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > cut) ++signature;
    if (ev(k) < -cut) --signature;
  }
  return signature;
}

int souriau_m(const LiftedPoint& sigma, const LiftedPoint& tau, const IndexOptions& options) {
  const int mas = mas_two_points(sigma, tau, sigma.point(), ConnectingRoute::through_identity, options);
  return 2 * mas - mu(tau.point(), sigma.point(), 0.0, options.tol_cluster) + sigma.dimension();
}

FormulaECheck check_formula_E(const LiftedPoint& sigma, const LiftedPoint& tau, const SymUnitary& e,
                              const IndexOptions& options) {
  FormulaECheck c;
  c.lhs = mas_two_points(sigma, tau, e, ConnectingRoute::through_identity, options);
  c.m = souriau_m(sigma, tau, options);
  c.iota = kashiwara_index(tripotent_to_lagrangian(e), tripotent_to_lagrangian(tau.point()),
                           tripotent_to_lagrangian(sigma.point()));
  c.mu_tau = mu(tau.point(), e, 0.0, options.tol_cluster);
  c.mu_sigma = mu(sigma.point(), e, 0.0, options.tol_cluster);
  c.rhs_numerator = c.m + c.iota + c.mu_tau - c.mu_sigma;
  c.rhs_integral = c.rhs_numerator % 2 == 0;
  c.equal = c.rhs_integral && c.rhs_numerator == 2 * c.lhs;
  return c;
}

LerayCheck check_leray(const LiftedPoint& tau, const LiftedPoint& tau_prime, const LiftedPoint& e,
                       const IndexOptions& options) {
  LerayCheck c;
  const double tol = options.tol_cluster;
  c.mu_tau = mu(tau.point(), e.point(), 0.0, tol);
  c.mu_tau_prime = mu(tau_prime.point(), e.point(), 0.0, tol);
  const int cyclic = souriau_m(tau, tau_prime, options) +
                     kashiwara_index(tripotent_to_lagrangian(e.point()), tripotent_to_lagrangian(tau_prime.point()),
                                     tripotent_to_lagrangian(tau.point()));
  c.lhs = cyclic + c.mu_tau_prime - c.mu_tau;
  c.rhs = souriau_m(e, tau_prime, options) - souriau_m(e, tau, options);
  c.holds = c.lhs == c.rhs;
  c.cocycle_holds = cyclic == c.rhs;
  return c;
}

}  // namespace jbmaslov

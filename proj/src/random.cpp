#include "jbmaslov/random.hpp"

#include <algorithm>
#include <cmath>

namespace jbmaslov {

namespace {

double gauss(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

TripotentPath join(std::vector<TripotentPath> legs) {
  std::vector<TripotentPath::Piece> pieces;
  std::vector<TripotentPath::Piece> flat;
  for (const auto& leg : legs) {
    for (const auto& piece : leg.pieces()) flat.push_back(piece);
  }
  double t = 0.0;
  const double width = 1.0 / static_cast<double>(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    TripotentPath::Piece p = flat[i];
    p.t0 = t;
    p.t1 = i + 1 == flat.size() ? 1.0 : t + width;
    t = p.t1;
    pieces.push_back(std::move(p));
  }
  return TripotentPath::from_pieces(std::move(pieces), 1e-8);
}

// Angles drawn from a small set, so that eigenvalues coincide with each
// other and with those of the base unit.
std::vector<double> degenerate_angles(int n, Rng& rng) {
  static constexpr double kSet[] = {0.0, 0.5 * kPi, kPi, -0.5 * kPi};
  std::vector<double> a(static_cast<std::size_t>(n));
  for (auto& v : a) v = kSet[uniform_int(rng, 0, 3)];
  return a;
}

}  // namespace

CMatrix random_symmetric(int n, Rng& rng, double scale) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return scale * 0.5 * (m + m.transpose());
}

CMatrix random_unitary(int n, Rng& rng) {
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  const Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

RMatrix random_orthogonal(int n, Rng& rng) {
  RMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
  }
  const Eigen::HouseholderQR<RMatrix> qr(g);
  RMatrix q = qr.householderQ() * RMatrix::Identity(n, n);
  const RMatrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

RMatrix random_rotation(int n, Rng& rng) {
  RMatrix q = random_orthogonal(n, rng);
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

SymUnitary random_sym_unitary(int n, Rng& rng) {
  const CMatrix u = random_unitary(n, rng);
  return SymUnitary::from_matrix(u * u.transpose(), 1e-8);
}

std::vector<double> random_angles(int n, Rng& rng, double lo, double hi) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (auto& v : a) v = uniform(rng, lo, hi);
  return a;
}

SymUnitary random_relative(const SymUnitary& e, const std::vector<double>& angles, Rng& rng) {
  const int n = e.dimension();
  if (static_cast<int>(angles.size()) != n) throw InvalidArgument("random_relative: need n angles");
  const CMatrix u = jordan_decompose(e, e).transport;
  const CMatrix o = random_orthogonal(n, rng).cast<Complex>();
  CVector d(n);
  for (int j = 0; j < n; ++j) d(j) = std::polar(1.0, angles[static_cast<std::size_t>(j)]);
  return SymUnitary::from_matrix(u * o * d.asDiagonal() * o.transpose() * u.transpose(), 1e-8);
}

namespace {

RMatrix stack_real_imag(const CMatrix& u) {
  RMatrix f(2 * u.rows(), u.cols());
  f.topRows(u.rows()) = u.real();
  f.bottomRows(u.rows()) = u.imag();
  return f;
}

}  // namespace

RMatrix random_lagrangian_frame(int n, Rng& rng) { return stack_real_imag(random_unitary(n, rng)); }

std::pair<RMatrix, RMatrix> random_lagrangian_pair(int n, int k, Rng& rng) {
  const CMatrix u = random_unitary(n, rng);
  CMatrix w = CMatrix::Identity(n, n);
  if (n > k) w.bottomRightCorner(n - k, n - k) = random_unitary(n - k, rng);
  return {stack_real_imag(u), stack_real_imag(u * w)};
}

SymUnitary random_nearby(const SymUnitary& x, double radius, Rng& rng, double fraction) {
  const int n = x.dimension();
  CMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h(i, j) = Complex(gauss(rng), gauss(rng));
  }
  h = 0.5 * (h + h.adjoint()).eval();
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  const double target = fraction * radius * uniform(rng, 0.1, 1.0);
  double delta = target / std::max(2.0 * eig.eigenvalues().cwiseAbs().maxCoeff(), 1e-12);
  for (int attempt = 0; attempt < 60; ++attempt) {
    CVector phases(n);
    for (int j = 0; j < n; ++j) phases(j) = std::polar(1.0, delta * eig.eigenvalues()(j));
    const CMatrix w = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    const CMatrix y = w * x.matrix() * w.transpose();
    if ((y - x.matrix()).norm() < fraction * radius) return SymUnitary::from_matrix(y, 1e-8);
    delta *= 0.5;
  }
  return x;
}

TripotentPath random_frame_diagonal_path(int n, Rng& rng, int knots, double span) {
  std::vector<double> ts{0.0};
  std::vector<double> interior = random_angles(knots, rng, 0.05, 0.95);
  std::sort(interior.begin(), interior.end());
  for (double t : interior) {
    if (t - ts.back() > 1e-3) ts.push_back(t);
  }
  ts.push_back(1.0);
  RMatrix angles(static_cast<Eigen::Index>(ts.size()), n);
  for (Eigen::Index r = 0; r < angles.rows(); ++r) {
    for (int j = 0; j < n; ++j) angles(r, j) = uniform(rng, -span, span);
  }
  return TripotentPath::frame_diagonal(random_orthogonal(n, rng), ts, angles, 1e-8);
}

TripotentPath random_loop(int n, Rng& rng, int max_turns) {
  const RMatrix frame = random_rotation(n, rng);
  const std::vector<double> start = random_angles(n, rng);
  RMatrix angles(3, n);
  for (int j = 0; j < n; ++j) {
    const int turns = uniform_int(rng, -max_turns, max_turns);
    angles(0, j) = start[static_cast<std::size_t>(j)];
    angles(1, j) = start[static_cast<std::size_t>(j)] + uniform(rng, -kPi, kPi);
    angles(2, j) = start[static_cast<std::size_t>(j)] + kTwoPi * turns;
  }
  const TripotentPath wind = TripotentPath::frame_diagonal(frame, {0.0, uniform(rng, 0.2, 0.8), 1.0}, angles, 1e-8);

  // Rotate from a nearby frame into `frame`, wind, rotate back.
  RMatrix generator(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) generator(i, j) = gauss(rng);
  }
  generator = 0.5 * (generator - generator.transpose()).eval();
  const SymUnitary x0 = wind.start();
  const RMatrix back = real_expm(-generator);
  const CMatrix bc = back.cast<Complex>();
  const SymUnitary y = SymUnitary::from_matrix(bc * x0.matrix() * bc.transpose(), 1e-8);
  const TripotentPath in = TripotentPath::frame_rotation(generator, y, 1e-8);
  return join({in, wind, reverse(in)});
}

FormulaEConfig random_formula_e_config(int n, Rng& rng) {
  const int style = uniform_int(rng, 0, 3);
  const RMatrix shared = random_orthogonal(n, rng);
  const RMatrix frame_s = style == 1 ? random_orthogonal(n, rng) : shared;
  const RMatrix frame_t = style >= 1 ? random_orthogonal(n, rng) : shared;
  const bool degenerate = uniform_int(rng, 0, 3) == 0;
  const std::vector<double> phi_s = degenerate ? degenerate_angles(n, rng) : random_angles(n, rng);
  const std::vector<double> phi_t = degenerate ? degenerate_angles(n, rng) : random_angles(n, rng);

  auto lifted = [&](const RMatrix& frame, const std::vector<double>& phi, int twist) {
    const SymUnitary x = SymUnitary::frame_diagonal(frame, phi, 1e-8);
    double lift = 0.0;
    for (double v : phi) lift += v;
    return LiftedPoint(x, lift + kTwoPi * twist);
  };
  LiftedPoint sigma = lifted(frame_s, phi_s, uniform_int(rng, -2, 2));
  LiftedPoint tau = lifted(frame_t, phi_t, uniform_int(rng, -2, 2));

  SymUnitary e = SymUnitary::identity(n);
  switch (uniform_int(rng, 0, 4)) {
    case 0: e = random_sym_unitary(n, rng); break;
    case 1: e = SymUnitary::frame_diagonal(shared, degenerate_angles(n, rng), 1e-8); break;
    case 2: e = sigma.point(); break;
    case 3: e = tau.point(); break;
    default: break;
  }
  return FormulaEConfig{std::move(sigma), std::move(tau), std::move(e)};
}

LiftedPoint random_orbit_partner(const LiftedPoint& tau, const SymUnitary& e, Rng& rng) {
  const int n = e.dimension();
  const CMatrix u = jordan_decompose(e, e).transport;
  const CMatrix g = u * random_rotation(n, rng).cast<Complex>() * u.adjoint();
  const SymUnitary moved = SymUnitary::from_matrix(g * tau.point().matrix() * g.transpose(), 1e-8);
  return LiftedPoint(moved, tau.lift(), tau.base());
}

}  // namespace jbmaslov

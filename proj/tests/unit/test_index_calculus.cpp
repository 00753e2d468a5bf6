#include "doctest.h"

#include <Eigen/Eigenvalues>

#include "jbmaslov/random.hpp"

using namespace jbmaslov;

namespace {

SymUnitary phase(double a) {
  const double v[] = {a};
  return SymUnitary::diagonal(v);
}

RMatrix line(double angle) {
  RMatrix f(2, 1);
  f << std::cos(angle), std::sin(angle);
  return f;
}

// Signature of q(t1 u1, t2 u2, t3 u3) = sum over cyclic pairs of t_a t_b omega(u_a, u_b)
// for unit vectors u_a = (cos a, sin a) in R^2, where omega(u, v) = sin(angle v - angle u).
int line_triple_signature(double a1, double a2, double a3) {
  const double a[] = {a1, a2, a3};
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    g(i, j) += 0.5 * std::sin(a[j] - a[i]);
    g(j, i) += 0.5 * std::sin(a[j] - a[i]);
  }
  const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(g).eigenvalues();
  int sig = 0;
  for (int i = 0; i < 3; ++i) sig += ev(i) > 1e-12 ? 1 : (ev(i) < -1e-12 ? -1 : 0);
  return sig;
}

}  // namespace

TEST_CASE("Jordan decomposition") {
  SUBCASE("x = e") {
    Rng rng(151);
    const SymUnitary e = random_sym_unitary(3, rng);
    const JordanDecomposition d = jordan_decompose(e, e);
    for (double a : d.angles) CHECK(a == doctest::Approx(0.0));
    CHECK(d.groups.size() == 1);
    CHECK((d.reconstruct() - e.matrix()).norm() < 1e-10);
  }
  SUBCASE("diagonal input") {
    const double a[] = {0.7, -2.0};
    const JordanDecomposition d = jordan_decompose(SymUnitary::diagonal(a), SymUnitary::identity(2));
    std::vector<double> got = d.angles;
    std::sort(got.begin(), got.end());
    CHECK(got[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(0.7).epsilon(1e-12));
    // Each frame column is a signed coordinate vector.
    for (int j = 0; j < 2; ++j) CHECK(d.frame.col(j).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  }
  SUBCASE("random inputs reconstruct and give a complete orthogonal system") {
    Rng rng(157);
    for (int t = 0; t < 30; ++t) {
      const int n = 1 + t % 6;
      const SymUnitary e = t % 3 == 0 ? SymUnitary::identity(n) : random_sym_unitary(n, rng);
      std::vector<double> angles = random_angles(n, rng);
      if (n > 2) angles[1] = angles[0];  // a repeated eigenvalue
      const SymUnitary x = random_relative(e, angles, rng);
      const JordanDecomposition d = jordan_decompose(x, e);
      CHECK((d.reconstruct() - x.matrix()).norm() < 1e-8);
      CHECK((d.frame.transpose() * d.frame - RMatrix::Identity(n, n)).norm() < 1e-10);
      const std::vector<CMatrix> c = d.idempotents();
      CMatrix sum = CMatrix::Zero(n, n);
      for (std::size_t j = 0; j < c.size(); ++j) {
        sum += c[j];
        for (std::size_t k = 0; k < c.size(); ++k) {
          const CMatrix expected = j == k ? c[j] : CMatrix::Zero(n, n);
          CHECK((triple_product(c[j], e.matrix(), c[k]) - expected).norm() < 1e-9);
        }
      }
      CHECK((sum - e.matrix()).norm() < 1e-9);
    }
  }
}

TEST_CASE("lifted points") {
  const double phi = 1.3;
  CHECK_NOTHROW(LiftedPoint(phase(phi), phi));
  CHECK_NOTHROW(LiftedPoint(phase(phi), phi + kTwoPi));
  CHECK_THROWS_AS(LiftedPoint(phase(phi), phi + 0.5), InvalidArgument);
  CHECK(LiftedPoint::principal(phase(phi + kTwoPi)).lift() == doctest::Approx(phi));
  CHECK(LiftedPoint(phase(phi), phi).deck(3).lift() == doctest::Approx(phi + 6.0 * kPi));

  // Re-anchoring to another base changes the lift by arg det of the base change.
  const LiftedPoint p(phase(phi), phi);
  const LiftedPoint q = p.rebased(phase(0.4));
  CHECK(q.lift() == doctest::Approx(phi - 0.4));
  CHECK(q.rebased(SymUnitary::identity(1)).lift() == doctest::Approx(phi));
}

TEST_CASE("lift_path") {
  const SymUnitary e = SymUnitary::identity(1);
  RMatrix a(2, 1);
  a << 0.0, kTwoPi;
  const TripotentPath circle = TripotentPath::frame_diagonal(RMatrix::Identity(1, 1), {0.0, 1.0}, a);
  CHECK(lift_path(circle, e, 0.0) == doctest::Approx(kTwoPi));
  const TripotentPath still = TripotentPath::sampled({0.0, 1.0}, {e, e});
  CHECK(lift_path(still, e, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(lift_path(circle, e, 1.0), InvalidArgument);

  Rng rng(163);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 5;
    const RMatrix o = random_orthogonal(n, rng);
    RMatrix ang(3, n);
    for (int r = 0; r < 3; ++r) {
      const auto row = random_angles(n, rng, -8.0, 8.0);
      for (int j = 0; j < n; ++j) ang(r, j) = row[static_cast<std::size_t>(j)];
    }
    const TripotentPath p = TripotentPath::frame_diagonal(o, {0.0, 0.5, 1.0}, ang, 1e-8);
    const double lift0 = ang.row(0).sum();
    CHECK(lift_path(p, SymUnitary::identity(n), lift0) == doctest::Approx(ang.row(2).sum()).epsilon(1e-9));
  }
}

TEST_CASE("two-point Maslov index") {
  const SymUnitary e = SymUnitary::identity(1);
  const LiftedPoint sigma(e, 0.0);
  CHECK(mas_two_points(sigma, sigma, e) == 0);
  for (double phi : {0.3, 1.0, 2.5}) CHECK(mas_two_points(sigma, LiftedPoint(phase(phi), phi), e) == 0);
  for (double phi : {0.3, 1.0, 2.5}) CHECK(mas_two_points(sigma, LiftedPoint(phase(-phi), -phi), e) == -1);
  for (int k = -3; k <= 3; ++k) {
    CHECK(mas_two_points(sigma, LiftedPoint(e, kTwoPi * k), e) == k);
    CHECK(mas_two_points(sigma, LiftedPoint(e, kTwoPi * k), e, ConnectingRoute::rotate_frame) == k);
  }

  // Path independence: both connecting routes agree.
  Rng rng(167);
  for (int t = 0; t < 25; ++t) {
    const int n = 1 + t % 4;
    const FormulaEConfig c = random_formula_e_config(n, rng);
    CHECK(mas_two_points(c.sigma, c.tau, c.e) == mas_two_points(c.sigma, c.tau, c.e, ConnectingRoute::rotate_frame));
    // The connecting path ends at tau with tau's lift.
    const TripotentPath p = connecting_path(c.sigma, c.tau);
    CHECK((p.end().matrix() - c.tau.point().matrix()).norm() < 1e-8);
    CHECK(lift_path(p, SymUnitary::identity(n), c.sigma.lift()) == doctest::Approx(c.tau.lift()).epsilon(1e-9));
  }
}

TEST_CASE("Kashiwara index") {
  Rng rng(173);
  SUBCASE("repeated arguments and antisymmetry") {
    for (int t = 0; t < 20; ++t) {
      const int n = 1 + t % 4;
      const auto l1 = LagrangianFrame::from_matrix(random_lagrangian_frame(n, rng), 1e-8);
      const auto l2 = LagrangianFrame::from_matrix(random_lagrangian_frame(n, rng), 1e-8);
      const auto l3 = LagrangianFrame::from_matrix(random_lagrangian_frame(n, rng), 1e-8);
      CHECK(kashiwara_index(l1, l1, l1) == 0);
      CHECK(kashiwara_index(l1, l2, l2) == 0);
      CHECK(kashiwara_index(l1, l1, l2) == 0);
      const int i123 = kashiwara_index(l1, l2, l3);
      CHECK(kashiwara_index(l2, l1, l3) == -i123);
      CHECK(kashiwara_index(l1, l3, l2) == -i123);
      CHECK(kashiwara_index(l3, l2, l1) == -i123);
      CHECK(kashiwara_index(l2, l3, l1) == i123);
      CHECK(std::abs(i123) <= 3 * n);
      CHECK((i123 + n) % 2 == 0);  // transverse triples have i = n mod 2
    }
  }
  SUBCASE("lines in the plane") {
    const auto lf = [](double a) { return LagrangianFrame::from_matrix(line(a)); };
    const int expected = line_triple_signature(0.0, kPi / 4, kPi / 2);
    CHECK(std::abs(expected) == 1);
    CHECK(kashiwara_index(lf(0.0), lf(kPi / 4), lf(kPi / 2)) == expected);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        for (int k = 0; k < 6; ++k) {
          const double a = i * kPi / 6, b = j * kPi / 6 + 0.01 * (j == i), c = k * kPi / 6 + 0.02 * (k == j || k == i);
          CHECK(kashiwara_index(lf(a), lf(b), lf(c)) == line_triple_signature(a, b, c));
        }
      }
    }
  }
  SUBCASE("cocycle") {
    for (int t = 0; t < 20; ++t) {
      const int n = 1 + t % 4;
      std::vector<LagrangianFrame> l;
      for (int j = 0; j < 4; ++j) l.push_back(LagrangianFrame::from_matrix(random_lagrangian_frame(n, rng), 1e-8));
      CHECK(kashiwara_index(l[0], l[1], l[2]) - kashiwara_index(l[0], l[1], l[3]) + kashiwara_index(l[0], l[2], l[3]) -
                kashiwara_index(l[1], l[2], l[3]) ==
            0);
    }
  }
}

TEST_CASE("Souriau-type index") {
  const SymUnitary e = SymUnitary::identity(1);
  const LiftedPoint sigma(e, 0.0);
  CHECK(souriau_m(sigma, sigma) == 0);
  for (double phi : {0.2, 1.5, 3.0}) CHECK(souriau_m(sigma, LiftedPoint(phase(phi), phi)) == 1);
  for (int k = -2; k <= 2; ++k) CHECK(souriau_m(sigma, LiftedPoint(e, kTwoPi * k)) == 2 * k);

  Rng rng(179);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 3;
    const FormulaEConfig c = random_formula_e_config(n, rng);
    CHECK(souriau_m(c.sigma, c.sigma) == 0);
    CHECK(souriau_m(c.sigma, c.tau.deck(1)) - souriau_m(c.sigma, c.tau) == 2);
  }
}

TEST_CASE("two-point index identity") {
  const SymUnitary one = SymUnitary::identity(1);
  SUBCASE("worked n = 1 cases") {
    const FormulaECheck a = check_formula_E(LiftedPoint(one, 0.0), LiftedPoint(phase(1.0), 1.0), one);
    CHECK(a.lhs == 0);
    CHECK(a.rhs_numerator == 0);
    CHECK(a.equal);
    const LiftedPoint s(phase(0.8), 0.8);
    const FormulaECheck b = check_formula_E(s, s, one);
    CHECK(b.lhs == 0);
    CHECK(b.rhs_numerator == 0);
    CHECK(b.iota == 0);
    CHECK(b.equal);
  }
  SUBCASE("deck twists") {
    for (int k = -2; k <= 2; ++k) {
      const FormulaECheck c = check_formula_E(LiftedPoint(phase(1.0), 1.0), LiftedPoint(phase(2.0), 2.0 + kTwoPi * k), one);
      CHECK(c.lhs == k);
      CHECK(c.rhs_numerator == 2 * k);
      CHECK(c.equal);
    }
  }
  SUBCASE("random sweep") {
    Rng rng(181);
    for (int t = 0; t < 40; ++t) {
      const int n = 1 + t % 4;
      const FormulaEConfig c = random_formula_e_config(n, rng);
      const FormulaECheck r = check_formula_E(c.sigma, c.tau, c.e);
      CHECK(r.rhs_integral);
      CHECK(r.equal);
    }
  }
}

TEST_CASE("Leray relation") {
  const LiftedPoint t(phase(0.9), 0.9);
  CHECK(check_leray(t, t, LiftedPoint(phase(2.0), 2.0)).holds);
  CHECK(check_leray(t, t, LiftedPoint(phase(2.0), 2.0)).lhs == 0);

  // Grid of distinct angle triples on the circle, with deck shifts.
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      for (int k = 0; k < 8; ++k) {
        if (i == j || j == k || i == k) continue;
        const double a = -kPi + kTwoPi * (i + 0.5) / 8;
        const double b = -kPi + kTwoPi * (j + 0.5) / 8;
        const double c = -kPi + kTwoPi * (k + 0.5) / 8;
        const LiftedPoint ta(phase(a), a + kTwoPi * ((i + k) % 3 - 1));
        const LiftedPoint tb(phase(b), b);
        const LiftedPoint te(phase(c), c);
        CHECK(check_leray(ta, tb, te).holds);
      }
    }
  }

  Rng rng(191);
  for (int s = 0; s < 40; ++s) {
    const int n = 2 + s % 2;
    const FormulaEConfig a = random_formula_e_config(n, rng);
    const FormulaEConfig b = random_formula_e_config(n, rng);
    const LiftedPoint e = LiftedPoint::principal(b.e);
    const LerayCheck any = check_leray(a.sigma, a.tau, e);
    CHECK(any.cocycle_holds);
    CHECK(any.holds == (any.mu_tau == any.mu_tau_prime));
    CHECK(any.lhs - any.rhs == any.mu_tau_prime - any.mu_tau);
    const LerayCheck orbit = check_leray(a.sigma, random_orbit_partner(a.sigma, e.point(), rng), e);
    CHECK(orbit.mu_tau == orbit.mu_tau_prime);
    CHECK(orbit.holds);
  }

  // tau meets e in a line, tau' is transverse: the mu terms do not cancel.
  const double a1[] = {0.0, 1.0};
  const double a2[] = {0.5, 1.0};
  const LerayCheck off = check_leray(LiftedPoint::principal(SymUnitary::diagonal(a1)),
                                     LiftedPoint::principal(SymUnitary::diagonal(a2)),
                                     LiftedPoint(SymUnitary::identity(2), 0.0));
  CHECK(off.cocycle_holds);
  CHECK_FALSE(off.holds);
}

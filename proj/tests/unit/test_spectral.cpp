#include "doctest.h"

#include "jbmaslov/random.hpp"

using namespace jbmaslov;

namespace {

std::vector<double> cluster_angles_of(const RelativeSpectrum& s) {
  std::vector<double> a;
  for (const auto& c : s.clusters()) a.push_back(c.angle);
  return a;
}

}  // namespace

TEST_CASE("spectrum of a unit relative to itself") {
  Rng rng(61);
  for (int n = 1; n <= 5; ++n) {
    const SymUnitary e = random_sym_unitary(n, rng);
    const RelativeSpectrum s = relative_spectrum(e, e);
    REQUIRE(s.clusters().size() == 1);
    CHECK(s.clusters()[0].angle == 0.0);
    CHECK(s.clusters()[0].multiplicity == n);
    CHECK(mu(e, e, 0.0) == n);
  }
}

TEST_CASE("diagonal spectra and multiplicities") {
  const double a[] = {0.5, -1.0, 0.5, kPi};
  const RelativeSpectrum s = relative_spectrum(SymUnitary::diagonal(a), SymUnitary::identity(4));
  REQUIRE(s.clusters().size() == 3);
  CHECK(s.multiplicity_at(0.5) == 2);
  CHECK(s.multiplicity_at(-1.0) == 1);
  CHECK(s.multiplicity_at(kPi) == 1);
  CHECK(s.multiplicity_at(-kPi + 1e-12) == 1);  // same point of the circle
  CHECK(s.multiplicity_at(0.0) == 0);
  CHECK(s.clusters().back().angle == kPi);  // pi stays on the positive side
}

TEST_CASE("constructed spectra are recovered") {
  Rng rng(67);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + k % 6;
    const SymUnitary e = random_sym_unitary(n, rng);
    std::vector<double> angles = random_angles(n, rng);
    const SymUnitary x = random_relative(e, angles, rng);
    const RelativeEigen rel = relative_eigen(x, e);
    for (Eigen::Index j = 0; j < rel.eigen.values.size(); ++j) {
      CHECK(std::abs(std::abs(rel.eigen.values(j)) - 1.0) < 1e-10);
    }
    std::vector<double> got = rel.angles;
    std::sort(got.begin(), got.end());
    std::sort(angles.begin(), angles.end());
    for (std::size_t j = 0; j < got.size(); ++j) CHECK(std::abs(arc_difference(got[j], angles[j])) < 1e-9);
  }
}

TEST_CASE("mu equals n minus the rank of x - e") {
  Rng rng(71);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 6;
    const int k = t % (n + 1);
    const SymUnitary e = random_sym_unitary(n, rng);
    std::vector<double> angles = random_angles(n, rng);
    for (int j = 0; j < k; ++j) angles[static_cast<std::size_t>(j)] = 0.0;
    const SymUnitary x = random_relative(e, angles, rng);
    CHECK(mu(x, e, 0.0) == k);
    CHECK(n - numerical_rank(CMatrix(x.matrix() - e.matrix())) == k);
    CHECK(pair_report(x, e).transverse == (k == 0));
    // mu at theta counts dim ker(e^{i theta} e - x).
    if (n > k) {
      const double theta = angles[static_cast<std::size_t>(k)];
      const CMatrix shifted = std::polar(1.0, theta) * e.matrix() - x.matrix();
      CHECK(mu(x, e, theta) == n - numerical_rank(shifted));
    }
  }
}

TEST_CASE("spectrum of (e, x) is the conjugate of spectrum of (x, e)") {
  Rng rng(73);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + k % 6;
    const SymUnitary x = random_sym_unitary(n, rng);
    const SymUnitary e = random_sym_unitary(n, rng);
    CHECK(conjugate_spectrum_check(x, e));
    CHECK(relative_spectrum(e, x).approx_equal(relative_spectrum(x, e).conjugated()));
  }
}

TEST_CASE("spectral idempotents restrict the spectrum to the chosen arc") {
  Rng rng(79);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 4;
    const SymUnitary e = random_sym_unitary(n, rng);
    const std::vector<double> angles = random_angles(n, rng);
    const SymUnitary x = random_relative(e, angles, rng);
    const std::vector<double> all = cluster_angles_of(relative_spectrum(x, e));
    const std::vector<double> arc(all.begin(), all.begin() + 1 + k % (static_cast<int>(all.size()) - 1));
    const SpectralIdempotent p = spectral_idempotent(x, e, arc);
    // p is an idempotent of the algebra with unit e: p o p = p, and p is symmetric.
    CHECK((jordan_product(p.p, e.matrix(), p.p) - p.p).norm() < 1e-10);
    CHECK((p.p - p.p.transpose()).norm() < 1e-10);
    const std::vector<double> got = cluster_angles_of(restricted_spectrum(p, x, e));
    REQUIRE(got.size() == arc.size());
    for (std::size_t j = 0; j < got.size(); ++j) CHECK(std::abs(arc_difference(got[j], arc[j])) < 1e-9);
  }
  const SymUnitary e = SymUnitary::identity(2);
  const double a[] = {0.3, 1.2};
  const double bogus[] = {0.7};
  CHECK_THROWS_AS(spectral_idempotent(SymUnitary::diagonal(a), e, bogus), InvalidArgument);
}

TEST_CASE("perturbation budget") {
  // Known angles give the budget as a closed form: the smallest chordal
  // distance from the angles to +-eps.
  const double a[] = {0.0, 2.0, -2.5};
  const SymUnitary x = SymUnitary::diagonal(a);
  const SymUnitary e = SymUnitary::identity(3);
  const double eps = 1.0;
  double expected = 1e9;
  for (double t : a) {
    expected = std::min({expected, 2.0 * std::abs(std::sin(0.5 * (t - eps))), 2.0 * std::abs(std::sin(0.5 * (t + eps)))});
  }
  CHECK(perturbation_budget(x, e, eps) == doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(perturbation_budget(x, e, 0.0), InvalidArgument);
  CHECK_THROWS_AS(perturbation_budget(x, e, kPi), InvalidArgument);
  CHECK_THROWS_AS(perturbation_budget(x, e, 2.2), InvalidArgument);  // 2.0 lies inside the arc

  Rng rng(83);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + k % 6;
    const SymUnitary base = random_sym_unitary(n, rng);
    std::vector<double> angles(static_cast<std::size_t>(n));
    int zeros = 0;
    for (std::size_t j = 0; j < angles.size(); ++j) {
      angles[j] = j % 2 == 0 ? 0.0 : (j % 4 == 1 ? 2.5 : -2.0);
      zeros += angles[j] == 0.0;
    }
    const SymUnitary y0 = random_relative(base, angles, rng);
    const double rho = perturbation_budget(y0, base, 1.5);
    const SymUnitary y = random_nearby(y0, rho, rng);
    int inside = 0;
    const RelativeSpectrum moved = relative_spectrum(y, base);
    for (const auto& c : moved.clusters()) {
      if (std::abs(c.angle) <= 1.5) inside += c.multiplicity;
    }
    CHECK(inside == zeros);
  }
}

TEST_CASE("Bergman spectrum lies in the product set of the relative spectrum") {
  Rng rng(89);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 4;
    const SymUnitary x = random_sym_unitary(n, rng);
    const SymUnitary e = random_sym_unitary(n, rng);
    const RelativeEigen rel = relative_eigen(x, e);
    const CVector ev = Eigen::ComplexEigenSolver<CMatrix>(bergman(x.matrix(), e.matrix()).dense()).eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      double best = 1e9;
      for (Eigen::Index a = 0; a < rel.eigen.values.size(); ++a) {
        for (Eigen::Index b = 0; b < rel.eigen.values.size(); ++b) {
          const Complex prod = (1.0 - rel.eigen.values(a)) * (1.0 - rel.eigen.values(b));
          best = std::min(best, std::abs(ev(i) - prod));
        }
      }
      CHECK(best < 1e-7);
    }
  }
}

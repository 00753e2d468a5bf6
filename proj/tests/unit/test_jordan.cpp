#include "doctest.h"

#include "jbmaslov/random.hpp"

using namespace jbmaslov;

namespace {

const Complex I(0.0, 1.0);

CMatrix scalar(Complex z) { return CMatrix::Constant(1, 1, z); }

// B(x, y) = Id - 2 L(x, y) + Q(x) Q(y), with L(x,y)z = {x,y,z} and
// Q(x)z = {x,z,x}, evaluated on z directly from the triple product.
CMatrix bergman_from_triple(const CMatrix& x, const CMatrix& y, const CMatrix& z) {
  const CMatrix qy = triple_product(y, z, y);
  return z - 2.0 * triple_product(x, y, z) + triple_product(x, qy, x);
}

}  // namespace

TEST_CASE("triple product on small cases") {
  CHECK((triple_product(scalar(1.0), scalar(1.0), scalar(1.0)) - scalar(1.0)).norm() < 1e-15);
  CHECK((triple_product(scalar(I), scalar(1.0), scalar(I)) - scalar(-1.0)).norm() < 1e-15);
  const double a[] = {0.4, -2.1};
  const CMatrix d = SymUnitary::diagonal(a).matrix();
  CHECK((triple_product(d, d, d) - d).norm() < 1e-14);
}

TEST_CASE("triple product of symmetric inputs is symmetric") {
  Rng rng(3);
  for (int n = 1; n <= 5; ++n) {
    const CMatrix t = triple_product(random_symmetric(n, rng), random_symmetric(n, rng), random_symmetric(n, rng));
    CHECK((t - t.transpose()).norm() < 1e-12);
  }
}

TEST_CASE("SymUnitary validates its invariants") {
  CHECK_THROWS_AS(SymUnitary::from_matrix(CMatrix::Constant(2, 2, 1.0)), InvalidArgument);
  CMatrix asym = CMatrix::Identity(2, 2);
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(SymUnitary::from_matrix(asym), InvalidArgument);
  CMatrix nan = CMatrix::Identity(1, 1);
  nan(0, 0) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(SymUnitary::from_matrix(nan), InvalidArgument);
  CHECK_THROWS_AS(SymUnitary::from_matrix(CMatrix::Identity(2, 3)), InvalidArgument);

  // Rounding-level asymmetry is absorbed by re-symmetrization.
  CMatrix near = CMatrix::Identity(2, 2);
  near(0, 1) = 1e-12;
  const SymUnitary s = SymUnitary::from_matrix(near);
  CHECK(SymUnitary::symmetry_residual(s.matrix()) == doctest::Approx(0.0));
}

TEST_CASE("elements of Sigma are exactly the tripotent units") {
  Rng rng(11);
  for (int n = 1; n <= 6; ++n) {
    const SymUnitary x = random_sym_unitary(n, rng);
    CHECK((triple_product(x.matrix(), x.matrix(), x.matrix()) - x.matrix()).norm() < 1e-12);
    CHECK(SymUnitary::unitarity_residual(x.matrix()) < 1e-12);
  }
  // A symmetric non-unitary matrix is not a tripotent.
  const CMatrix half = 0.5 * CMatrix::Identity(2, 2);
  CHECK((triple_product(half, half, half) - half).norm() > 0.1);
}

TEST_CASE("Bergman operator") {
  SUBCASE("B(e, e) vanishes") {
    Rng rng(5);
    const SymUnitary e = random_sym_unitary(3, rng);
    CHECK(bergman(e.matrix(), e.matrix()).dense().norm() < 1e-12);
  }
  SUBCASE("B(-1, 1) is multiplication by 4") {
    const BergmanOperator b = bergman(scalar(-1.0), scalar(1.0));
    CHECK((b.apply(scalar(0.7)) - scalar(2.8)).norm() < 1e-15);
    CHECK((b.dense() - scalar(4.0)).norm() < 1e-15);
  }
  SUBCASE("B(i, 1) is invertible") {
    const CMatrix d = bergman(scalar(I), scalar(1.0)).dense();
    CHECK(std::abs(d(0, 0)) > 0.5);
  }
  SUBCASE("factorized form agrees with Id - 2L + QQ on random inputs") {
    Rng rng(17);
    for (int n = 1; n <= 4; ++n) {
      const CMatrix x = random_symmetric(n, rng);
      const CMatrix y = random_symmetric(n, rng);
      const BergmanOperator b = bergman(x, y);
      const CMatrix dense = b.dense();
      const std::vector<CMatrix> basis = sym_basis(n);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const CMatrix img = bergman_from_triple(x, y, basis[j]);
        CHECK((b.apply(basis[j]) - img).norm() < 1e-10 * (1.0 + img.norm()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
          const Complex coeff = (basis[i].conjugate().cwiseProduct(img)).sum();
          CHECK(std::abs(dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - coeff) <
                1e-10 * (1.0 + img.norm()));
        }
      }
    }
  }
  SUBCASE("dense matrix is invertible exactly when 1 is outside the relative spectrum") {
    Rng rng(23);
    for (int k = 0; k < 20; ++k) {
      const int n = 1 + k % 4;
      const SymUnitary e = random_sym_unitary(n, rng);
      std::vector<double> angles = random_angles(n, rng, 0.3, kTwoPi - 0.3);
      if (k % 2 == 0) angles[0] = 0.0;
      const SymUnitary x = random_relative(e, angles, rng);
      const RVector s = singular_values(bergman(x.matrix(), e.matrix()).dense());
      const bool invertible = s.minCoeff() > 1e-8;
      CHECK(invertible == (mu(x, e, 0.0) == 0));
    }
  }
}

TEST_CASE("sym_basis is orthonormal for the Frobenius pairing") {
  for (int n = 1; n <= 4; ++n) {
    const auto basis = sym_basis(n);
    REQUIRE(static_cast<int>(basis.size()) == n * (n + 1) / 2);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Complex g = (basis[i].conjugate().cwiseProduct(basis[j])).sum();
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-15);
      }
    }
  }
}

TEST_CASE("Jordan inverse") {
  Rng rng(29);
  const SymUnitary e = random_sym_unitary(3, rng);
  CHECK((jordan_inverse(e, e) - e.matrix()).norm() < 1e-12);

  const double phi[] = {0.9};
  const double minus_phi[] = {-0.9};
  CHECK((jordan_inverse(SymUnitary::diagonal(phi), SymUnitary::identity(1)) - SymUnitary::diagonal(minus_phi).matrix())
            .norm() < 1e-15);

  // With e = I the Jordan inverse is the matrix inverse.
  for (int n = 1; n <= 6; ++n) {
    const std::vector<double> a = random_angles(n, rng);
    const SymUnitary x = SymUnitary::frame_diagonal(random_orthogonal(n, rng), a, 1e-8);
    CHECK((jordan_inverse(x, SymUnitary::identity(n)) - x.matrix().inverse()).norm() < 1e-12);
  }

  // x o x^{-1} = e in the algebra with unit e.
  for (int n = 1; n <= 5; ++n) {
    const SymUnitary u = random_sym_unitary(n, rng);
    const SymUnitary x = random_sym_unitary(n, rng);
    const CMatrix prod = jordan_product(x.matrix(), u.matrix(), jordan_inverse(x, u));
    CHECK((prod - u.matrix()).norm() < 1e-12);
  }
}

TEST_CASE("axiom residuals") {
  const CMatrix one = scalar(1.0);
  const AxiomResiduals trivial = validate_axioms(one, one, one, one, one);
  CHECK(trivial.triple_identity == doctest::Approx(0.0));
  CHECK(trivial.norm_axiom == doctest::Approx(0.0));

  Rng rng(31);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + k % 6;
    auto unit = [&] {
      const CMatrix m = random_symmetric(n, rng);
      return CMatrix(m / operator_norm(m));
    };
    const AxiomResiduals r = validate_axioms(unit(), unit(), unit(), unit(), unit());
    CHECK(r.triple_identity <= 1e-10);
    CHECK(r.norm_axiom <= 1e-8);
  }

  const SymUnitary x = random_sym_unitary(4, rng);
  const CMatrix cube = triple_product(x.matrix(), x.matrix(), x.matrix());
  CHECK(operator_norm(cube) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm(x.matrix()) == doctest::Approx(1.0).epsilon(1e-12));
}

#include "doctest.h"

#include "jbmaslov/random.hpp"

using namespace jbmaslov;

namespace {

const Complex I(0.0, 1.0);

RMatrix column(double a, double b) {
  RMatrix f(2, 1);
  f << a, b;
  return f;
}

double subspace_gap(const RMatrix& a, const RMatrix& b) { return principal_angles(a, b).cwiseAbs().maxCoeff(); }

// Independent membership test: every real column of the frame must lie in
// the complex span of [x - iI; I - ix].
bool frame_in_cayley_span(const RMatrix& frame, const SymUnitary& x) {
  const auto n = x.dimension();
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix m(2 * n, 2 * n);
  m.leftCols(n).topRows(n) = x.matrix() - I * id;
  m.leftCols(n).bottomRows(n) = id - I * x.matrix();
  m.rightCols(n) = frame.cast<Complex>();
  return numerical_rank(m, 1e-9) == n;
}

}  // namespace

TEST_CASE("n = 1 coordinate lines") {
  const SymUnitary a = lagrangian_to_tripotent(LagrangianFrame::from_matrix(column(1, 0)));
  const SymUnitary b = lagrangian_to_tripotent(LagrangianFrame::from_matrix(column(0, 1)));
  CHECK(std::abs(a.matrix()(0, 0) - (-I)) < 1e-15);
  CHECK(std::abs(b.matrix()(0, 0) - I) < 1e-15);

  const CMatrix minus_i = CMatrix::Constant(1, 1, -I);
  const CMatrix plus_i = CMatrix::Constant(1, 1, I);
  CHECK(subspace_gap(tripotent_to_lagrangian(SymUnitary::from_matrix(minus_i)).frame(), column(1, 0)) < 1e-12);
  CHECK(subspace_gap(tripotent_to_lagrangian(SymUnitary::from_matrix(plus_i)).frame(), column(0, 1)) < 1e-12);
}

TEST_CASE("frame of a Takagi form") {
  // x = O diag(e^{i phi}) O^T spans [O cos(beta); O sin(beta)] with beta = phi/2 + pi/4.
  Rng rng(41);
  for (int n = 1; n <= 6; ++n) {
    const RMatrix o = random_orthogonal(n, rng);
    const std::vector<double> phi = random_angles(n, rng);
    RMatrix expected(2 * n, n);
    for (int j = 0; j < n; ++j) {
      const double beta = 0.5 * phi[static_cast<std::size_t>(j)] + 0.25 * kPi;
      expected.col(j).head(n) = o.col(j) * std::cos(beta);
      expected.col(j).tail(n) = o.col(j) * std::sin(beta);
    }
    const SymUnitary x = SymUnitary::frame_diagonal(o, phi, 1e-8);
    CHECK(subspace_gap(tripotent_to_lagrangian(x).frame(), expected) < 1e-9);
    CHECK((lagrangian_to_tripotent(LagrangianFrame::from_matrix(expected, 1e-8)).matrix() - x.matrix()).norm() < 1e-10);
  }
}

TEST_CASE("frames satisfy the defining relations and round-trip") {
  Rng rng(43);
  for (int k = 0; k < 40; ++k) {
    const int n = 1 + k % 6;
    const RMatrix f = random_lagrangian_frame(n, rng);
    const LagrangianFrame l = LagrangianFrame::from_matrix(f, 1e-8);
    const SymUnitary x = lagrangian_to_tripotent(l);
    // Graph solve: x = (A + iB)(iA + B)^{-1}.
    const CMatrix a = f.topRows(n).cast<Complex>();
    const CMatrix b = f.bottomRows(n).cast<Complex>();
    const CMatrix graph = (a + I * b) * (I * a + b).inverse();
    CHECK((graph - x.matrix()).norm() < 1e-10);
    CHECK(frame_in_cayley_span(f, x));

    const LagrangianFrame back = tripotent_to_lagrangian(x);
    CHECK(subspace_gap(back.frame(), l.frame()) < 1e-9);
    CHECK((back.frame().transpose() * symplectic_matrix(n) * back.frame()).norm() < 1e-12);

    const SymUnitary y = random_sym_unitary(n, rng);
    CHECK((lagrangian_to_tripotent(tripotent_to_lagrangian(y)).matrix() - y.matrix()).norm() < 1e-10);
  }
}

TEST_CASE("frame validation") {
  RMatrix not_isotropic(4, 2);
  not_isotropic << 1, 0, 0, 0, 0, 1, 0, 0;  // spans eta_1 and xi_1
  CHECK_THROWS_AS(LagrangianFrame::from_matrix(not_isotropic), InvalidArgument);
  CHECK_THROWS_AS(LagrangianFrame::from_matrix(column(2, 0)), InvalidArgument);
  CHECK_THROWS_AS(LagrangianFrame::from_matrix(RMatrix::Identity(3, 1)), InvalidArgument);
  // A non-orthonormal basis is accepted through from_basis.
  const LagrangianFrame l = LagrangianFrame::from_basis(column(3, 4));
  CHECK(subspace_gap(l.frame(), column(0.6, 0.8)) < 1e-14);
}

TEST_CASE("intersection dimension from units and from frames") {
  Rng rng(47);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 6;
    const int k = t % (n + 1);
    const auto [fa, fb] = random_lagrangian_pair(n, k, rng);
    const LagrangianFrame la = LagrangianFrame::from_matrix(fa, 1e-8);
    const LagrangianFrame lb = LagrangianFrame::from_matrix(fb, 1e-8);
    const PairReport r = pair_report(lagrangian_to_tripotent(la), lagrangian_to_tripotent(lb));
    CHECK(r.dim_intersection == k);
    CHECK(r.transverse == (k == 0));
    CHECK(r.fredholm);
    CHECK(intersection_dimension(la, lb) == k);
  }
  const SymUnitary x = random_sym_unitary(3, rng);
  CHECK(pair_report(x, x).dim_intersection == 3);
}

TEST_CASE("unitary action") {
  Rng rng(53);
  const CMatrix u = random_unitary(3, rng);
  const SymUnitary x = random_sym_unitary(3, rng);
  const SymUnitary y = unitary_act(u, x);
  CHECK(SymUnitary::unitarity_residual(y.matrix()) < 1e-12);
  // Real orthogonal u preserves intersections with the real structure.
  const RMatrix o = random_orthogonal(3, rng);
  const SymUnitary e = random_sym_unitary(3, rng);
  CHECK(pair_report(unitary_act(o.cast<Complex>(), x), unitary_act(o.cast<Complex>(), e)).dim_intersection ==
        pair_report(x, e).dim_intersection);
  CHECK_THROWS_AS(unitary_act(CMatrix(2.0 * u), x), InvalidArgument);
}

#include "jbmaslov/verify.hpp"

#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "jbmaslov/random.hpp"

namespace jbmaslov {

namespace {

using CaseResult = std::optional<std::string>;  // failure message, or nothing
using CaseFn = std::function<CaseResult(Rng&)>;

constexpr std::size_t kMaxDiagnostics = 20;

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double draw(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

template <typename... Args>
std::string message(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

CMatrix unit_scale(const CMatrix& m) { return m / std::max(operator_norm(m), 1e-300); }

CaseResult axioms_case(Rng& rng) {
  const int n = pick(rng, 1, 6);
  const CMatrix x = unit_scale(random_symmetric(n, rng));
  const CMatrix y = unit_scale(random_symmetric(n, rng));
  const CMatrix z = unit_scale(random_symmetric(n, rng));
  const CMatrix u = unit_scale(random_symmetric(n, rng));
  const CMatrix v = unit_scale(random_symmetric(n, rng));
  const AxiomResiduals r = validate_axioms(x, y, z, u, v);
  if (r.triple_identity > 1e-10 || r.norm_axiom > 1e-8) {
    return message("n=", n, " triple residual ", r.triple_identity, " norm error ", r.norm_axiom);
  }
  return std::nullopt;
}

// A random pair (x, e) whose relative spectrum has k eigenvalues at 1.
std::pair<SymUnitary, SymUnitary> pair_with_kernel(int n, int k, Rng& rng) {
  const SymUnitary e = random_sym_unitary(n, rng);
  std::vector<double> angles = random_angles(n, rng);
  for (int j = 0; j < k; ++j) angles[static_cast<std::size_t>(j)] = 0.0;
  return {random_relative(e, angles, rng), e};
}

CaseResult spectra_case(Rng& rng) {
  const int n = pick(rng, 1, 6);
  const int k = pick(rng, 0, n);
  const auto [x, e] = pair_with_kernel(n, k, rng);
  if (!conjugate_spectrum_check(x, e)) return message("n=", n, " spectrum of (e, x) is not conjugate");
  const int m = mu(x, e, 0.0);
  const int rank_side = n - numerical_rank(CMatrix(x.matrix() - e.matrix()));
  const int frames = intersection_dimension(tripotent_to_lagrangian(x), tripotent_to_lagrangian(e));
  if (m != k || rank_side != k || frames != k) {
    return message("n=", n, " built kernel ", k, ": mu ", m, ", n - rank ", rank_side, ", frames ", frames);
  }
  if (pair_report(x, e).transverse != (m == 0)) return message("n=", n, " transversality disagrees with mu");
  return std::nullopt;
}

CaseResult perturbation_case(Rng& rng) {
  const int n = pick(rng, 1, 6);
  const double eps = draw(rng, 0.2, 2.5);
  const SymUnitary e = random_sym_unitary(n, rng);
  std::vector<double> angles(static_cast<std::size_t>(n));
  int expected = 0;
  for (auto& a : angles) {
    if (pick(rng, 0, 2) == 0) {
      a = 0.0;
      ++expected;
    } else {
      const double mag = draw(rng, std::min(eps + 0.1, kPi), kPi);
      a = pick(rng, 0, 1) ? mag : -mag;
    }
  }
  const SymUnitary x = random_relative(e, angles, rng);
  const double budget = perturbation_budget(x, e, eps);
  const SymUnitary y = random_nearby(x, budget, rng);
  if ((y.matrix() - x.matrix()).norm() >= budget) return message("n=", n, " sample left the budget");
  int inside = 0;
  const RelativeSpectrum moved = relative_spectrum(y, e);
  for (const auto& c : moved.clusters()) {
    if (std::abs(c.angle) <= eps) inside += c.multiplicity;
  }
  if (inside != mu(x, e, 0.0) || inside != expected) {
    return message("n=", n, " eps=", eps, ": ", inside, " eigenvalues within eps, mu(x,e)=", mu(x, e, 0.0));
  }
  return std::nullopt;
}

CaseResult subdivision_case(Rng& rng) {
  const int n = pick(rng, 1, 6);
  const TripotentPath path = random_frame_diagonal_path(n, rng, pick(rng, 0, 3));
  const SymUnitary e = pick(rng, 0, 1) ? SymUnitary::identity(n) : random_sym_unitary(n, rng);
  const IndexReport coarse = maslov_index(path, e);
  IndexOptions fine;
  fine.initial_samples = 2 * IndexOptions{}.initial_samples;
  fine.epsilon_rule = EpsilonRule::jittered;
  fine.seed = rng();
  const IndexReport dense = maslov_index(path, e, fine);
  if (!coarse.certified || !dense.certified) return message("n=", n, " uncertified subdivision");
  if (coarse.value != dense.value) return message("n=", n, " index ", coarse.value, " vs refined ", dense.value);
  return std::nullopt;
}

// Moves every interior sample of a certified report by less than a quarter
// of the slack (distance to e^{+-i eps} minus step) of its neighbouring
// pairs, so each original segment stays certified with its epsilon.
std::vector<SymUnitary> perturb_interior(const IndexReport& report, const SymUnitary& e, Rng& rng) {
  const std::size_t count = report.samples.size();
  std::vector<RelativeEigen> rel;
  for (const auto& x : report.samples) rel.push_back(relative_eigen(x, e));
  std::vector<double> radius(count, kTwoPi);
  for (const auto& seg : report.segments) {
    for (std::size_t k = seg.first_sample; k < seg.last_sample; ++k) {
      const double step = (rel[k + 1].w - rel[k].w).norm();
      const double slack = rel[k].distance_to(seg.epsilon) - step;
      radius[k] = std::min(radius[k], 0.25 * slack);
      radius[k + 1] = std::min(radius[k + 1], 0.25 * slack);
    }
  }
  std::vector<SymUnitary> out = report.samples;
  for (std::size_t k = 1; k + 1 < count; ++k) out[k] = random_nearby(report.samples[k], radius[k], rng, 1.0);
  return out;
}

CaseResult homotopy_case(Rng& rng) {
  const int n = pick(rng, 1, 6);
  const TripotentPath path = random_frame_diagonal_path(n, rng, pick(rng, 0, 3));
  const SymUnitary e = pick(rng, 0, 1) ? SymUnitary::identity(n) : random_sym_unitary(n, rng);
  const IndexReport report = maslov_index(path, e);
  if (!report.certified) return message("n=", n, " uncertified index");
  const std::vector<SymUnitary> moved = perturb_interior(report, e, rng);

  std::vector<std::size_t> breaks{0};
  std::vector<double> eps;
  for (const auto& seg : report.segments) {
    breaks.push_back(seg.last_sample);
    eps.push_back(seg.epsilon);
  }
  const int same_subdivision = maslov_index_with_subdivision(moved, e, breaks, eps);
  const IndexReport fresh = maslov_index(TripotentPath::sampled(report.params, moved), e);
  if (same_subdivision != report.value || fresh.value != report.value) {
    return message("n=", n, " index ", report.value, ", perturbed ", same_subdivision, " / ", fresh.value);
  }
  return std::nullopt;
}

// A frame-diagonal path starting where `from` ends.
TripotentPath continue_from(const SymUnitary& start, Rng& rng) {
  const int n = start.dimension();
  const JordanDecomposition d = jordan_decompose(start, SymUnitary::identity(n));
  RMatrix angles(3, n);
  for (int j = 0; j < n; ++j) {
    angles(0, j) = d.angles[static_cast<std::size_t>(j)];
    angles(1, j) = draw(rng, -kTwoPi, kTwoPi);
    angles(2, j) = draw(rng, -kTwoPi, kTwoPi);
  }
  return TripotentPath::frame_diagonal(d.frame, {0.0, draw(rng, 0.2, 0.8), 1.0}, angles, 1e-8);
}

CaseResult additivity_case(Rng& rng) {
  const int n = pick(rng, 1, 5);
  const TripotentPath p = random_frame_diagonal_path(n, rng, pick(rng, 0, 2));
  const TripotentPath q = continue_from(p.end(), rng);
  const SymUnitary e = pick(rng, 0, 1) ? SymUnitary::identity(n) : random_sym_unitary(n, rng);
  const int mp = maslov_index(p, e).value;
  const int mq = maslov_index(q, e).value;
  const int mpq = maslov_index(concatenate(p, q, 1e-8), e).value;
  const int mr = maslov_index(reverse(p), e).value;
  if (mpq != mp + mq) return message("n=", n, " Mas(p.q)=", mpq, " but Mas(p)+Mas(q)=", mp + mq);
  if (mr != -mp) return message("n=", n, " Mas(reverse p)=", mr, " but Mas(p)=", mp);
  const TripotentPath rr = reverse(reverse(p));
  for (double t : {0.0, 0.3, 0.7, 1.0}) {
    if ((rr.at(t).matrix() - p.at(t).matrix()).norm() > 1e-12) return message("n=", n, " reverse twice moved a point");
  }
  return std::nullopt;
}

CaseResult loops_case(Rng& rng) {
  const int n = pick(rng, 1, 4);
  const TripotentPath loop = random_loop(n, rng);
  const int winding = winding_number_det(loop, SymUnitary::identity(n));
  for (int b = 0; b < 3; ++b) {
    const SymUnitary e = b == 0 ? SymUnitary::identity(n) : random_sym_unitary(n, rng);
    const IndexReport r = maslov_index(loop, e);
    if (!r.certified) return message("n=", n, " uncertified loop index");
    if (r.value != winding) return message("n=", n, " base ", b, ": Mas ", r.value, " winding ", winding);
  }
  return std::nullopt;
}

CaseResult formula_e_case(Rng& rng) {
  const int n = pick(rng, 1, 4);
  const FormulaEConfig c = random_formula_e_config(n, rng);
  const FormulaECheck check = check_formula_E(c.sigma, c.tau, c.e);
  if (!check.equal) {
    return message("n=", n, " lhs ", check.lhs, " rhs ", check.rhs(), " (m ", check.m, ", iota ", check.iota,
                   ", mu_tau ", check.mu_tau, ", mu_sigma ", check.mu_sigma, ")");
  }
  const int other = mas_two_points(c.sigma, c.tau, c.e, ConnectingRoute::rotate_frame);
  if (other != check.lhs) return message("n=", n, " connecting routes disagree: ", check.lhs, " vs ", other);
  return std::nullopt;
}

// Half the cases take tau' in the orbit of tau under automorphisms fixing e,
// where mu(tau, e) = mu(tau', e) and the relation holds as displayed.
CaseResult leray_case(Rng& rng) {
  const int n = pick(rng, 1, 3);
  const FormulaEConfig a = random_formula_e_config(n, rng);
  const FormulaEConfig b = random_formula_e_config(n, rng);
  const LiftedPoint e = pick(rng, 0, 1) ? LiftedPoint::principal(b.e) : b.sigma;
  const LiftedPoint tau_prime = pick(rng, 0, 1) ? random_orbit_partner(a.sigma, e.point(), rng) : a.tau;
  const LerayCheck c = check_leray(a.sigma, tau_prime, e);
  if (!c.cocycle_holds) return message("n=", n, " cocycle form fails: lhs ", c.lhs, " rhs ", c.rhs);
  if (c.holds != (c.mu_tau == c.mu_tau_prime)) {
    return message("n=", n, " lhs ", c.lhs, " rhs ", c.rhs, " with mu(tau,e) ", c.mu_tau, ", mu(tau',e) ",
                   c.mu_tau_prime);
  }
  return std::nullopt;
}

CaseResult bridge_case(Rng& rng) {
  const int n = pick(rng, 1, 6);
  const int k = pick(rng, 0, n);
  const auto [fa, fb] = random_lagrangian_pair(n, k, rng);
  const LagrangianFrame la = LagrangianFrame::from_matrix(fa, 1e-8);
  const LagrangianFrame lb = LagrangianFrame::from_matrix(fb, 1e-8);
  const SymUnitary x = lagrangian_to_tripotent(la);
  const SymUnitary y = lagrangian_to_tripotent(lb);
  const double back = principal_angles(tripotent_to_lagrangian(x).frame(), la.frame()).cwiseAbs().maxCoeff();
  if (back > 1e-7) return message("n=", n, " round trip moved the Lagrangian by ", back);
  const int via_units = pair_report(x, y).dim_intersection;
  const int via_frames = intersection_dimension(la, lb);
  if (via_units != k || via_frames != k) {
    return message("n=", n, " built intersection ", k, ": units ", via_units, ", frames ", via_frames);
  }
  return std::nullopt;
}

const std::map<std::string, CaseFn>& registry() {
  static const std::map<std::string, CaseFn> suites{
      {"axioms", axioms_case},           {"spectra", spectra_case},  {"perturbation", perturbation_case},
      {"subdivision", subdivision_case}, {"homotopy", homotopy_case}, {"additivity", additivity_case},
      {"loops", loops_case},             {"formula-e", formula_e_case}, {"leray", leray_case},
      {"bridge", bridge_case},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "spectra",   "perturbation", "subdivision", "homotopy",
                                              "additivity", "loops", "formula-e",    "leray",       "bridge"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int count) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw InvalidArgument("unknown verification suite '" + name + "'");
  SuiteResult result;
  result.suite = name;
  for (int i = 0; i < count; ++i) {
    // One engine per case, so a failing case can be replayed on its own.
    Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    CaseResult failure;
    try {
      failure = it->second(rng);
    } catch (const std::exception& err) {
      failure = std::string("exception: ") + err.what();
    }
    ++result.cases;
    if (failure) {
      ++result.failures;
      if (result.diagnostics.size() < kMaxDiagnostics) {
        result.diagnostics.push_back("case " + std::to_string(i) + ": " + *failure);
      }
    }
  }
  return result;
}

}  // namespace jbmaslov

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "jbmaslov/io.hpp"
#include "jbmaslov/verify.hpp"

using namespace jbmaslov;

namespace {

enum ExitCode { kOk = 0, kInputError = 1, kUncertified = 2, kNumericalFailure = 3 };

struct Flags {
  std::string base_file;
  bool certified = false;
  int max_refine = 20;
  double tol_cluster = kTolCluster;
  std::string format = "text";
  std::uint64_t seed = 0;
  int count = 100;
  int samples = 64;
};

IndexOptions index_options(const Flags& f) {
  IndexOptions opt;
  opt.max_refine = f.max_refine;
  opt.tol_cluster = f.tol_cluster;
  opt.initial_samples = f.samples;
  return opt;
}

// --base wins over the document's own base; identity otherwise.
SymUnitary resolve_base(const Flags& f, const std::optional<SymUnitary>& from_doc, int n) {
  if (!f.base_file.empty()) {
    SymUnitary e = parse_point(read_json_file(f.base_file)).x;
    if (e.dimension() != n) throw InvalidArgument(f.base_file + ": base dimension differs from n");
    return e;
  }
  if (from_doc) return *from_doc;
  return SymUnitary::identity(n);
}

bool json_out(const Flags& f) { return f.format == "json"; }

int cmd_index(const std::string& file, const Flags& f) {
  const PathDocument doc = parse_path(read_json_file(file));
  const SymUnitary e = resolve_base(f, doc.base, doc.path.dimension());
  const IndexReport r = maslov_index(doc.path, e, index_options(f));
  if (json_out(f)) {
    std::cout << index_report_to_json(r).dump(2) << "\n";
  } else {
    std::cout << "index: " << r.value << "\n"
              << "certified: " << (r.certified ? "yes" : "no") << "\n"
              << "refinements: " << r.refinements << "\n"
              << "samples: " << r.params.size() << "\n"
              << "segments:\n"
              << "  t_start      t_end        epsilon      k_start k_end\n";
    for (const auto& s : r.segments) {
      std::cout << "  " << std::setw(12) << std::left << s.t_start << " " << std::setw(12) << s.t_end << " "
                << std::setw(12) << s.epsilon << " " << std::setw(7) << s.k_start << " " << s.k_end
                << (s.certified ? "" : "  (uncertified)") << "\n";
    }
  }
  if (f.certified && !r.certified) {
    std::cerr << "index could not be certified\n";
    return kUncertified;
  }
  return kOk;
}

int cmd_spectrum(const std::string& file, const Flags& f) {
  const PointDocument doc = parse_point(read_json_file(file));
  const SymUnitary e = resolve_base(f, std::nullopt, doc.x.dimension());
  const RelativeSpectrum s = relative_spectrum(doc.x, e, f.tol_cluster);
  if (json_out(f)) {
    std::cout << spectrum_to_json(s).dump(2) << "\n";
  } else {
    std::cout << "angle                 multiplicity\n";
    for (const auto& c : s.clusters()) {
      std::cout << std::setprecision(15) << std::setw(22) << std::left << c.angle << c.multiplicity << "\n";
    }
  }
  return kOk;
}

int cmd_pair(const std::string& x_file, const std::string& y_file, const Flags& f) {
  const SymUnitary x = parse_point(read_json_file(x_file)).x;
  const SymUnitary y = parse_point(read_json_file(y_file)).x;
  const PairReport r = pair_report(x, y);
  if (json_out(f)) {
    std::cout << pair_report_to_json(r).dump(2) << "\n";
  } else {
    std::cout << "dim_intersection: " << r.dim_intersection << "\n"
              << "transverse: " << (r.transverse ? "yes" : "no") << "\n"
              << "fredholm: " << (r.fredholm ? "yes" : "no") << "\n";
  }
  return kOk;
}

int cmd_winding(const std::string& file, const Flags& f) {
  const PathDocument doc = parse_path(read_json_file(file));
  const SymUnitary e = resolve_base(f, doc.base, doc.path.dimension());
  const int w = winding_number_det(doc.path, e, index_options(f));
  if (json_out(f)) {
    std::cout << Json{{"winding", w}}.dump(2) << "\n";
  } else {
    std::cout << "winding: " << w << "\n";
  }
  return kOk;
}

int cmd_formula_e(const std::string& file, const Flags& f) {
  const FormulaEDocument doc = parse_formula_e(read_json_file(file));
  IndexOptions opt = index_options(f);
  const FormulaECheck c = check_formula_E(doc.sigma, doc.tau, doc.e, opt);
  if (json_out(f)) {
    std::cout << formula_e_to_json(c).dump(2) << "\n";
  } else {
    std::cout << "lhs: " << c.lhs << "\n"
              << "rhs: " << c.rhs() << "  (m " << c.m << ", iota " << c.iota << ", mu_tau " << c.mu_tau
              << ", mu_sigma " << c.mu_sigma << ")\n"
              << "equal: " << (c.equal ? "true" : "false") << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& suite, const Flags& f) {
  const std::vector<std::string> suites =
      suite == "all" ? suite_names() : std::vector<std::string>{suite};
  Json out = Json::array();
  bool ok = true;
  for (const auto& name : suites) {
    const SuiteResult r = run_suite(name, f.seed, f.count);
    ok = ok && r.passed();
    if (json_out(f)) {
      out.push_back({{"suite", r.suite}, {"cases", r.cases}, {"failures", r.failures},
                     {"passed", r.passed()}, {"diagnostics", r.diagnostics}});
    } else {
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.cases - r.failures << "/" << r.cases
                << " cases\n";
      for (const auto& d : r.diagnostics) std::cout << "  " << d << "\n";
    }
  }
  if (json_out(f)) std::cout << out.dump(2) << "\n";
  return ok ? kOk : kNumericalFailure;
}

int cmd_flow(const std::string& file, const Flags& f) {
  const PathDocument doc = parse_path(read_json_file(file));
  const SymUnitary e = resolve_base(f, doc.base, doc.path.dimension());
  std::cout << flow_to_csv(eigenvalue_flow(doc.path, e, f.samples, f.max_refine, f.tol_cluster));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maslov index of paths of symmetric unitary matrices"};
  app.require_subcommand(1);
  Flags flags;
  std::string file;
  std::string second_file;
  std::string suite;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol-cluster", flags.tol_cluster, "Eigenvalue clustering tolerance (radians)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_path_flags = [&](CLI::App* cmd) {
    cmd->add_option("--base", flags.base_file, "Point document holding the base unit")->check(CLI::ExistingFile);
    cmd->add_option("--max-refine", flags.max_refine, "Bisection depth limit")->check(CLI::NonNegativeNumber);
  };

  CLI::App* index = app.add_subcommand("index", "Maslov index of a path relative to a base unit");
  index->add_option("path", file, "Path document")->required()->check(CLI::ExistingFile);
  index->add_flag("--certified", flags.certified, "Exit with code 2 unless every segment is certified");
  index->add_option("--samples", flags.samples, "Initial samples per analytic leg")->check(CLI::Range(2, 1 << 20));
  add_path_flags(index);
  add_common(index);

  CLI::App* spectrum = app.add_subcommand("spectrum", "Spectrum of a point relative to a base unit");
  spectrum->add_option("point", file, "Point document")->required()->check(CLI::ExistingFile);
  spectrum->add_option("--base", flags.base_file, "Point document holding the base unit")->check(CLI::ExistingFile);
  add_common(spectrum);

  CLI::App* pair = app.add_subcommand("pair", "Intersection report for two units");
  pair->add_option("x", file, "Point document")->required()->check(CLI::ExistingFile);
  pair->add_option("y", second_file, "Point document")->required()->check(CLI::ExistingFile);
  add_common(pair);

  CLI::App* winding = app.add_subcommand("winding", "Winding number of det along a closed path");
  winding->add_option("path", file, "Path document")->required()->check(CLI::ExistingFile);
  add_path_flags(winding);
  add_common(winding);

  CLI::App* formula = app.add_subcommand("formula-e", "Check the two-point index identity on a configuration");
  formula->add_option("config", file, "Configuration document")->required()->check(CLI::ExistingFile);
  formula->add_option("--max-refine", flags.max_refine, "Bisection depth limit")->check(CLI::NonNegativeNumber);
  add_common(formula);

  CLI::App* verify = app.add_subcommand("verify", "Run a randomized property suite");
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  verify->add_option("suite", suite, "Suite name or 'all'")->required()->check(CLI::IsMember(choices));
  verify->add_option("--seed", flags.seed, "Random seed");
  verify->add_option("--count", flags.count, "Cases per suite")->check(CLI::PositiveNumber);
  add_common(verify);

  CLI::App* flow = app.add_subcommand("flow", "CSV of eigenvalue angles along a path");
  flow->add_option("path", file, "Path document")->required()->check(CLI::ExistingFile);
  flow->add_option("--samples", flags.samples, "Uniform samples")->check(CLI::Range(2, 1 << 20));
  add_path_flags(flow);
  add_common(flow);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*index) return cmd_index(file, flags);
    if (*spectrum) return cmd_spectrum(file, flags);
    if (*pair) return cmd_pair(file, second_file, flags);
    if (*winding) return cmd_winding(file, flags);
    if (*formula) return cmd_formula_e(file, flags);
    if (*verify) return cmd_verify(suite, flags);
    if (*flow) return cmd_flow(file, flags);
  } catch (const InvalidArgument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kInputError;
  } catch (const NumericalFailure& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return kNumericalFailure;
  }
  return kInputError;
}

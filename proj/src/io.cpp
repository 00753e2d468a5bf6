#include "jbmaslov/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

namespace jbmaslov {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidArgument(where + ": " + what);
}

void check_keys(const Json& j, const std::string& where, const std::set<std::string>& required,
                const std::set<std::string>& optional) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!required.count(key) && !optional.count(key)) fail(where, "unknown field '" + key + "'");
  }
  for (const auto& key : required) {
    if (!j.contains(key)) fail(where, "missing field '" + key + "'");
  }
}

double get_number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "non-finite number");
  return v;
}

int get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::vector<double> get_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(get_number(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

RMatrix get_real_matrix(const Json& j, const std::string& where, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array()) fail(where, "expected an array of rows");
  if (rows >= 0 && static_cast<Eigen::Index>(j.size()) != rows) {
    fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  if (j.empty()) fail(where, "empty matrix");
  const auto r = static_cast<Eigen::Index>(j.size());
  const Eigen::Index c = cols >= 0 ? cols : static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  RMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const std::string row = where + "[" + std::to_string(i) + "]";
    const std::vector<double> v = get_vector(j[static_cast<std::size_t>(i)], row);
    if (static_cast<Eigen::Index>(v.size()) != c) fail(row, "expected " + std::to_string(c) + " entries");
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = v[static_cast<std::size_t>(k)];
  }
  return m;
}

CMatrix get_complex_matrix(const Json& j, const std::string& where, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) fail(where, "expected " + std::to_string(n) + " rows");
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const std::string row = where + "[" + std::to_string(r) + "]";
    const Json& jr = j[static_cast<std::size_t>(r)];
    if (!jr.is_array() || static_cast<int>(jr.size()) != n) fail(row, "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) {
      const std::string cell = row + "[" + std::to_string(c) + "]";
      const Json& z = jr[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2) fail(cell, "expected [re, im]");
      m(r, c) = Complex(get_number(z[0], cell + "[0]"), get_number(z[1], cell + "[1]"));
    }
  }
  return m;
}

SymUnitary get_sym_unitary(const Json& j, const std::string& where, int n, double tol) {
  const CMatrix m = get_complex_matrix(j, where, n);
  try {
    return SymUnitary::from_matrix(m, tol);
  } catch (const InvalidArgument& err) {
    fail(where, err.what());
  }
}

void check_header(const Json& doc, int& n) {
  if (!doc.is_object()) fail("document", "expected a JSON object");
  if (!doc.contains("schema_version")) fail("document", "missing field 'schema_version'");
  const int version = get_int(doc["schema_version"], "schema_version");
  if (version != kSchemaVersion) fail("schema_version", "unsupported version " + std::to_string(version));
  if (!doc.contains("n")) fail("document", "missing field 'n'");
  n = get_int(doc["n"], "n");
  if (n < 1) fail("n", "must be positive");
}

std::string get_metadata(const Json& doc) {
  if (!doc.contains("metadata")) return "";
  if (!doc["metadata"].is_string()) fail("metadata", "expected a string");
  return doc["metadata"].get<std::string>();
}

PathLeg parse_leg(const Json& j, const std::string& where, const std::string& kind, int n, double tol,
                  const std::set<std::string>& extra) {
  auto keys = [&](std::set<std::string> required) {
    std::set<std::string> optional = extra;
    required.insert("kind");
    check_keys(j, where, required, optional);
  };
  try {
    if (kind == "sampled") {
      keys({"params", "samples"});
      std::vector<double> params = get_vector(j["params"], where + ".params");
      const Json& js = j["samples"];
      if (!js.is_array()) fail(where + ".samples", "expected an array of matrices");
      std::vector<SymUnitary> points;
      for (std::size_t i = 0; i < js.size(); ++i) {
        points.push_back(get_sym_unitary(js[i], where + ".samples[" + std::to_string(i) + "]", n, tol));
      }
      const TripotentPath p = TripotentPath::sampled(std::move(params), std::move(points));
      return p.pieces().front().leg;
    }
    if (kind == "frame_diagonal") {
      keys({"frame", "knots", "angles"});
      const RMatrix frame = get_real_matrix(j["frame"], where + ".frame", n, n);
      std::vector<double> knots = get_vector(j["knots"], where + ".knots");
      const RMatrix angles =
          get_real_matrix(j["angles"], where + ".angles", static_cast<Eigen::Index>(knots.size()), n);
      const TripotentPath p = TripotentPath::frame_diagonal(frame, std::move(knots), angles, tol);
      return p.pieces().front().leg;
    }
    if (kind == "frame_rotation") {
      keys({"generator", "start"});
      const RMatrix generator = get_real_matrix(j["generator"], where + ".generator", n, n);
      const SymUnitary start = get_sym_unitary(j["start"], where + ".start", n, tol);
      const TripotentPath p = TripotentPath::frame_rotation(generator, start, tol);
      return p.pieces().front().leg;
    }
  } catch (const InvalidArgument& err) {
    const std::string msg = err.what();
    if (msg.rfind(where, 0) == 0) throw;
    fail(where, msg);
  }
  fail(where + ".kind", "unknown kind '" + kind + "'");
}

std::string get_kind(const Json& j, const std::string& where) {
  if (!j.contains("kind") || !j["kind"].is_string()) fail(where, "missing string field 'kind'");
  return j["kind"].get<std::string>();
}

Json leg_to_json(const PathLeg& leg) {
  return std::visit(
      [](const auto& l) -> Json {
        using T = std::decay_t<decltype(l)>;
        Json j;
        if constexpr (std::is_same_v<T, SampledLeg>) {
          j["kind"] = "sampled";
          j["params"] = l.params;
          Json samples = Json::array();
          for (const auto& p : l.points) samples.push_back(complex_matrix_to_json(p.matrix()));
          j["samples"] = samples;
        } else if constexpr (std::is_same_v<T, FrameDiagonalLeg>) {
          j["kind"] = "frame_diagonal";
          j["frame"] = real_matrix_to_json(l.frame);
          j["knots"] = l.knots;
          j["angles"] = real_matrix_to_json(l.angles);
        } else {
          j["kind"] = "frame_rotation";
          j["generator"] = real_matrix_to_json(l.generator);
          j["start"] = complex_matrix_to_json(l.start.matrix());
        }
        return j;
      },
      leg);
}

}  // namespace

Json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InvalidArgument(file + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw InvalidArgument(file + ": parse error: " + err.what());
  }
}

Json complex_matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

Json real_matrix_to_json(const RMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

PathDocument parse_path(const Json& doc, double tol) {
  int n = 0;
  check_header(doc, n);
  const std::string kind = get_kind(doc, "document");
  const std::set<std::string> header{"schema_version", "n", "base", "metadata"};

  std::vector<TripotentPath::Piece> pieces;
  if (kind == "composite") {
    check_keys(doc, "document", {"schema_version", "n", "kind", "legs"}, {"base", "metadata"});
    const Json& legs = doc["legs"];
    if (!legs.is_array() || legs.empty()) fail("legs", "expected a non-empty array");
    const bool spans = legs[0].is_object() && legs[0].contains("span");
    for (std::size_t i = 0; i < legs.size(); ++i) {
      const std::string where = "legs[" + std::to_string(i) + "]";
      const Json& lj = legs[i];
      if (!lj.is_object()) fail(where, "expected an object");
      if (lj.contains("span") != spans) fail(where, "either every leg has a span or none does");
      TripotentPath::Piece piece{parse_leg(lj, where, get_kind(lj, where), n, tol, {"reversed", "span"}),
                                 0.0, 1.0, false};
      if (lj.contains("reversed")) {
        if (!lj["reversed"].is_boolean()) fail(where + ".reversed", "expected a boolean");
        piece.reversed = lj["reversed"].get<bool>();
      }
      if (spans) {
        const std::vector<double> span = get_vector(lj["span"], where + ".span");
        if (span.size() != 2) fail(where + ".span", "expected [t0, t1]");
        piece.t0 = span[0];
        piece.t1 = span[1];
      } else {
        piece.t0 = static_cast<double>(i) / static_cast<double>(legs.size());
        piece.t1 = i + 1 == legs.size() ? 1.0 : static_cast<double>(i + 1) / static_cast<double>(legs.size());
      }
      pieces.push_back(std::move(piece));
    }
  } else {
    pieces.push_back(TripotentPath::Piece{parse_leg(doc, "document", kind, n, tol, header), 0.0, 1.0, false});
  }

  std::optional<SymUnitary> base;
  if (doc.contains("base")) base = get_sym_unitary(doc["base"], "base", n, tol);
  try {
    TripotentPath path = TripotentPath::from_pieces(std::move(pieces), std::max(tol, 1e-8));
    path.set_base_hint(base);
    return PathDocument{std::move(path), base, get_metadata(doc)};
  } catch (const InvalidArgument& err) {
    fail("legs", err.what());
  }
}

PointDocument parse_point(const Json& doc, double tol) {
  int n = 0;
  check_header(doc, n);
  check_keys(doc, "document", {"schema_version", "n", "x"}, {"metadata"});
  return PointDocument{get_sym_unitary(doc["x"], "x", n, tol), get_metadata(doc)};
}

FormulaEDocument parse_formula_e(const Json& doc, double tol) {
  int n = 0;
  check_header(doc, n);
  check_keys(doc, "document", {"schema_version", "n", "sigma", "tau", "e"}, {"cover_base", "metadata"});
  const SymUnitary cover =
      doc.contains("cover_base") ? get_sym_unitary(doc["cover_base"], "cover_base", n, tol) : SymUnitary::identity(n);
  auto lifted = [&](const char* name) {
    const Json& j = doc[name];
    check_keys(j, name, {"x", "lift"}, {});
    const SymUnitary x = get_sym_unitary(j["x"], std::string(name) + ".x", n, tol);
    const double lift = get_number(j["lift"], std::string(name) + ".lift");
    try {
      return LiftedPoint(x, lift, cover);
    } catch (const InvalidArgument& err) {
      fail(name, err.what());
    }
  };
  LiftedPoint sigma = lifted("sigma");
  LiftedPoint tau = lifted("tau");
  return FormulaEDocument{std::move(sigma), std::move(tau), get_sym_unitary(doc["e"], "e", n, tol),
                          get_metadata(doc)};
}

Json path_to_json(const TripotentPath& path, const std::optional<SymUnitary>& base,
                  const std::string& metadata) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["n"] = path.dimension();
  if (base) doc["base"] = complex_matrix_to_json(base->matrix());
  const auto& pieces = path.pieces();
  if (pieces.size() == 1 && !pieces.front().reversed) {
    const Json leg = leg_to_json(pieces.front().leg);
    for (const auto& [key, value] : leg.items()) doc[key] = value;
  } else {
    doc["kind"] = "composite";
    Json legs = Json::array();
    for (const auto& p : pieces) {
      Json lj = leg_to_json(p.leg);
      if (p.reversed) lj["reversed"] = true;
      lj["span"] = {p.t0, p.t1};
      legs.push_back(lj);
    }
    doc["legs"] = legs;
  }
  if (!metadata.empty()) doc["metadata"] = metadata;
  return doc;
}

Json point_to_json(const SymUnitary& x, const std::string& metadata) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["n"] = x.dimension();
  doc["x"] = complex_matrix_to_json(x.matrix());
  if (!metadata.empty()) doc["metadata"] = metadata;
  return doc;
}

Json index_report_to_json(const IndexReport& report) {
  Json segments = Json::array();
  for (const auto& s : report.segments) {
    segments.push_back({{"t_start", s.t_start},
                        {"t_end", s.t_end},
                        {"epsilon", s.epsilon},
                        {"k_start", s.k_start},
                        {"k_end", s.k_end},
                        {"certified", s.certified}});
  }
  return {{"value", report.value},
          {"certified", report.certified},
          {"refinements", report.refinements},
          {"samples", report.params.size()},
          {"segments", segments}};
}

Json spectrum_to_json(const RelativeSpectrum& spectrum) {
  Json clusters = Json::array();
  for (const auto& c : spectrum.clusters()) clusters.push_back({{"angle", c.angle}, {"multiplicity", c.multiplicity}});
  return {{"n", spectrum.dimension()}, {"clusters", clusters}};
}

Json pair_report_to_json(const PairReport& report) {
  return {{"dim_intersection", report.dim_intersection},
          {"transverse", report.transverse},
          {"fredholm", report.fredholm}};
}

Json formula_e_to_json(const FormulaECheck& c) {
  return {{"lhs", c.lhs},
          {"rhs", c.rhs()},
          {"rhs_integral", c.rhs_integral},
          {"equal", c.equal},
          {"m", c.m},
          {"iota", c.iota},
          {"mu_tau", c.mu_tau},
          {"mu_sigma", c.mu_sigma}};
}

namespace {

// Assignment of new angles to tracked columns minimizing total arc movement.
std::vector<int> match_angles(const std::vector<double>& prev, const std::vector<double>& next) {
  const int n = static_cast<int>(prev.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  auto cost = [&](const std::vector<int>& p) {
    double c = 0.0;
    for (int j = 0; j < n; ++j) c += std::abs(arc_difference(prev[j], next[p[j]]));
    return c;
  };
  if (n <= 7) {
    std::vector<int> best = perm;
    double best_cost = cost(perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double c = cost(perm);
      if (c < best_cost - 1e-15) {
        best_cost = c;
        best = perm;
      }
    }
    return best;
  }
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int j = 0; j < n; ++j) {
    int pick = -1;
    for (int k = 0; k < n; ++k) {
      if (used[k]) continue;
      if (pick < 0 || std::abs(arc_difference(prev[j], next[k])) < std::abs(arc_difference(prev[j], next[pick]))) {
        pick = k;
      }
    }
    used[pick] = true;
    perm[j] = pick;
  }
  return perm;
}

std::vector<double> sorted_angles(const TripotentPath& path, const SymUnitary& e, double t, double tol) {
  std::vector<double> a = relative_eigen(path.at(t), e, tol).angles;
  std::sort(a.begin(), a.end());
  return a;
}

bool evaluable(const TripotentPath& path, double t) {
  try {
    path.at(t);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

}  // namespace

FlowTable eigenvalue_flow(const TripotentPath& path, const SymUnitary& e, int samples, int max_refine,
                          double tol_cluster) {
  if (samples < 2) throw InvalidArgument("flow: need at least two samples");
  if (path.dimension() != e.dimension()) throw InvalidArgument("flow: path and base differ in dimension");

  bool has_sampled = false;
  for (const auto& p : path.pieces()) has_sampled = has_sampled || std::holds_alternative<SampledLeg>(p.leg);
  std::vector<double> grid;
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    if (!has_sampled || evaluable(path, t)) grid.push_back(t);
  }
  if (has_sampled) {
    for (double t : path.natural_parameters()) grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(), [](double a, double b) { return b - a < 1e-12; }), grid.end());
  }

  struct Row {
    double t;
    std::vector<double> raw;
    int depth;
  };
  std::vector<Row> rows;
  for (double t : grid) rows.push_back({t, sorted_angles(path, e, t, tol_cluster), 0});

  FlowTable flow;
  flow.t.push_back(rows[0].t);
  flow.theta.push_back(rows[0].raw);
  std::size_t k = 0;
  while (k + 1 < rows.size()) {
    const std::vector<double>& prev = flow.theta.back();
    const std::vector<int> perm = match_angles(prev, rows[k + 1].raw);
    std::vector<double> next(prev.size());
    double worst = 0.0;
    for (std::size_t j = 0; j < prev.size(); ++j) {
      const double step = arc_difference(prev[j], rows[k + 1].raw[static_cast<std::size_t>(perm[j])]);
      worst = std::max(worst, std::abs(step));
      next[j] = prev[j] + step;
    }
    if (worst > 0.6 * kPi) {
      const int depth = std::max(rows[k].depth, rows[k + 1].depth);
      if (!path.refinable(rows[k].t, rows[k + 1].t) || depth >= max_refine) {
        std::ostringstream os;
        os << "flow: eigenvalues move by " << worst << " between t = " << rows[k].t << " and t = "
           << rows[k + 1].t << "; samples too coarse";
        throw InvalidArgument(os.str());
      }
      const double mid = 0.5 * (rows[k].t + rows[k + 1].t);
      rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                  Row{mid, sorted_angles(path, e, mid, tol_cluster), depth + 1});
      continue;
    }
    flow.t.push_back(rows[k + 1].t);
    flow.theta.push_back(std::move(next));
    ++k;
  }
  return flow;
}

std::string flow_to_csv(const FlowTable& flow) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "t";
  const std::size_t n = flow.theta.empty() ? 0 : flow.theta.front().size();
  for (std::size_t j = 1; j <= n; ++j) os << ",theta_" << j;
  os << "\n";
  for (std::size_t r = 0; r < flow.t.size(); ++r) {
    os << flow.t[r];
    for (double v : flow.theta[r]) os << "," << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace jbmaslov

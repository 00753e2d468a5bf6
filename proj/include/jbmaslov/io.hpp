#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jbmaslov/index_calculus.hpp"

namespace jbmaslov {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Document layout (all documents are JSON objects, unknown keys rejected):
//   complex number  [re, im]
//   complex matrix  array of rows of complex numbers
//   real matrix     array of rows of numbers
//
//   path:    {schema_version, n, base?, metadata?, kind, ...payload}
//            kind = "sampled":        params, samples (complex matrices)
//            kind = "frame_diagonal": frame, knots, angles (one row per knot)
//            kind = "frame_rotation": generator, start
//            kind = "composite":      legs = [{kind, ...payload, reversed?, span?}]
//   point:   {schema_version, n, x, metadata?}
//   formula: {schema_version, n, sigma: {x, lift}, tau: {x, lift}, e, cover_base?, metadata?}

struct PathDocument {
  TripotentPath path;
  std::optional<SymUnitary> base;
  std::string metadata;
};

struct PointDocument {
  SymUnitary x;
  std::string metadata;
};

struct FormulaEDocument {
  LiftedPoint sigma;
  LiftedPoint tau;
  SymUnitary e;
  std::string metadata;
};

Json read_json_file(const std::string& file);

PathDocument parse_path(const Json& doc, double tol = kTolStruct);
PointDocument parse_point(const Json& doc, double tol = kTolStruct);
FormulaEDocument parse_formula_e(const Json& doc, double tol = kTolStruct);

Json path_to_json(const TripotentPath& path, const std::optional<SymUnitary>& base = std::nullopt,
                  const std::string& metadata = "");
Json point_to_json(const SymUnitary& x, const std::string& metadata = "");

Json complex_matrix_to_json(const CMatrix& m);
Json real_matrix_to_json(const RMatrix& m);

Json index_report_to_json(const IndexReport& report);
Json spectrum_to_json(const RelativeSpectrum& spectrum);
Json pair_report_to_json(const PairReport& report);
Json formula_e_to_json(const FormulaECheck& check);

/// Eigenvalue angles of x(t) conj(e) along the path, each column continuous
/// in t. Consecutive rows are matched by minimal total arc movement; analytic
/// legs are bisected where a matched step exceeds 0.6 pi.
struct FlowTable {
  std::vector<double> t;
  std::vector<std::vector<double>> theta;  // one row per t
};

FlowTable eigenvalue_flow(const TripotentPath& path, const SymUnitary& e, int samples,
                          int max_refine = 20, double tol_cluster = kTolCluster);
std::string flow_to_csv(const FlowTable& flow);

}  // namespace jbmaslov

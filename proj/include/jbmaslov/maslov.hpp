#pragma once

#include <cstdint>
#include <vector>

#include "jbmaslov/path.hpp"
#include "jbmaslov/spectral.hpp"

namespace jbmaslov {

/// Total multiplicity of the relative spectrum of (x, e) on the closed arc
/// [0, eps]. Throws InvalidArgument when a cluster sits within tol of eps,
/// since the count is then ambiguous.
int k_count(const SymUnitary& x, const SymUnitary& e, double eps, double tol_cluster = kTolCluster);

enum class EpsilonRule {
  midpoint,  // middle of the widest gap of |theta| over the segment
  jittered,  // uniform in the middle half of the widest gap (seeded)
};

struct IndexOptions {
  double tol_cluster = kTolCluster;
  double tol_struct = kTolStruct;
  int max_refine = 20;       // bisection depth per sample interval
  int initial_samples = 64;  // uniform samples per analytic leg
  EpsilonRule epsilon_rule = EpsilonRule::midpoint;
  std::uint64_t seed = 0;    // used by EpsilonRule::jittered
};

struct SegmentReport {
  double t_start = 0.0;
  double t_end = 0.0;
  double epsilon = 0.0;
  int k_start = 0;
  int k_end = 0;
  std::size_t first_sample = 0;  // indices into IndexReport::params
  std::size_t last_sample = 0;
  bool certified = false;
};

struct IndexReport {
  int value = 0;
  std::vector<SegmentReport> segments;
  bool certified = false;
  int refinements = 0;
  std::vector<double> params;        // realized sample parameters
  std::vector<SymUnitary> samples;   // realized samples
};

/// Samples the path (refining analytic legs by bisection where needed) and
/// groups the samples into segments with an admissible eps per segment.
/// A segment is certified when every consecutive pair of samples in it
/// satisfies ||w_{k+1} - w_k||_F < dist(spec w_k, e^{+-i eps}) with
/// w = x conj(e); by Hoffman-Wielandt no eigenvalue then jumps across
/// e^{+-i eps} between samples.
IndexReport choose_admissible_subdivision(const TripotentPath& path, const SymUnitary& e,
                                          const IndexOptions& options = {});

/// Maslov index of the path relative to e: the sum over segments of
/// k(t_j, eps_j) - k(t_{j-1}, eps_j).
IndexReport maslov_index(const TripotentPath& path, const SymUnitary& e,
                         const IndexOptions& options = {});

/// The same sum for a caller-supplied subdivision. breakpoints index into
/// samples (first 0, last samples.size()-1) and epsilons has one entry per
/// segment. Checks that no sample of a segment touches e^{+-i eps}; does not
/// certify.
int maslov_index_with_subdivision(const std::vector<SymUnitary>& samples, const SymUnitary& e,
                                  const std::vector<std::size_t>& breakpoints,
                                  const std::vector<double>& epsilons,
                                  double tol_cluster = kTolCluster);

/// Continuous change of arg det(x(t) conj(e)) along the path. Analytic legs
/// are bisected until every step moves the argument by less than pi/2;
/// sampled legs with a larger step throw InvalidArgument.
double det_argument_change(const TripotentPath& path, const SymUnitary& e,
                           const IndexOptions& options = {});

/// Winding number of t -> det(x(t) conj(e)) for a closed path.
int winding_number_det(const TripotentPath& path, const SymUnitary& e,
                       const IndexOptions& options = {});

}  // namespace jbmaslov

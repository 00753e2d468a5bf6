#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "jbmaslov/jordan.hpp"

namespace jbmaslov {

/// Raw samples at strictly increasing local parameters 0 = s_0 < ... < s_M = 1.
struct SampledLeg {
  std::vector<double> params;
  std::vector<SymUnitary> points;
};

/// x(s) = O diag(e^{i phi_j(s)}) O^T with each phi_j piecewise linear on the
/// shared knots 0 = s_0 < ... < s_K = 1. angles is (K+1) x n, one row per knot.
struct FrameDiagonalLeg {
  RMatrix frame;
  std::vector<double> knots;
  RMatrix angles;
};

/// x(s) = exp(s A) x0 exp(s A)^T for a real skew-symmetric generator A.
struct FrameRotationLeg {
  RMatrix generator;
  SymUnitary start;
};

using PathLeg = std::variant<SampledLeg, FrameDiagonalLeg, FrameRotationLeg>;

/// A continuous path [0, 1] -> Sigma, stored as consecutive legs. Each leg
/// covers a sub-interval of the global parameter and may be traversed
/// backwards. Single-leg paths are the three basic kinds; concatenation and
/// reversal produce multi-leg paths without resampling.
class TripotentPath {
 public:
  struct Piece {
    PathLeg leg;
    double t0 = 0.0;
    double t1 = 1.0;
    bool reversed = false;
  };

  static TripotentPath sampled(std::vector<double> params, std::vector<SymUnitary> points);
  static TripotentPath frame_diagonal(RMatrix frame, std::vector<double> knots, RMatrix angles,
                                      double tol = kTolStruct);
  static TripotentPath frame_rotation(RMatrix generator, SymUnitary start, double tol = kTolStruct);
  /// Assembles legs that already tile [0, 1]; used by the file reader.
  static TripotentPath from_pieces(std::vector<Piece> pieces, double tol = kTolStruct);

  int dimension() const { return n_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  const std::optional<SymUnitary>& base_hint() const { return base_hint_; }
  void set_base_hint(std::optional<SymUnitary> e) { base_hint_ = std::move(e); }

  /// Point at global parameter t. Inside sampled legs only the stored
  /// parameters are realizable; anything else throws InvalidArgument.
  SymUnitary at(double t) const;
  SymUnitary start() const { return at(0.0); }
  SymUnitary end() const { return at(1.0); }

  /// True when the path can be evaluated anywhere in [a, b].
  bool refinable(double a, double b) const;
  /// Parameters every sampler must visit: leg boundaries, sample
  /// parameters of sampled legs, and polyline knots.
  std::vector<double> natural_parameters() const;
  /// natural_parameters() plus `per_leg` uniform points in every analytic leg.
  std::vector<double> initial_grid(int per_leg) const;

  bool is_closed(double tol = kTolStruct) const;

 private:
  TripotentPath() = default;
  const Piece& piece_at(double t) const;

  int n_ = 0;
  std::vector<Piece> pieces_;
  std::optional<SymUnitary> base_hint_;
};

/// p followed by q, each run at double speed. Requires end(p) = start(q).
TripotentPath concatenate(const TripotentPath& p, const TripotentPath& q, double tol = kTolStruct);

/// t -> p(1 - t).
TripotentPath reverse(const TripotentPath& p);

/// Point of a single leg at local parameter s in [0, 1].
SymUnitary evaluate_leg(const PathLeg& leg, double s);

}  // namespace jbmaslov

#pragma once

#include <random>
#include <utility>

#include "jbmaslov/index_calculus.hpp"

namespace jbmaslov {

/// Random generators for property sweeps. All draws go through the caller's
/// engine, so a seed fixes every result.
using Rng = std::mt19937_64;

CMatrix random_symmetric(int n, Rng& rng, double scale = 1.0);
/// Unitary from the QR factor of a complex Gaussian matrix, phases fixed.
CMatrix random_unitary(int n, Rng& rng);
/// Orthogonal from the QR factor of a real Gaussian matrix, signs fixed.
RMatrix random_orthogonal(int n, Rng& rng);
/// Special orthogonal.
RMatrix random_rotation(int n, Rng& rng);
/// u u^T for a random unitary u.
SymUnitary random_sym_unitary(int n, Rng& rng);
std::vector<double> random_angles(int n, Rng& rng, double lo = -kPi, double hi = kPi);

/// u O diag(e^{i angles}) O^T u^T with e = u u^T and O random orthogonal:
/// the spectrum of the result relative to e is exactly `angles`.
SymUnitary random_relative(const SymUnitary& e, const std::vector<double>& angles, Rng& rng);

/// Frame [Re U; Im U] of a random unitary U.
RMatrix random_lagrangian_frame(int n, Rng& rng);
/// Frames of two Lagrangians meeting in a subspace of dimension k.
std::pair<RMatrix, RMatrix> random_lagrangian_pair(int n, int k, Rng& rng);

/// w x w^T with w = exp(i delta H), H Hermitian, scaled so that
/// ||y - x||_F < fraction * radius.
SymUnitary random_nearby(const SymUnitary& x, double radius, Rng& rng, double fraction = 0.9);

/// Frame-diagonal path with a random frame and random angle polylines on
/// `knots` interior knots, angles within [-span, span].
TripotentPath random_frame_diagonal_path(int n, Rng& rng, int knots = 2, double span = 2.0 * kPi);

/// A loop conjugated away from the diagonal: rotate into a random frame,
/// wind the angles by integer turns, rotate back.
TripotentPath random_loop(int n, Rng& rng, int max_turns = 2);

struct FormulaEConfig {
  LiftedPoint sigma;
  LiftedPoint tau;
  SymUnitary e;
};

/// Configurations mixing shared frames, rotated frames, degenerate angle
/// sets and deck twists, all with the identity as cover base.
FormulaEConfig random_formula_e_config(int n, Rng& rng);

/// g tau g^T with g = u R u^{-1}, R a random rotation and e = u u^T, so g
/// fixes e. The lift carries over unchanged since det g = 1.
LiftedPoint random_orbit_partner(const LiftedPoint& tau, const SymUnitary& e, Rng& rng);

}  // namespace jbmaslov

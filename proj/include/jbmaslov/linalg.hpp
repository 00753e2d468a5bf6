#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace jbmaslov {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Default tolerances. Every operation that depends on one takes it as an
// explicit argument; these are only the defaults.
inline constexpr double kTolStruct = 1e-9;   // Frobenius, membership in Sigma
inline constexpr double kTolCluster = 1e-8;  // arc distance, eigenvalue merging
inline constexpr double kTolRank = 1e-8;     // relative singular-value cut

/// Invalid input: dimension mismatch, broken structural invariant, violated
/// precondition. The CLI maps this to exit code 1.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical kernel did not deliver what it promises (non-diagonal Schur
/// form of a normal matrix, logarithm that does not exponentiate back...).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_same_dimension(const CMatrix& a, const CMatrix& b, const char* what);
void require_square(const CMatrix& a, const char* what);

/// Wraps an angle into (-pi, pi]; pi itself stays on the positive side.
double canonical_angle(double theta);

/// Shortest signed arc from a to b, in (-pi, pi].
double arc_difference(double a, double b);

/// Chordal distance |e^{ia} - e^{ib}|.
double chordal_distance(double a, double b);

double operator_norm(const CMatrix& m);
RVector singular_values(const CMatrix& m);

/// Number of singular values above rel_tol * max(sigma_max, 1).
int numerical_rank(const CMatrix& m, double rel_tol = kTolRank);
int numerical_rank(const RMatrix& m, double rel_tol = kTolRank);

/// Orthonormal eigen-decomposition of a normal matrix (unitary in practice),
/// obtained from the complex Schur form. The Schur vectors are eigenvectors
/// only when the triangular factor is diagonal; that is checked.
struct NormalEigen {
  CVector values;
  CMatrix vectors;  // unitary, columns match values
};
NormalEigen normal_eigen(const CMatrix& m, double offdiag_tol = 1e-8);

/// One group of eigenvalues of a unitary matrix sitting at (numerically) the
/// same point of the unit circle.
struct AngleCluster {
  double angle = 0.0;          // canonical, (-pi, pi]
  std::vector<int> members;    // indices into the eigenvalue list
};

/// Clusters angles on the circle: consecutive angles within tol (arc
/// distance) are merged, including across the branch cut. Cluster angles
/// within tol of 0 or pi are snapped onto those points exactly. The result is
/// sorted by angle.
std::vector<AngleCluster> cluster_angles(const std::vector<double>& angles, double tol);

/// Real orthonormal basis (columns) of a complex subspace that is stable
/// under entrywise conjugation, given a complex orthonormal basis of it.
RMatrix real_basis_of_conjugation_stable(const CMatrix& basis);

/// Thin QR with a positive diagonal in R; returns the Q factor.
RMatrix orthonormalize_positive_qr(const RMatrix& basis);

/// Principal angles between the column spans of two real orthonormal frames.
RVector principal_angles(const RMatrix& a, const RMatrix& b);

/// Real logarithm of a special orthogonal matrix: a skew-symmetric A with
/// exp(A) = r. Eigenvalue -1 blocks are split into rotation-by-pi planes.
RMatrix skew_log(const RMatrix& r, double tol = 1e-8);

/// exp(A) for real A.
RMatrix real_expm(const RMatrix& a);

}  // namespace jbmaslov

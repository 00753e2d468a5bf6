#pragma once

#include <vector>

#include "jbmaslov/lagrangian.hpp"
#include "jbmaslov/maslov.hpp"

namespace jbmaslov {

/// x = u O diag(e^{i angles}) O^T u^T with O real orthogonal and e = u u^T.
/// For e = I the transport u is the identity and this is the Takagi form.
/// Columns of O are grouped by cluster; `groups` lists the column ranges.
struct JordanDecomposition {
  RMatrix frame;
  std::vector<double> angles;           // (-pi, pi], one per column
  CMatrix transport;                    // u
  std::vector<std::vector<int>> groups; // column indices per cluster

  /// c_j = u O P_j O^T u^T, one per cluster; {c_j, e, c_k} = delta_jk c_j.
  std::vector<CMatrix> idempotents() const;
  CMatrix reconstruct() const;
};

JordanDecomposition jordan_decompose(const SymUnitary& x, const SymUnitary& e,
                                     double tol_cluster = kTolCluster);

/// A point of the universal cover: x with a real lift of arg det(x conj(base)).
class LiftedPoint {
 public:
  /// Validates e^{i lift} = det(x conj(base)) within tol.
  LiftedPoint(SymUnitary x, double lift, SymUnitary base, double tol = 1e-8);
  /// Base defaults to the identity.
  LiftedPoint(SymUnitary x, double lift, double tol = 1e-8);

  /// The lift with principal argument in (-pi, pi].
  static LiftedPoint principal(SymUnitary x, SymUnitary base);
  static LiftedPoint principal(SymUnitary x);

  const SymUnitary& point() const { return x_; }
  double lift() const { return lift_; }
  const SymUnitary& base() const { return base_; }
  int dimension() const { return x_.dimension(); }

  /// Deck transformation: lift shifted by 2 pi k.
  LiftedPoint deck(int k) const;
  /// Same point of the cover, lift re-anchored to another base unit.
  LiftedPoint rebased(const SymUnitary& new_base) const;

 private:
  SymUnitary x_;
  double lift_;
  SymUnitary base_;
};

/// Final lift after carrying lift0 continuously along the path.
double lift_path(const TripotentPath& path, const SymUnitary& e_ref, double lift0,
                 const IndexOptions& options = {});

enum class ConnectingRoute {
  through_identity,  // shrink sigma's angles to 0, grow tau's angles from 0
  rotate_frame,      // rotate sigma's frame onto tau's, then move the angles
};

/// The canonical path from sigma to tau whose lift ends at tau's lift:
/// the chosen route followed by k full turns of one eigenvalue of tau.
TripotentPath connecting_path(const LiftedPoint& sigma, const LiftedPoint& tau,
                              ConnectingRoute route = ConnectingRoute::through_identity,
                              double tol_cluster = kTolCluster);

int mas_two_points(const LiftedPoint& sigma, const LiftedPoint& tau, const SymUnitary& e,
                   ConnectingRoute route = ConnectingRoute::through_identity,
                   const IndexOptions& options = {});

/// Signature of the form omega(v1,v2) + omega(v2,v3) + omega(v3,v1) on
/// l1 + l2 + l3. Eigenvalues below tol * max(|eig|_max, 1) count as zero.
int kashiwara_index(const LagrangianFrame& l1, const LagrangianFrame& l2, const LagrangianFrame& l3,
                    double tol = 1e-8);

/// m = 2 Mas(sigma, tau, sigma) - mu(tau, sigma) + n.
int souriau_m(const LiftedPoint& sigma, const LiftedPoint& tau, const IndexOptions& options = {});

struct FormulaECheck {
  int lhs = 0;            // Mas(sigma, tau, e)
  int m = 0;
  int iota = 0;           // iota(e, tau, sigma)
  int mu_tau = 0;         // mu(tau, e)
  int mu_sigma = 0;       // mu(sigma, e)
  int rhs_numerator = 0;  // m + iota + mu_tau - mu_sigma
  bool rhs_integral = false;
  bool equal = false;

  double rhs() const { return 0.5 * rhs_numerator; }
};

FormulaECheck check_formula_E(const LiftedPoint& sigma, const LiftedPoint& tau, const SymUnitary& e,
                              const IndexOptions& options = {});

/// The two sides differ by mu(tau', e) - mu(tau, e) in general. `holds`
/// is therefore expected when tau and tau' meet e in the same dimension,
/// e.g. tau' in the orbit of tau under automorphisms fixing e. The cocycle
/// form without the mu terms holds for every triple.
struct LerayCheck {
  int lhs = 0;  // m(tau, tau') + iota(e, tau', tau) + mu(tau', e) - mu(tau, e)
  int rhs = 0;  // m(e, tau') - m(e, tau)
  int mu_tau = 0;
  int mu_tau_prime = 0;
  bool holds = false;
  bool cocycle_holds = false;  // m(tau, tau') + iota(e, tau', tau) = rhs
};

LerayCheck check_leray(const LiftedPoint& tau, const LiftedPoint& tau_prime, const LiftedPoint& e,
                       const IndexOptions& options = {});

}  // namespace jbmaslov

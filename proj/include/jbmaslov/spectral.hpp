#pragma once

#include <span>
#include <vector>

#include "jbmaslov/jordan.hpp"

namespace jbmaslov {

struct SpectralCluster {
  double angle = 0.0;    // (-pi, pi]
  int multiplicity = 0;  // >= 1
};

/// Spectrum of x relative to the unit e: the eigenvalues of the unitary
/// matrix x conj(e), clustered on the circle. Clusters are sorted by angle.
class RelativeSpectrum {
 public:
  RelativeSpectrum(int n, std::vector<SpectralCluster> clusters)
      : n_(n), clusters_(std::move(clusters)) {}

  int dimension() const { return n_; }
  const std::vector<SpectralCluster>& clusters() const { return clusters_; }

  /// Multiplicity of the cluster within tol of theta, 0 if none.
  int multiplicity_at(double theta, double tol = kTolCluster) const;
  /// Spectrum of conj(w): every angle negated.
  RelativeSpectrum conjugated() const;
  /// Same clusters (angles within tol, equal multiplicities).
  bool approx_equal(const RelativeSpectrum& other, double tol = kTolCluster) const;

 private:
  int n_;
  std::vector<SpectralCluster> clusters_;
};

/// Full decomposition behind a relative spectrum: the eigenpairs of
/// w = x conj(e) and the clustering of their angles. Kept around by callers
/// that need projections as well as multiplicities.
struct RelativeEigen {
  CMatrix w;                          // x conj(e)
  NormalEigen eigen;                  // orthonormal eigenvectors of w
  std::vector<double> angles;         // arg of each eigenvalue
  std::vector<AngleCluster> clusters;

  RelativeSpectrum spectrum() const;
  /// Orthogonal projection onto the eigenspace of one cluster.
  CMatrix cluster_projection(std::size_t cluster) const;
  /// Chordal distance from the points e^{+-i eps} to the spectrum.
  double distance_to(double eps) const;
};

RelativeEigen relative_eigen(const SymUnitary& x, const SymUnitary& e, double tol_cluster = kTolCluster);

RelativeSpectrum relative_spectrum(const SymUnitary& x, const SymUnitary& e,
                                   double tol_cluster = kTolCluster);

/// Transversality index of (x, e^{i theta} e): the multiplicity of theta in
/// the relative spectrum, i.e. dim ker(e^{i theta} e - x).
int mu(const SymUnitary& x, const SymUnitary& e, double theta, double tol_cluster = kTolCluster);

/// True iff the spectrum of (e, x) is the conjugate of the spectrum of (x, e).
bool conjugate_spectrum_check(const SymUnitary& x, const SymUnitary& e,
                              double tol_cluster = kTolCluster);

/// Idempotent of the Jordan algebra with unit e that selects a spectral
/// subset of the relative spectrum: p = (sum of eigenprojections) e.
struct SpectralIdempotent {
  CMatrix p;
  std::vector<double> arc;  // cluster angles selected
};

/// arc lists cluster angles; each must match a cluster within tol_cluster.
SpectralIdempotent spectral_idempotent(const SymUnitary& x, const SymUnitary& e,
                                       std::span<const double> arc,
                                       double tol_cluster = kTolCluster);

/// Spectrum of P(p)x relative to p inside the Peirce space P(p)E, computed
/// on the range of the idempotent. Should reproduce the selected arc.
RelativeSpectrum restricted_spectrum(const SpectralIdempotent& idem, const SymUnitary& x,
                                     const SymUnitary& e, double tol_cluster = kTolCluster);

/// Radius rho such that every y in Sigma with ||(y - x) conj(e)||_F < rho
/// keeps the transversality index of (x, e) inside the arc |theta| <= eps and
/// puts no eigenvalue at e^{+-i eps}. Requires that no cluster lies in
/// 0 < |theta| <= eps.
double perturbation_budget(const SymUnitary& x, const SymUnitary& e, double eps,
                           double tol_cluster = kTolCluster);

}  // namespace jbmaslov

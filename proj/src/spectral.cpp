#include "jbmaslov/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace jbmaslov {

int RelativeSpectrum::multiplicity_at(double theta, double tol) const {
  const double t = canonical_angle(theta);
  for (const auto& c : clusters_) {
    if (std::abs(arc_difference(c.angle, t)) <= tol) return c.multiplicity;
  }
  return 0;
}

RelativeSpectrum RelativeSpectrum::conjugated() const {
  std::vector<SpectralCluster> out;
  out.reserve(clusters_.size());
  for (const auto& c : clusters_) out.push_back({canonical_angle(-c.angle), c.multiplicity});
  std::sort(out.begin(), out.end(),
            [](const SpectralCluster& a, const SpectralCluster& b) { return a.angle < b.angle; });
  return RelativeSpectrum(n_, std::move(out));
}

bool RelativeSpectrum::approx_equal(const RelativeSpectrum& other, double tol) const {
  if (n_ != other.n_ || clusters_.size() != other.clusters_.size()) return false;
  for (const auto& c : clusters_) {
    if (other.multiplicity_at(c.angle, tol) != c.multiplicity) return false;
  }
  return true;
}

RelativeSpectrum RelativeEigen::spectrum() const {
  std::vector<SpectralCluster> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back({c.angle, static_cast<int>(c.members.size())});
  return RelativeSpectrum(static_cast<int>(w.rows()), std::move(out));
}

CMatrix RelativeEigen::cluster_projection(std::size_t cluster) const {
  const auto& members = clusters.at(cluster).members;
  CMatrix v(w.rows(), static_cast<Eigen::Index>(members.size()));
  for (std::size_t k = 0; k < members.size(); ++k) v.col(k) = eigen.vectors.col(members[k]);
  return v * v.adjoint();
}

double RelativeEigen::distance_to(double eps) const {
  double d = std::numeric_limits<double>::infinity();
  for (double a : angles) {
    d = std::min({d, chordal_distance(a, eps), chordal_distance(a, -eps)});
  }
  return d;
}

RelativeEigen relative_eigen(const SymUnitary& x, const SymUnitary& e, double tol_cluster) {
  require_same_dimension(x.matrix(), e.matrix(), "relative_spectrum");
  RelativeEigen r;
  r.w = x.matrix() * e.matrix().conjugate();
  r.eigen = normal_eigen(r.w);
  const auto n = r.w.rows();
  r.angles.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lambda = r.eigen.values[i];
    if (std::abs(std::abs(lambda) - 1.0) > 1e-8) {
      std::ostringstream os;
      os << "relative_spectrum: eigenvalue " << lambda << " is off the unit circle";
      throw NumericalFailure(os.str());
    }
    r.angles[i] = std::arg(lambda);
  }
  r.clusters = cluster_angles(r.angles, tol_cluster);
  return r;
}

RelativeSpectrum relative_spectrum(const SymUnitary& x, const SymUnitary& e, double tol_cluster) {
  return relative_eigen(x, e, tol_cluster).spectrum();
}

int mu(const SymUnitary& x, const SymUnitary& e, double theta, double tol_cluster) {
  return relative_spectrum(x, e, tol_cluster).multiplicity_at(theta, tol_cluster);
}

bool conjugate_spectrum_check(const SymUnitary& x, const SymUnitary& e, double tol_cluster) {
  const RelativeSpectrum forward = relative_spectrum(x, e, tol_cluster);
  const RelativeSpectrum backward = relative_spectrum(e, x, tol_cluster);
  return backward.approx_equal(forward.conjugated(), tol_cluster);
}

SpectralIdempotent spectral_idempotent(const SymUnitary& x, const SymUnitary& e,
                                       std::span<const double> arc, double tol_cluster) {
  const RelativeEigen rel = relative_eigen(x, e, tol_cluster);
  const auto n = rel.w.rows();
  std::vector<bool> chosen(rel.clusters.size(), false);
  for (double theta : arc) {
    bool found = false;
    for (std::size_t c = 0; c < rel.clusters.size(); ++c) {
      if (std::abs(arc_difference(rel.clusters[c].angle, theta)) <= tol_cluster) {
        chosen[c] = true;
        found = true;
      }
    }
    if (!found) {
      std::ostringstream os;
      os << "spectral_idempotent: angle " << theta
         << " is not a cluster of the relative spectrum (arc is not spectral)";
      throw InvalidArgument(os.str());
    }
  }
  SpectralIdempotent out;
  CMatrix proj = CMatrix::Zero(n, n);
  for (std::size_t c = 0; c < rel.clusters.size(); ++c) {
    if (!chosen[c]) continue;
    proj += rel.cluster_projection(c);
    out.arc.push_back(rel.clusters[c].angle);
  }
  CMatrix p = proj * e.matrix();
  out.p = 0.5 * (p + p.transpose());
  return out;
}

RelativeSpectrum restricted_spectrum(const SpectralIdempotent& idem, const SymUnitary& x,
                                     const SymUnitary& e, double tol_cluster) {
  const CMatrix& p = idem.p;
  const CMatrix& em = e.matrix();
  const CMatrix eb = em.conjugate();
  // P(p)x = Q(p)Q(e)x = p conj(e conj(x) e) p.
  const CMatrix y = p * eb * x.matrix() * eb * p;
  // Range of the idempotent: p conj(e) is the orthogonal projection onto it.
  const CMatrix proj = p * eb;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (proj + proj.adjoint()));
  std::vector<Eigen::Index> range_cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()[i] > 0.5) range_cols.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(range_cols.size());
  if (m == 0) return RelativeSpectrum(0, {});
  CMatrix q(p.rows(), m);
  for (Eigen::Index k = 0; k < m; ++k) q.col(k) = es.eigenvectors().col(range_cols[k]);
  const CMatrix block = q.adjoint() * (y * p.conjugate()) * q;
  const NormalEigen eig = normal_eigen(block);
  std::vector<double> angles(m);
  for (Eigen::Index i = 0; i < m; ++i) angles[i] = std::arg(eig.values[i]);
  std::vector<SpectralCluster> clusters;
  for (const auto& c : cluster_angles(angles, tol_cluster)) {
    clusters.push_back({c.angle, static_cast<int>(c.members.size())});
  }
  return RelativeSpectrum(static_cast<int>(m), std::move(clusters));
}

double perturbation_budget(const SymUnitary& x, const SymUnitary& e, double eps,
                           double tol_cluster) {
  if (!(eps > 0.0 && eps < kPi)) {
    throw InvalidArgument("perturbation_budget: eps must lie in (0, pi)");
  }
  const RelativeEigen rel = relative_eigen(x, e, tol_cluster);
  for (const auto& c : rel.clusters) {
    const double a = std::abs(c.angle);
    if (a > tol_cluster && a <= eps + tol_cluster) {
      std::ostringstream os;
      os << "perturbation_budget: cluster at angle " << c.angle << " lies in 0 < |theta| <= " << eps;
      throw InvalidArgument(os.str());
    }
  }
  return rel.distance_to(eps);
}

}  // namespace jbmaslov

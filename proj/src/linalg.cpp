#include "jbmaslov/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace jbmaslov {

void require_same_dimension(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols() << ")";
    throw InvalidArgument(os.str());
  }
}

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InvalidArgument(std::string(what) + ": expected a non-empty square matrix");
  }
}

double canonical_angle(double theta) {
  double t = std::remainder(theta, kTwoPi);  // [-pi, pi]
  if (t <= -kPi) t += kTwoPi;
  return t;
}

double arc_difference(double a, double b) { return canonical_angle(b - a); }

double chordal_distance(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (b - a))); }

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // Largest eigenvalue of the Gram matrix, reusing the Hermitian kernel.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

RVector singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

namespace {
template <class Values>
int rank_from_values(const Values& s, double rel_tol) {
  if (s.size() == 0) return 0;
  const double cut = rel_tol * std::max(s.maxCoeff(), 1.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > cut) ++r;
  }
  return r;
}
}  // namespace

int numerical_rank(const CMatrix& m, double rel_tol) {
  return rank_from_values(singular_values(m), rel_tol);
}

int numerical_rank(const RMatrix& m, double rel_tol) {
  Eigen::JacobiSVD<RMatrix> svd(m);
  return rank_from_values(svd.singularValues(), rel_tol);
}

NormalEigen normal_eigen(const CMatrix& m, double offdiag_tol) {
  require_square(m, "normal_eigen");
  Eigen::ComplexSchur<CMatrix> schur(m);
  if (schur.info() != Eigen::Success) {
    throw NumericalFailure("normal_eigen: Schur iteration did not converge");
  }
  const CMatrix& t = schur.matrixT();
  double off = 0.0;
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) off += std::norm(t(i, j));
  }
  off = std::sqrt(off);
  const double scale = std::max(1.0, t.norm());
  if (off > offdiag_tol * scale) {
    std::ostringstream os;
    os << "normal_eigen: Schur form is not diagonal (off-diagonal mass " << off
       << "); input is not normal";
    throw NumericalFailure(os.str());
  }
  return NormalEigen{t.diagonal(), schur.matrixU()};
}

std::vector<AngleCluster> cluster_angles(const std::vector<double>& angles, double tol) {
  const int count = static_cast<int>(angles.size());
  if (count == 0) return {};
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> a(count);
  for (int i = 0; i < count; ++i) a[i] = canonical_angle(angles[i]);
  std::sort(order.begin(), order.end(), [&](int l, int r) { return a[l] < a[r]; });

  // gap[i] is the arc from order[i] to order[i+1] (cyclically).
  std::vector<double> gap(count);
  for (int i = 0; i + 1 < count; ++i) gap[i] = a[order[i + 1]] - a[order[i]];
  gap[count - 1] = a[order[0]] + kTwoPi - a[order[count - 1]];

  const int widest = static_cast<int>(std::max_element(gap.begin(), gap.end()) - gap.begin());
  std::vector<AngleCluster> out;
  if (gap[widest] <= tol) {
    // Everything chains together around the circle; only possible for
    // absurdly large tol or count.
    AngleCluster c;
    c.members = order;
    c.angle = a[order[0]];
    out.push_back(std::move(c));
    return out;
  }

  AngleCluster current;
  for (int step = 1; step <= count; ++step) {
    const int pos = (widest + step) % count;
    current.members.push_back(order[pos]);
    if (gap[pos] > tol) {
      out.push_back(std::move(current));
      current = AngleCluster{};
    }
  }

  for (auto& c : out) {
    // Circular mean relative to the first member keeps the branch cut out.
    const double ref = a[c.members.front()];
    double acc = 0.0;
    for (int m : c.members) acc += arc_difference(ref, a[m]);
    double theta = canonical_angle(ref + acc / static_cast<double>(c.members.size()));
    if (std::abs(theta) <= tol) theta = 0.0;
    if (kPi - std::abs(theta) <= tol) theta = kPi;
    c.angle = theta;
  }
  std::sort(out.begin(), out.end(),
            [](const AngleCluster& l, const AngleCluster& r) { return l.angle < r.angle; });
  return out;
}

RMatrix real_basis_of_conjugation_stable(const CMatrix& basis) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index m = basis.cols();
  if (m == 0) return RMatrix(n, 0);
  RMatrix stacked(n, 2 * m);
  stacked << basis.real(), basis.imag();
  Eigen::JacobiSVD<RMatrix> svd(stacked, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  // For an exactly conjugation-stable span the m leading values are all 1 and
  // the rest vanish; anything else means the input was not stable.
  if (s[m - 1] < 0.5 || (s.size() > m && s[m] > 0.5)) {
    throw NumericalFailure("real_basis_of_conjugation_stable: span is not conjugation-stable");
  }
  return svd.matrixU().leftCols(m);
}

RMatrix orthonormalize_positive_qr(const RMatrix& basis) {
  Eigen::HouseholderQR<RMatrix> qr(basis);
  const Eigen::Index k = basis.cols();
  RMatrix q = qr.householderQ() * RMatrix::Identity(basis.rows(), k);
  const RMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

RVector principal_angles(const RMatrix& a, const RMatrix& b) {
  // Cosines lose half the digits near zero angle, so small angles are read
  // off the sines (singular values of the part of b orthogonal to a).
  const RMatrix ab = a.transpose() * b;
  const RVector c = Eigen::JacobiSVD<RMatrix>(ab).singularValues();  // descending
  const RVector s = Eigen::JacobiSVD<RMatrix>(RMatrix(b - a * ab)).singularValues();
  const Eigen::Index m = c.size();
  RVector out(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = s.size() - 1 - i;  // sines ascending pair with cosines descending
    const double cosine = std::clamp(c[i], -1.0, 1.0);
    out[i] = (j >= 0 && cosine > 0.7) ? std::asin(std::clamp(s[j], 0.0, 1.0)) : std::acos(cosine);
  }
  return out;
}

RMatrix skew_log(const RMatrix& r, double tol) {
  const Eigen::Index n = r.rows();
  if (r.cols() != n) throw InvalidArgument("skew_log: expected a square matrix");
  if ((r.transpose() * r - RMatrix::Identity(n, n)).norm() > 1e-8) {
    throw InvalidArgument("skew_log: matrix is not orthogonal");
  }
  if (r.determinant() < 0.0) throw InvalidArgument("skew_log: determinant is -1");

  const NormalEigen eig = normal_eigen(r.cast<Complex>());
  std::vector<double> angles(n);
  for (Eigen::Index i = 0; i < n; ++i) angles[i] = std::arg(eig.values[i]);
  CMatrix log_c = CMatrix::Zero(n, n);
  RMatrix log_r = RMatrix::Zero(n, n);
  for (const auto& c : cluster_angles(angles, tol)) {
    CMatrix v(n, static_cast<Eigen::Index>(c.members.size()));
    for (std::size_t k = 0; k < c.members.size(); ++k) v.col(k) = eig.vectors.col(c.members[k]);
    if (c.angle == kPi) {
      const RMatrix q = real_basis_of_conjugation_stable(v);
      if (q.cols() % 2 != 0) throw NumericalFailure("skew_log: odd -1 eigenspace");
      for (Eigen::Index k = 0; k + 1 < q.cols(); k += 2) {
        log_r += kPi * (q.col(k + 1) * q.col(k).transpose() - q.col(k) * q.col(k + 1).transpose());
      }
    } else if (c.angle != 0.0) {
      log_c += Complex(0.0, c.angle) * v * v.adjoint();
    }
  }
  RMatrix a = log_r + log_c.real();
  a = 0.5 * (a - a.transpose()).eval();
  if ((real_expm(a) - r).norm() > 1e-7) {
    throw NumericalFailure("skew_log: logarithm does not exponentiate back");
  }
  return a;
}

RMatrix real_expm(const RMatrix& a) { return a.exp(); }

}  // namespace jbmaslov

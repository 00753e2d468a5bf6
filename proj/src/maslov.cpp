#include "jbmaslov/maslov.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

namespace jbmaslov {

namespace {

struct Sample {
  double t = 0.0;
  SymUnitary x;
  RelativeEigen rel;
  int depth = 0;
  // x conj(e) halfway to the next sample, when the path can be evaluated there.
  std::optional<CMatrix> mid_w;
};

void set_midpoint(const TripotentPath& path, const SymUnitary& e, std::vector<Sample>& s, std::size_t k) {
  s[k].mid_w.reset();
  if (k + 1 >= s.size() || !path.refinable(s[k].t, s[k + 1].t)) return;
  s[k].mid_w = path.at(0.5 * (s[k].t + s[k + 1].t)).matrix() * e.matrix().conjugate();
}

Sample make_sample(const TripotentPath& path, const SymUnitary& e, double t, int depth,
                   double tol_cluster) {
  SymUnitary x = path.at(t);
  RelativeEigen rel = relative_eigen(x, e, tol_cluster);
  return Sample{t, std::move(x), std::move(rel), depth, std::nullopt};
}

std::vector<Sample> initial_samples(const TripotentPath& path, const SymUnitary& e,
                                    const IndexOptions& opt) {
  if (path.dimension() != e.dimension()) {
    throw InvalidArgument("path and base unit differ in dimension");
  }
  std::vector<Sample> out;
  for (double t : path.initial_grid(opt.initial_samples)) {
    out.push_back(make_sample(path, e, t, 0, opt.tol_cluster));
  }
  for (std::size_t k = 0; k + 1 < out.size(); ++k) set_midpoint(path, e, out, k);
  return out;
}

int count_on_arc(const RelativeEigen& rel, double eps, double tol) {
  int k = 0;
  for (const auto& c : rel.clusters) {
    if (std::abs(c.angle - eps) <= tol) {
      std::ostringstream os;
      os << "k_count: cluster at angle " << c.angle << " sits on eps = " << eps
         << "; eps is not admissible";
      throw InvalidArgument(os.str());
    }
    if (c.angle >= 0.0 && c.angle <= eps) k += static_cast<int>(c.members.size());
  }
  return k;
}

class EpsilonChooser {
 public:
  EpsilonChooser(const IndexOptions& opt) : opt_(opt) {}

  // Admissible eps for samples [first, last], or nullopt when the |theta|
  // values leave no gap wider than 4 tol_cluster.
  std::optional<double> choose(const std::vector<Sample>& s, std::size_t first,
                               std::size_t last) const {
    std::vector<double> a{0.0, kPi};
    for (std::size_t k = first; k <= last; ++k) {
      for (double theta : s[k].rel.angles) a.push_back(std::abs(theta));
    }
    std::sort(a.begin(), a.end());
    double lo = 0.0;
    double width = -1.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
      if (a[k] - a[k - 1] > width) {
        width = a[k] - a[k - 1];
        lo = a[k - 1];
      }
    }
    if (width <= 4.0 * opt_.tol_cluster) return std::nullopt;
    if (opt_.epsilon_rule == EpsilonRule::midpoint) return lo + 0.5 * width;
    std::mt19937_64 rng(opt_.seed * 0x9E3779B97F4A7C15ULL + first * 1315423911ULL + last);
    std::uniform_real_distribution<double> u(0.25, 0.75);
    return lo + u(rng) * width;
  }

 private:
  const IndexOptions& opt_;
};

// On analytic legs the midpoint must sit in the same ball, which catches
// steps that alias a fast turn onto a short chord.
bool pair_certified(const Sample& a, const Sample& b, double eps) {
  const double radius = a.rel.distance_to(eps);
  if (a.mid_w && (*a.mid_w - a.rel.w).norm() >= radius) return false;
  return (b.rel.w - a.rel.w).norm() < radius;
}

bool segment_certified(const std::vector<Sample>& s, std::size_t first, std::size_t last,
                       double eps) {
  for (std::size_t k = first; k < last; ++k) {
    if (!pair_certified(s[k], s[k + 1], eps)) return false;
  }
  return true;
}

}  // namespace

int k_count(const SymUnitary& x, const SymUnitary& e, double eps, double tol_cluster) {
  if (!(eps > 0.0 && eps < kPi)) throw InvalidArgument("k_count: eps must lie in (0, pi)");
  return count_on_arc(relative_eigen(x, e, tol_cluster), eps, tol_cluster);
}

IndexReport choose_admissible_subdivision(const TripotentPath& path, const SymUnitary& e,
                                          const IndexOptions& opt) {
  std::vector<Sample> s = initial_samples(path, e, opt);
  const EpsilonChooser chooser(opt);
  IndexReport report;
  report.certified = true;

  std::size_t i = 0;
  while (i + 1 < s.size()) {
    std::size_t j = i;
    std::optional<double> eps;
    bool certified = true;
    while (j + 1 < s.size()) {
      const std::optional<double> candidate = chooser.choose(s, i, j + 1);
      if (candidate && segment_certified(s, i, j + 1, *candidate)) {
        ++j;
        eps = candidate;
        continue;
      }
      if (j > i) break;
      // The single step from i to i+1 cannot be certified at any eps.
      const int depth = std::max(s[i].depth, s[i + 1].depth);
      if (path.refinable(s[i].t, s[i + 1].t) && depth < opt.max_refine) {
        const double mid = 0.5 * (s[i].t + s[i + 1].t);
        s.insert(s.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                 make_sample(path, e, mid, depth + 1, opt.tol_cluster));
        set_midpoint(path, e, s, i);
        set_midpoint(path, e, s, i + 1);
        ++report.refinements;
        continue;
      }
      if (!candidate) {
        std::ostringstream os;
        os << "no admissible eps between t = " << s[i].t << " and t = " << s[i + 1].t;
        throw NumericalFailure(os.str());
      }
      j = i + 1;
      eps = candidate;
      certified = false;
      break;
    }

    SegmentReport seg;
    seg.t_start = s[i].t;
    seg.t_end = s[j].t;
    seg.epsilon = *eps;
    seg.first_sample = i;
    seg.last_sample = j;
    seg.certified = certified;
    seg.k_start = count_on_arc(s[i].rel, *eps, opt.tol_cluster);
    seg.k_end = count_on_arc(s[j].rel, *eps, opt.tol_cluster);
    report.value += seg.k_end - seg.k_start;
    report.certified = report.certified && certified;
    report.segments.push_back(seg);
    i = j;
  }

  report.params.reserve(s.size());
  report.samples.reserve(s.size());
  for (auto& smp : s) {
    report.params.push_back(smp.t);
    report.samples.push_back(std::move(smp.x));
  }
  return report;
}

IndexReport maslov_index(const TripotentPath& path, const SymUnitary& e, const IndexOptions& opt) {
  return choose_admissible_subdivision(path, e, opt);
}

int maslov_index_with_subdivision(const std::vector<SymUnitary>& samples, const SymUnitary& e,
                                  const std::vector<std::size_t>& breakpoints,
                                  const std::vector<double>& epsilons, double tol_cluster) {
  if (breakpoints.size() < 2 || breakpoints.front() != 0 ||
      breakpoints.back() + 1 != samples.size() || epsilons.size() + 1 != breakpoints.size()) {
    throw InvalidArgument("maslov_index_with_subdivision: malformed subdivision");
  }
  std::vector<RelativeEigen> rel;
  rel.reserve(samples.size());
  for (const auto& x : samples) rel.push_back(relative_eigen(x, e, tol_cluster));

  int value = 0;
  for (std::size_t seg = 0; seg < epsilons.size(); ++seg) {
    const double eps = epsilons[seg];
    if (!(eps > 0.0 && eps < kPi) || !(breakpoints[seg] < breakpoints[seg + 1])) {
      throw InvalidArgument("maslov_index_with_subdivision: bad segment");
    }
    for (std::size_t k = breakpoints[seg]; k <= breakpoints[seg + 1]; ++k) {
      if (rel[k].distance_to(eps) <= 2.0 * tol_cluster) {
        throw InvalidArgument("maslov_index_with_subdivision: eps is not admissible");
      }
    }
    value += count_on_arc(rel[breakpoints[seg + 1]], eps, tol_cluster) -
             count_on_arc(rel[breakpoints[seg]], eps, tol_cluster);
  }
  return value;
}

double det_argument_change(const TripotentPath& path, const SymUnitary& e, const IndexOptions& opt) {
  if (path.dimension() != e.dimension()) {
    throw InvalidArgument("path and base unit differ in dimension");
  }
  const CMatrix eb = e.matrix().conjugate();
  struct Point {
    double t;
    Complex det;
    int depth;
  };
  auto det_at = [&](double t) {
    const Complex d = (path.at(t).matrix() * eb).determinant();
    return d / std::abs(d);
  };
  std::vector<Point> pts;
  for (double t : path.initial_grid(opt.initial_samples)) pts.push_back({t, det_at(t), 0});

  double total = 0.0;
  std::size_t k = 0;
  while (k + 1 < pts.size()) {
    const double step = std::arg(pts[k + 1].det / pts[k].det);
    if (std::abs(step) < 0.5 * kPi) {
      total += step;
      ++k;
      continue;
    }
    const int depth = std::max(pts[k].depth, pts[k + 1].depth);
    if (!path.refinable(pts[k].t, pts[k + 1].t) || depth >= opt.max_refine) {
      std::ostringstream os;
      os << "det argument jumps by " << step << " between t = " << pts[k].t << " and t = "
         << pts[k + 1].t << "; samples too coarse";
      throw InvalidArgument(os.str());
    }
    const double mid = 0.5 * (pts[k].t + pts[k + 1].t);
    pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(k) + 1, Point{mid, det_at(mid), depth + 1});
  }
  return total;
}

int winding_number_det(const TripotentPath& path, const SymUnitary& e, const IndexOptions& opt) {
  if (!path.is_closed(opt.tol_struct)) throw InvalidArgument("winding_number_det: path is not closed");
  const double turns = det_argument_change(path, e, opt) / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) {
    throw NumericalFailure("winding_number_det: non-integral winding on a closed path");
  }
  return static_cast<int>(rounded);
}

}  // namespace jbmaslov

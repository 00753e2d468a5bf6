#include "jbmaslov/path.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jbmaslov {

namespace {

constexpr double kParamTol = 1e-9;

void check_parameters(const std::vector<double>& params, const char* what) {
  if (params.size() < 2) {
    throw InvalidArgument(std::string(what) + ": need at least two parameters");
  }
  if (std::abs(params.front()) > kParamTol || std::abs(params.back() - 1.0) > kParamTol) {
    throw InvalidArgument(std::string(what) + ": parameters must run from 0 to 1");
  }
  for (std::size_t i = 1; i < params.size(); ++i) {
    if (!(params[i] > params[i - 1])) {
      throw InvalidArgument(std::string(what) + ": parameters must be strictly increasing");
    }
  }
}

int leg_dimension(const PathLeg& leg) {
  return std::visit(
      [](const auto& l) -> int {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SampledLeg>) {
          return l.points.front().dimension();
        } else if constexpr (std::is_same_v<T, FrameDiagonalLeg>) {
          return static_cast<int>(l.frame.rows());
        } else {
          return l.start.dimension();
        }
      },
      leg);
}

bool leg_is_analytic(const PathLeg& leg) { return !std::holds_alternative<SampledLeg>(leg); }

double local_parameter(const TripotentPath::Piece& p, double t) {
  double s = (t - p.t0) / (p.t1 - p.t0);
  s = std::clamp(s, 0.0, 1.0);
  return p.reversed ? 1.0 - s : s;
}

double global_parameter(const TripotentPath::Piece& p, double s) {
  const double local = p.reversed ? 1.0 - s : s;
  return p.t0 + local * (p.t1 - p.t0);
}

void append_unique_sorted(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  out.reserve(v.size());
  for (double t : v) {
    if (out.empty() || t - out.back() > 1e-12) out.push_back(t);
  }
  out.front() = 0.0;
  out.back() = 1.0;
  v = std::move(out);
}

}  // namespace

SymUnitary evaluate_leg(const PathLeg& leg, double s) {
  return std::visit(
      [s](const auto& l) -> SymUnitary {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SampledLeg>) {
          const auto it = std::lower_bound(l.params.begin(), l.params.end(), s - kParamTol);
          if (it == l.params.end() || std::abs(*it - s) > kParamTol) {
            std::ostringstream os;
            os << "sampled path has no sample at parameter " << s;
            throw InvalidArgument(os.str());
          }
          return l.points[static_cast<std::size_t>(it - l.params.begin())];
        } else if constexpr (std::is_same_v<T, FrameDiagonalLeg>) {
          const auto& k = l.knots;
          std::size_t seg = static_cast<std::size_t>(
              std::upper_bound(k.begin(), k.end(), s) - k.begin());
          seg = std::clamp<std::size_t>(seg, 1, k.size() - 1);
          const double w = (s - k[seg - 1]) / (k[seg] - k[seg - 1]);
          const RVector phi = (1.0 - w) * l.angles.row(seg - 1).transpose() +
                              w * l.angles.row(seg).transpose();
          return SymUnitary::frame_diagonal(l.frame, std::span<const double>(phi.data(), phi.size()),
                                            1e-8);
        } else {
          const RMatrix rot = real_expm(s * l.generator);
          const CMatrix r = rot.cast<Complex>();
          return SymUnitary::from_matrix(r * l.start.matrix() * r.transpose(), 1e-8);
        }
      },
      leg);
}

TripotentPath TripotentPath::sampled(std::vector<double> params, std::vector<SymUnitary> points) {
  check_parameters(params, "sampled path");
  if (params.size() != points.size()) {
    throw InvalidArgument("sampled path: parameter and sample counts differ");
  }
  const int n = points.front().dimension();
  for (const auto& p : points) {
    if (p.dimension() != n) throw InvalidArgument("sampled path: samples differ in dimension");
  }
  params.front() = 0.0;
  params.back() = 1.0;
  TripotentPath path;
  path.n_ = n;
  path.pieces_.push_back(Piece{SampledLeg{std::move(params), std::move(points)}, 0.0, 1.0, false});
  return path;
}

TripotentPath TripotentPath::frame_diagonal(RMatrix frame, std::vector<double> knots,
                                            RMatrix angles, double tol) {
  check_parameters(knots, "frame_diagonal path");
  const auto n = frame.rows();
  if (n == 0 || frame.cols() != n) throw InvalidArgument("frame_diagonal path: frame must be square");
  if ((frame.transpose() * frame - RMatrix::Identity(n, n)).norm() > tol) {
    throw InvalidArgument("frame_diagonal path: frame is not orthogonal");
  }
  if (angles.rows() != static_cast<Eigen::Index>(knots.size()) || angles.cols() != n) {
    throw InvalidArgument("frame_diagonal path: angles must have one row per knot and n columns");
  }
  if (!angles.allFinite()) throw InvalidArgument("frame_diagonal path: non-finite angle");
  knots.front() = 0.0;
  knots.back() = 1.0;
  TripotentPath path;
  path.n_ = static_cast<int>(n);
  path.pieces_.push_back(
      Piece{FrameDiagonalLeg{std::move(frame), std::move(knots), std::move(angles)}, 0.0, 1.0, false});
  return path;
}

TripotentPath TripotentPath::frame_rotation(RMatrix generator, SymUnitary start, double tol) {
  const auto n = generator.rows();
  if (generator.cols() != n || n != start.dimension()) {
    throw InvalidArgument("frame_rotation path: generator must be n x n");
  }
  if ((generator + generator.transpose()).norm() > tol) {
    throw InvalidArgument("frame_rotation path: generator is not skew-symmetric");
  }
  TripotentPath path;
  path.n_ = static_cast<int>(n);
  path.pieces_.push_back(
      Piece{FrameRotationLeg{std::move(generator), std::move(start)}, 0.0, 1.0, false});
  return path;
}

TripotentPath TripotentPath::from_pieces(std::vector<Piece> pieces, double tol) {
  if (pieces.empty()) throw InvalidArgument("path: no legs");
  TripotentPath path;
  path.n_ = leg_dimension(pieces.front().leg);
  double expected = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (leg_dimension(p.leg) != path.n_) throw InvalidArgument("path: legs differ in dimension");
    if (std::abs(p.t0 - expected) > kParamTol || !(p.t1 > p.t0)) {
      throw InvalidArgument("path: legs must tile [0, 1] in order");
    }
    expected = p.t1;
    if (i > 0) {
      const auto& prev = pieces[i - 1];
      const SymUnitary a = evaluate_leg(prev.leg, prev.reversed ? 0.0 : 1.0);
      const SymUnitary b = evaluate_leg(p.leg, p.reversed ? 1.0 : 0.0);
      if ((a.matrix() - b.matrix()).norm() > tol) {
        std::ostringstream os;
        os << "path: legs " << i - 1 << " and " << i << " do not join";
        throw InvalidArgument(os.str());
      }
    }
  }
  if (std::abs(expected - 1.0) > kParamTol) throw InvalidArgument("path: legs must end at 1");
  pieces.front().t0 = 0.0;
  pieces.back().t1 = 1.0;
  path.pieces_ = std::move(pieces);
  return path;
}

const TripotentPath::Piece& TripotentPath::piece_at(double t) const {
  for (const auto& p : pieces_) {
    if (t <= p.t1 + 1e-15) return p;
  }
  return pieces_.back();
}

SymUnitary TripotentPath::at(double t) const {
  if (!(t >= -kParamTol && t <= 1.0 + kParamTol)) {
    throw InvalidArgument("path: parameter outside [0, 1]");
  }
  const Piece& p = piece_at(t);
  return evaluate_leg(p.leg, local_parameter(p, t));
}

bool TripotentPath::refinable(double a, double b) const {
  const double mid = 0.5 * (a + b);
  for (const auto& p : pieces_) {
    if (mid >= p.t0 && mid <= p.t1) {
      return leg_is_analytic(p.leg) && a >= p.t0 - 1e-15 && b <= p.t1 + 1e-15;
    }
  }
  return false;
}

std::vector<double> TripotentPath::natural_parameters() const { return initial_grid(0); }

std::vector<double> TripotentPath::initial_grid(int per_leg) const {
  std::vector<double> ts;
  for (const auto& p : pieces_) {
    ts.push_back(p.t0);
    ts.push_back(p.t1);
    std::visit(
        [&](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, SampledLeg>) {
            for (double s : l.params) ts.push_back(global_parameter(p, s));
          } else {
            if constexpr (std::is_same_v<T, FrameDiagonalLeg>) {
              for (double s : l.knots) ts.push_back(global_parameter(p, s));
            }
            for (int k = 1; k < per_leg; ++k) {
              ts.push_back(global_parameter(p, static_cast<double>(k) / per_leg));
            }
          }
        },
        p.leg);
  }
  append_unique_sorted(ts);
  return ts;
}

bool TripotentPath::is_closed(double tol) const {
  return (start().matrix() - end().matrix()).norm() <= tol;
}

TripotentPath concatenate(const TripotentPath& p, const TripotentPath& q, double tol) {
  if (p.dimension() != q.dimension()) throw InvalidArgument("concatenate: dimension mismatch");
  const double gap = (p.end().matrix() - q.start().matrix()).norm();
  if (gap > tol) {
    std::ostringstream os;
    os << "concatenate: end of first path and start of second differ (" << gap << ")";
    throw InvalidArgument(os.str());
  }
  std::vector<TripotentPath::Piece> pieces;
  for (auto piece : p.pieces()) {
    piece.t0 *= 0.5;
    piece.t1 *= 0.5;
    pieces.push_back(std::move(piece));
  }
  for (auto piece : q.pieces()) {
    piece.t0 = 0.5 + 0.5 * piece.t0;
    piece.t1 = 0.5 + 0.5 * piece.t1;
    pieces.push_back(std::move(piece));
  }
  TripotentPath out = TripotentPath::from_pieces(std::move(pieces), std::max(tol, 2.0 * gap));
  out.set_base_hint(p.base_hint() ? p.base_hint() : q.base_hint());
  return out;
}

TripotentPath reverse(const TripotentPath& p) {
  std::vector<TripotentPath::Piece> pieces;
  for (auto it = p.pieces().rbegin(); it != p.pieces().rend(); ++it) {
    TripotentPath::Piece piece = *it;
    piece.t0 = 1.0 - it->t1;
    piece.t1 = 1.0 - it->t0;
    piece.reversed = !it->reversed;
    pieces.push_back(std::move(piece));
  }
  TripotentPath out = TripotentPath::from_pieces(std::move(pieces), 1e-8);
  out.set_base_hint(p.base_hint());
  return out;
}

}  // namespace jbmaslov

#pragma once

// Piecewise paths in C built from straight segments and circular arcs,
// plus the planar distance and crossing primitives used for clearance.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ellhyp/elliptic.hpp"

namespace ellhyp {

struct LinePiece {
  cplx a, b;
};

/// Arc of the circle |t - center| = radius from angle theta0 through a
/// signed sweep (positive is counterclockwise).
struct ArcPiece {
  cplx center;
  double radius = 0.0;
  double theta0 = 0.0;
  double sweep = 0.0;
};

class PathPiece {
 public:
  PathPiece(LinePiece l) : v_(l) {}
  PathPiece(ArcPiece a) : v_(a) {}

  static PathPiece line(cplx a, cplx b) { return LinePiece{a, b}; }
  static PathPiece circle(cplx center, cplx start, bool ccw = true) {
    cplx r = start - center;
    return ArcPiece{center, std::abs(r), std::arg(r), ccw ? 2.0 * pi : -2.0 * pi};
  }

  bool is_arc() const { return std::holds_alternative<ArcPiece>(v_); }
  const LinePiece* as_line() const { return std::get_if<LinePiece>(&v_); }
  const ArcPiece* as_arc() const { return std::get_if<ArcPiece>(&v_); }

  /// Position at parameter s in [0, 1].
  cplx point(double s) const {
    if (auto l = as_line()) return l->a + s * (l->b - l->a);
    const auto& a = std::get<ArcPiece>(v_);
    return a.center + std::polar(a.radius, a.theta0 + s * a.sweep);
  }

  /// d point / ds.
  cplx velocity(double s) const {
    if (auto l = as_line()) return l->b - l->a;
    const auto& a = std::get<ArcPiece>(v_);
    return cplx(0.0, a.sweep) * std::polar(a.radius, a.theta0 + s * a.sweep);
  }

  cplx start() const { return point(0.0); }
  cplx end() const {
    if (auto l = as_line()) return l->b;
    return point(1.0);
  }

  double length() const {
    if (auto l = as_line()) return std::abs(l->b - l->a);
    const auto& a = std::get<ArcPiece>(v_);
    return a.radius * std::abs(a.sweep);
  }

  PathPiece reversed() const {
    if (auto l = as_line()) return LinePiece{l->b, l->a};
    ArcPiece a = std::get<ArcPiece>(v_);
    a.theta0 += a.sweep;
    a.sweep = -a.sweep;
    return a;
  }

  /// Euclidean distance from p to the piece.
  double distance_to(cplx p) const;

 private:
  std::variant<LinePiece, ArcPiece> v_;
};

class CurvePath {
 public:
  CurvePath() = default;
  explicit CurvePath(std::vector<PathPiece> pieces) : pieces_(std::move(pieces)) {}

  static CurvePath from_waypoints(const std::vector<cplx>& pts) {
    CurvePath p;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) p.pieces_.push_back(PathPiece::line(pts[k], pts[k + 1]));
    return p;
  }

  const std::vector<PathPiece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  cplx start() const { return pieces_.front().start(); }
  cplx end() const { return pieces_.back().end(); }

  CurvePath& append(const PathPiece& piece) {
    pieces_.push_back(piece);
    return *this;
  }
  CurvePath& append(const CurvePath& other) {
    pieces_.insert(pieces_.end(), other.pieces_.begin(), other.pieces_.end());
    return *this;
  }

  CurvePath reversed() const {
    CurvePath r;
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) r.pieces_.push_back(it->reversed());
    return r;
  }

  double length() const {
    double s = 0.0;
    for (const auto& p : pieces_) s += p.length();
    return s;
  }

 private:
  std::vector<PathPiece> pieces_;
};

namespace geom {

inline double cross(cplx a, cplx b) { return std::imag(std::conj(a) * b); }

inline double point_segment_distance(cplx p, cplx a, cplx b) {
  cplx d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double u = std::clamp(std::real(std::conj(d) * (p - a)) / len2, 0.0, 1.0);
  return std::abs(p - (a + u * d));
}

/// Parameters (u, v) of a proper crossing a + u(b-a) = c + v(d-c) with
/// u, v strictly inside (0, 1).
inline std::optional<std::pair<double, double>> segment_crossing(cplx a, cplx b, cplx c, cplx d) {
  cplx r = b - a, s = d - c;
  double den = cross(r, s);
  if (den == 0.0) return std::nullopt;
  double u = cross(c - a, s) / den;
  double v = cross(c - a, r) / den;
  if (u <= 0.0 || u >= 1.0 || v <= 0.0 || v >= 1.0) return std::nullopt;
  return std::pair{u, v};
}

inline double segment_segment_distance(cplx a, cplx b, cplx c, cplx d) {
  if (segment_crossing(a, b, c, d)) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d), point_segment_distance(c, a, b),
                   point_segment_distance(d, a, b)});
}

inline double point_arc_distance(cplx p, const ArcPiece& arc) {
  cplx r = p - arc.center;
  double ang = std::arg(r);
  // Is the direction of p inside the swept angular range?
  double lo = arc.sweep >= 0 ? arc.theta0 : arc.theta0 + arc.sweep;
  double span = std::abs(arc.sweep);
  double rel = std::fmod(ang - lo, 2.0 * pi);
  if (rel < 0) rel += 2.0 * pi;
  if (span >= 2.0 * pi || rel <= span) return std::abs(std::abs(r) - arc.radius);
  cplx e0 = arc.center + std::polar(arc.radius, arc.theta0);
  cplx e1 = arc.center + std::polar(arc.radius, arc.theta0 + arc.sweep);
  return std::min(std::abs(p - e0), std::abs(p - e1));
}

}  // namespace geom

inline double PathPiece::distance_to(cplx p) const {
  if (auto l = as_line()) return geom::point_segment_distance(p, l->a, l->b);
  return geom::point_arc_distance(p, std::get<ArcPiece>(v_));
}

}  // namespace ellhyp

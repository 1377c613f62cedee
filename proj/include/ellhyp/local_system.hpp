#pragma once

// The multivalued integrand g^alpha on the punctured curve: configurations,
// the cut geometry, branch tracking along paths and the global section on
// the complement of the cuts.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "ellhyp/curve_path.hpp"
#include "ellhyp/elliptic.hpp"
#include "ellhyp/error.hpp"
#include "ellhyp/gauss_kronrod.hpp"

namespace ellhyp {

/// Three representatives with no validity requirements.
struct PointTriple {
  std::array<cplx, 3> x{};
  cplx operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
  cplx sum() const { return x[0] + x[1] + x[2]; }
};

class Configuration {
 public:
  /// x2 := -x0 - x1.
  static Configuration from_pair(cplx x0, cplx x1, const Lattice& L) { return Configuration(x0, x1, L); }

  /// Accepts three representatives whose sum vanishes up to rounding.
  static Configuration make(cplx x0, cplx x1, cplx x2, const Lattice& L) {
    if (std::abs(x0 + x1 + x2) > 1e-12 * L.scale())
      throw Error(Errc::invalid_configuration, "representatives do not sum to zero");
    return Configuration(x0, x1, L);
  }

  cplx x(int i) const { return pts_[i]; }
  const PointTriple& points() const { return pts_; }
  const Lattice& lattice() const { return lattice_; }

  double clearance() const { return 1e-6 * lattice_.scale(); }
  double tolerance() const { return 1e-9 * lattice_.scale(); }

  /// Smallest distance mod the lattice between two of x0, x1, x2, 0.
  double min_separation() const {
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      d = std::min(d, lattice_.distance_to_lattice(pts_[i]));
      for (int j = i + 1; j < 3; ++j) d = std::min(d, lattice_.distance_to_lattice(pts_[i] - pts_[j]));
    }
    return d;
  }

  /// arg x0 < arg x1 < arg x2 with arguments in (-pi, pi].
  bool args_ordered() const {
    return std::arg(pts_[0]) < std::arg(pts_[1]) && std::arg(pts_[1]) < std::arg(pts_[2]);
  }

 private:
  Configuration(cplx x0, cplx x1, const Lattice& L) : lattice_(L) {
    pts_.x = {x0, x1, -x0 - x1};
    for (cplx v : pts_.x)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(Errc::invalid_configuration, "non-finite representative");
    if (min_separation() < tolerance())
      throw Error(Errc::invalid_configuration, "points coincide mod the lattice (singular configuration)");
  }

  Lattice lattice_;
  PointTriple pts_;
};

class AlphaParam {
 public:
  /// Rejects alpha in (1/2)Z or (1/3)Z.
  static AlphaParam make(cplx alpha) {
    for (double den : {2.0, 3.0}) {
      double k = std::round(alpha.real() * den);
      if (std::abs(alpha - cplx(k / den, 0.0)) < 1e-9)
        throw Error(Errc::invalid_alpha, "alpha lies in (1/" + std::to_string(int(den)) + ")Z");
    }
    return AlphaParam(alpha);
  }

  /// No domain check; for single-valued diagnostics such as alpha = 1.
  static AlphaParam unchecked(cplx alpha) { return AlphaParam(alpha); }

  cplx alpha() const { return alpha_; }
  cplx c() const { return c_; }

 private:
  explicit AlphaParam(cplx a) : alpha_(a), c_(std::exp(two_pi_i * a)) {}
  cplx alpha_, c_;
};

/// Lattice translates of the cuts [0, x_i] and of the punctures.
class CutSet {
 public:
  CutSet(const PointTriple& x, const Lattice& L) : x_(x), L_(L) {
    arm_a_ = {0.0, 0.0};
    arm_b_ = {0.0, 0.0};
    for (int j = 0; j < 3; ++j) {
      auto [a, b] = L.coords(x[j]);
      arm_a_ = {std::min(arm_a_.first, a), std::max(arm_a_.second, a)};
      arm_b_ = {std::min(arm_b_.first, b), std::max(arm_b_.second, b)};
    }
    reach_ = std::abs(L.omega1()) + std::abs(L.omega2());
  }
  explicit CutSet(const Configuration& q) : CutSet(q.points(), q.lattice()) {}

  /// Calls f(w) for every lattice point w whose arms meet the box around
  /// [lo, hi] grown by `grow`.
  template <class F>
  void for_each_translate(cplx lo, cplx hi, double grow, F&& f) const {
    double x0 = std::min(lo.real(), hi.real()) - grow, x1 = std::max(lo.real(), hi.real()) + grow;
    double y0 = std::min(lo.imag(), hi.imag()) - grow, y1 = std::max(lo.imag(), hi.imag()) + grow;
    double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
    for (cplx corner : {cplx(x0, y0), cplx(x0, y1), cplx(x1, y0), cplx(x1, y1)}) {
      auto [a, b] = L_.coords(corner);
      amin = std::min(amin, a);
      amax = std::max(amax, a);
      bmin = std::min(bmin, b);
      bmax = std::max(bmax, b);
    }
    auto m0 = static_cast<long>(std::ceil(amin - arm_a_.second)) - 1;
    auto m1 = static_cast<long>(std::floor(amax - arm_a_.first)) + 1;
    auto n0 = static_cast<long>(std::ceil(bmin - arm_b_.second)) - 1;
    auto n1 = static_cast<long>(std::floor(bmax - arm_b_.first)) + 1;
    for (long m = m0; m <= m1; ++m)
      for (long n = n0; n <= n1; ++n) f(L_.point(double(m), double(n)));
  }

  double distance_to_cuts(cplx t) const {
    double d = std::numeric_limits<double>::infinity();
    for_each_translate(t, t, reach_, [&](cplx w) {
      for (int j = 0; j < 3; ++j) d = std::min(d, geom::point_segment_distance(t, w, w + x_[j]));
    });
    return d;
  }

  double distance_to_punctures(cplx t) const {
    double d = L_.distance_to_lattice(t);
    for (int j = 0; j < 3; ++j) d = std::min(d, L_.distance_to_lattice(t - x_[j]));
    return d;
  }

  double segment_distance_to_cuts(cplx a, cplx b) const {
    double d = std::numeric_limits<double>::infinity();
    for_each_translate(a, b, reach_, [&](cplx w) {
      for (int j = 0; j < 3; ++j) d = std::min(d, geom::segment_segment_distance(a, b, w, w + x_[j]));
    });
    return d;
  }

  double piece_distance_to_punctures(const PathPiece& piece) const {
    cplx lo, hi;
    if (auto l = piece.as_line()) {
      lo = l->a;
      hi = l->b;
    } else {
      const auto& arc = *piece.as_arc();
      lo = arc.center - cplx(arc.radius, arc.radius);
      hi = arc.center + cplx(arc.radius, arc.radius);
    }
    double d = std::numeric_limits<double>::infinity();
    for_each_translate(lo, hi, reach_, [&](cplx w) {
      d = std::min(d, piece.distance_to(w));
      for (int j = 0; j < 3; ++j) d = std::min(d, piece.distance_to(w + x_[j]));
    });
    return d;
  }

  /// Signed count of proper crossings of [a, b] with the cuts.  A crossing
  /// counts +1 when Im(conj(d) v) < 0 for arm direction d and velocity v;
  /// continued log g then exceeds the section by 2 pi i.
  int crossing_number(cplx a, cplx b) const {
    int n = 0;
    for_each_translate(a, b, 0.0, [&](cplx w) {
      for (int j = 0; j < 3; ++j) {
        if (!geom::segment_crossing(a, b, w, w + x_[j])) continue;
        n += geom::cross(x_[j], b - a) < 0.0 ? 1 : -1;
      }
    });
    return n;
  }

  const PointTriple& points() const { return x_; }
  const Lattice& lattice() const { return L_; }

 private:
  PointTriple x_;
  Lattice L_;
  std::pair<double, double> arm_a_, arm_b_;
  double reach_ = 0.0;
};

namespace detail {

inline void check_not_puncture(cplx t, const PointTriple& x, const Lattice& L) {
  double d = L.distance_to_lattice(t);
  for (int j = 0; j < 3; ++j) d = std::min(d, L.distance_to_lattice(t - x[j]));
  if (d < L.pole_guard()) throw Error(Errc::pole_or_zero, "point is a zero or pole of g");
}

inline cplx g_raw(cplx t, const PointTriple& x, const Lattice& L) {
  check_not_puncture(t, x, L);
  cplx tr = L.reduce(t);
  cplx s = sigma(tr, L);
  cplx num = sigma(tr - x[0], L) * sigma(tr - x[1], L) * sigma(tr - x[2], L);
  cplx den = s * s * s * sigma(x[0], L) * sigma(x[1], L) * sigma(x[2], L);
  return num / den;
}

/// zeta(t-x0) + zeta(t-x1) + zeta(t-x2) - 3 zeta(t); elliptic in t for any
/// representatives, since the quasi-periods cancel.
inline cplx dlog_raw(cplx t, const PointTriple& x, const Lattice& L) {
  check_not_puncture(t, x, L);
  cplx tr = L.reduce(t);
  return zeta(tr - x[0], L) + zeta(tr - x[1], L) + zeta(tr - x[2], L) - 3.0 * zeta(tr, L);
}

}  // namespace detail

inline cplx g_value(cplx t, const Configuration& q) { return detail::g_raw(t, q.points(), q.lattice()); }

inline cplx dlog_g(cplx t, const Configuration& q) { return detail::dlog_raw(t, q.points(), q.lattice()); }

inline bool in_cut_domain(cplx t, const Configuration& q) { return CutSet(q).distance_to_cuts(t) > q.clearance(); }

/// A determination of log g at a point.
struct BranchState {
  cplx basepoint;
  cplx log_g;
};

inline cplx g_alpha(cplx t, const BranchState& branch, const AlphaParam& a) {
  if (std::abs(t - branch.basepoint) > 1e-12 * (1.0 + std::abs(t)))
    throw Error(Errc::invalid_configuration, "branch is not located at the evaluation point");
  return std::exp(a.alpha() * branch.log_g);
}

/// Subinterval of a piece with the continued log g at both ends; the total
/// variation of log g over a panel stays below one.
struct Panel {
  double s0, s1;
  cplx log0, log1;
};

namespace detail {

/// Log g(t) + 2 pi i k closest to `estimate`.
inline cplx snap_log(cplx estimate, cplx t, const Configuration& q) {
  cplx principal = std::log(g_value(t, q));
  double k = std::round((estimate - principal).imag() / (2.0 * pi));
  cplx out = principal + two_pi_i * k;
  if (std::abs(estimate - out) > 0.25) throw Error(Errc::quadrature_failure, "branch tracking lost the logarithm");
  return out;
}

inline std::vector<Panel> track_piece(const PathPiece& piece, const Configuration& q, cplx log_start) {
  auto f = [&](double s) { return dlog_g(piece.point(s), q) * piece.velocity(s); };
  std::size_t n0;
  if (auto arc = piece.as_arc())
    n0 = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(std::abs(arc->sweep) / (pi / 8))));
  else
    n0 = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(piece.length() / (0.1 * q.lattice().scale()))));
  // Pending intervals, leftmost last.
  std::vector<std::pair<double, double>> todo;
  for (std::size_t k = n0; k-- > 0;) todo.emplace_back(double(k) / double(n0), k + 1 == n0 ? 1.0 : double(k + 1) / double(n0));
  std::vector<Panel> panels;
  cplx log0 = log_start;
  while (!todo.empty()) {
    auto [s0, s1] = todo.back();
    todo.pop_back();
    auto est = gauss_kronrod15<cplx>(f, s0, s1);
    if (est.abs_integral > 0.75 || est.error > 1e-3) {
      if (s1 - s0 < 1e-12) throw Error(Errc::quadrature_failure, "branch tracking exceeded its refinement depth");
      double mid = 0.5 * (s0 + s1);
      todo.emplace_back(mid, s1);
      todo.emplace_back(s0, mid);
      continue;
    }
    cplx log1 = snap_log(log0 + est.value, piece.point(s1), q);
    panels.push_back({s0, s1, log0, log1});
    log0 = log1;
  }
  return panels;
}

/// Branch of log g at t nearest to a reference value within the same panel.
inline cplx branch_near(cplx t, cplx reference, const Configuration& q) {
  cplx principal = std::log(g_value(t, q));
  double k = std::round((reference - principal).imag() / (2.0 * pi));
  return principal + two_pi_i * k;
}

inline void check_clearance(const CurvePath& path, const Configuration& q) {
  CutSet cuts(q);
  for (const auto& piece : path.pieces())
    if (cuts.piece_distance_to_punctures(piece) < q.clearance())
      throw Error(Errc::clearance_violation, "path passes within clearance of a puncture");
}

}  // namespace detail

/// Continues log g along the path by integrating dlog g; every panel end is
/// snapped onto an exact determination of log g(t).
inline BranchState continue_log_g(const CurvePath& path, const Configuration& q, const BranchState& start) {
  if (path.empty()) return start;
  if (std::abs(path.start() - start.basepoint) > 1e-12 * (q.lattice().scale() + std::abs(start.basepoint)))
    throw Error(Errc::invalid_configuration, "path does not start at the branch basepoint");
  detail::check_clearance(path, q);
  cplx log = start.log_g;
  for (const auto& piece : path.pieces()) {
    auto panels = detail::track_piece(piece, q, log);
    log = panels.back().log1;
  }
  return {path.end(), log};
}

/// Cell point farthest from the cuts on a 64 x 64 grid, with the principal
/// logarithm of g there.  This fixes the global section on the cut domain.
inline BranchState canonical_basepoint(const Configuration& q) {
  CutSet cuts(q);
  const auto& L = q.lattice();
  constexpr int n = 64;
  double best = -1.0;
  cplx arg_best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx t = L.point((i + 0.5) / n, (j + 0.5) / n);
      double d = cuts.distance_to_cuts(t);
      if (d > best) {
        best = d;
        arg_best = t;
      }
    }
  return {arg_best, std::log(g_value(arg_best, q))};
}

/// Value of the global section's logarithm at a point of the cut domain:
/// continue from the canonical basepoint, then undo each cut crossing.
inline cplx section_log(cplx p, const Configuration& q, const BranchState& base) {
  CutSet cuts(q);
  if (cuts.distance_to_cuts(p) <= q.clearance())
    throw Error(Errc::clearance_violation, "point lies on a cut");
  const double min_period = std::min(std::abs(q.lattice().omega1()), std::abs(q.lattice().omega2()));
  const double margin = std::min({0.05 * min_period, 0.5 * cuts.distance_to_punctures(p),
                                  0.5 * cuts.distance_to_punctures(base.basepoint)});
  cplx t0 = base.basepoint;
  auto clear = [&](cplx a, cplx b) {
    return cuts.piece_distance_to_punctures(PathPiece::line(a, b)) >= margin;
  };
  std::vector<cplx> waypoints;
  if (clear(t0, p)) {
    waypoints = {t0, p};
  } else {
    cplx d = p - t0;
    cplx normal = cplx(0.0, 1.0) * d;
    for (double h : {0.1, -0.1, 0.2, -0.2, 0.35, -0.35, 0.5, -0.5, 0.75, -0.75, 1.0, -1.0}) {
      cplx mid = t0 + 0.5 * d + h * normal;
      if (clear(t0, mid) && clear(mid, p)) {
        waypoints = {t0, mid, p};
        break;
      }
    }
    if (waypoints.empty()) throw Error(Errc::clearance_violation, "no clear connector from the basepoint");
  }
  CurvePath path = CurvePath::from_waypoints(waypoints);
  BranchState end = continue_log_g(path, q, base);
  int crossings = 0;
  for (std::size_t k = 0; k + 1 < waypoints.size(); ++k) crossings += cuts.crossing_number(waypoints[k], waypoints[k + 1]);
  return end.log_g - two_pi_i * double(crossings);
}

inline cplx section_log(cplx p, const Configuration& q) { return section_log(p, q, canonical_basepoint(q)); }

/// Integral of dlog g along a path built from arbitrary representatives.
inline AdaptiveResult<cplx> integrate_dlog(const CurvePath& path, const PointTriple& x, const Lattice& L,
                                           double abs_tol = 1e-13) {
  AdaptiveResult<cplx> total;
  AdaptiveOptions opt;
  opt.abs_tol = abs_tol / double(std::max<std::size_t>(1, path.pieces().size()));
  opt.initial_splits = 4;
  for (const auto& piece : path.pieces()) {
    auto r = integrate_adaptive<cplx>(
        [&](double s) { return detail::dlog_raw(piece.point(s), x, L) * piece.velocity(s); }, 0.0, 1.0, opt);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
  }
  return total;
}

}  // namespace ellhyp

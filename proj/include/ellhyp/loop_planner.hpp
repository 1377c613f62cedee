#pragma once

// Closed loops l_{omega_i} inside the cut domain, and the abelian integrals
// of dlog g over them.

#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "ellhyp/local_system.hpp"

namespace ellhyp {

struct LoopPlan {
  CurvePath path;
  /// Guaranteed distance from the loop to every cut.
  double clearance = 0.0;
};

namespace detail {

/// Breadth-first search on a lattice-aligned grid from base to
/// base + omega_i, avoiding the cuts by `margin`; then greedy shortcutting.
inline std::vector<cplx> plan_loop(int i, const CutSet& cuts, cplx base, double margin) {
  const Lattice& L = cuts.lattice();
  cplx w1 = L.omega1(), w2 = L.omega2();
  double longest = std::max({std::abs(w1), std::abs(w2), std::abs(w1 + w2), std::abs(w1 - w2)});
  int n = std::max(4, static_cast<int>(std::ceil(longest / margin)));
  if (n > 1500) return {};
  const int lo = -n, hi = 2 * n, width = hi - lo + 1;
  auto index = [&](int a, int b) { return static_cast<std::size_t>((a - lo) * width + (b - lo)); };
  auto pos = [&](int a, int b) { return base + (double(a) / n) * w1 + (double(b) / n) * w2; };
  std::vector<std::int8_t> state(static_cast<std::size_t>(width) * width, -1);  // -1 unknown, 0 blocked, 1 free
  auto free_node = [&](int a, int b) {
    auto& s = state[index(a, b)];
    if (s < 0) s = cuts.distance_to_cuts(pos(a, b)) >= margin ? 1 : 0;
    return s == 1;
  };
  const int ta = i == 1 ? n : 0, tb = i == 1 ? 0 : n;
  if (!free_node(0, 0)) return {};
  std::vector<std::int32_t> parent(state.size(), -1);
  std::deque<std::pair<int, int>> queue{{0, 0}};
  parent[index(0, 0)] = static_cast<std::int32_t>(index(0, 0));
  bool found = false;
  while (!queue.empty() && !found) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (int da = -1; da <= 1; ++da)
      for (int db = -1; db <= 1; ++db) {
        if (da == 0 && db == 0) continue;
        int na = a + da, nb = b + db;
        if (na < lo || na > hi || nb < lo || nb > hi) continue;
        auto k = index(na, nb);
        if (parent[k] >= 0 || !free_node(na, nb)) continue;
        parent[k] = static_cast<std::int32_t>(index(a, b));
        if (na == ta && nb == tb) found = true;
        queue.emplace_back(na, nb);
      }
  }
  if (!found) return {};
  std::vector<cplx> nodes;
  for (auto k = index(ta, tb);; k = static_cast<std::size_t>(parent[k])) {
    int a = static_cast<int>(k / width) + lo, b = static_cast<int>(k % width) + lo;
    nodes.push_back(pos(a, b));
    if (a == 0 && b == 0) break;
  }
  std::reverse(nodes.begin(), nodes.end());
  nodes.front() = base;
  nodes.back() = base + L.omega(i);

  std::vector<cplx> out{nodes.front()};
  std::size_t k = 0;
  while (k + 1 < nodes.size()) {
    std::size_t j = k + 1;
    while (j + 1 < nodes.size() && cuts.segment_distance_to_cuts(nodes[k], nodes[j + 1]) >= 0.5 * margin) ++j;
    out.push_back(nodes[j]);
    k = j;
  }
  return out;
}

}  // namespace detail

/// Loop from the basepoint to its translate by omega_i that stays in the
/// cut domain; throws NoClearLoopFound when every margin fails.
inline LoopPlan period_loop(int i, const Configuration& q, const BranchState& base) {
  if (i != 1 && i != 2) throw Error(Errc::unknown_index, "period direction must be 1 or 2");
  CutSet cuts(q);
  const Lattice& L = q.lattice();
  double min_period = std::min(std::abs(L.omega1()), std::abs(L.omega2()));
  std::vector<double> margins;
  for (double f : {0.08, 0.04, 0.02, 0.01}) margins.push_back(f * min_period);
  // Narrow passages between nearly colliding punctures.
  if (0.2 * q.min_separation() < margins.back()) margins.push_back(0.2 * q.min_separation());
  for (double margin : margins) {
    auto pts = detail::plan_loop(i, cuts, base.basepoint, margin);
    if (!pts.empty()) return {CurvePath::from_waypoints(pts), 0.5 * margin};
  }
  throw Error(Errc::no_clear_loop_found, "no loop in the cut domain for omega" + std::to_string(i));
}

inline LoopPlan period_loop(int i, const Configuration& q) { return period_loop(i, q, canonical_basepoint(q)); }

/// I_i: integral of dlog g over l_{omega_i}.
inline cplx abelian_integral_I(int i, const Configuration& q) {
  auto loop = period_loop(i, q);
  return integrate_dlog(loop.path, q.points(), q.lattice()).value;
}

/// The same loop as for q, with the integrand built from arbitrary
/// representatives (their sum need not vanish).
inline cplx abelian_integral_raw(int i, const Configuration& q, const PointTriple& x) {
  auto loop = period_loop(i, q);
  CutSet cuts(x, q.lattice());
  for (const auto& piece : loop.path.pieces())
    if (cuts.piece_distance_to_punctures(piece) < q.clearance())
      throw Error(Errc::clearance_violation, "loop passes within clearance of a puncture");
  return integrate_dlog(loop.path, x, q.lattice()).value;
}

}  // namespace ellhyp

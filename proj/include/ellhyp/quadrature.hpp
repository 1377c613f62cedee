#pragma once

// Euler-type integrals of g^alpha over regularized twisted cycles.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ellhyp/config_space.hpp"
#include "ellhyp/loop_planner.hpp"
#include "ellhyp/twisted_chains.hpp"

namespace ellhyp {

/// One weighted path of a cycle, with log g fixed at its start.
struct CyclePiece {
  CurvePath path;
  cplx weight = 1.0;
  cplx start_log;
};

struct RegularizedCycle {
  Gen kind;
  double epsilon = 0.0;  // zero for period loops
  std::vector<CyclePiece> pieces;
  BranchState branch;  // at the start of the first piece
  Configuration q;
};

struct IntegralResult {
  cplx value;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

inline double default_epsilon(const Lattice& L) { return 0.02 * L.scale(); }

/// (i, j) of a segment generator.
inline std::pair<int, int> segment_ends(Gen g) {
  switch (g) {
    case Gen::s01: return {0, 1};
    case Gen::s12: return {1, 2};
    case Gen::s20: return {2, 0};
    default: throw Error(Errc::unknown_index, "not a segment generator");
  }
}

namespace detail {

/// Distance from x_i to the nearest other puncture (any translate).
inline double isolation(int i, const Configuration& q) {
  const Lattice& L = q.lattice();
  double d = std::min({L.distance_to_lattice(q.x(i)), std::abs(L.omega1()), std::abs(L.omega2()),
                       std::abs(L.omega1() + L.omega2()), std::abs(L.omega1() - L.omega2())});
  for (int k = 0; k < 3; ++k)
    if (k != i) d = std::min(d, L.distance_to_lattice(q.x(i) - q.x(k)));
  return d;
}

inline cplx end_log(const PathPiece& piece, const Configuration& q, cplx start_log) {
  return track_piece(piece, q, start_log).back().log1;
}

}  // namespace detail

/// Geometric realization of Xi_mu.  Segment cycles: ccw circle at x_i,
/// truncated segment, ccw circle at x_j with weights 1/(c-1), 1, -1/(c-1);
/// period cycles: one loop in the cut domain.
inline RegularizedCycle build_cycle(Gen mu, const Configuration& q, const AlphaParam& a, double epsilon,
                                    const BranchState& base) {
  RegularizedCycle cyc{mu, 0.0, {}, base, q};
  if (mu == Gen::w1 || mu == Gen::w2) {
    auto loop = period_loop(mu == Gen::w1 ? 1 : 2, q, base);
    cyc.pieces.push_back({loop.path, 1.0, base.log_g});
    return cyc;
  }
  auto [i, j] = segment_ends(mu);
  cplx xi = q.x(i), xj = q.x(j);
  double len = std::abs(xj - xi);
  if (!(epsilon > 0.0)) throw Error(Errc::epsilon_too_large, "epsilon must be positive");
  if (2.0 * epsilon >= len || epsilon >= 0.5 * detail::isolation(i, q) || epsilon >= 0.5 * detail::isolation(j, q))
    throw Error(Errc::epsilon_too_large, "epsilon circles would meet another puncture");
  cplx dir = (xj - xi) / len;
  cplx pi_ = xi + epsilon * dir, pj = xj - epsilon * dir;
  CurvePath circle_i({PathPiece::circle(xi, pi_)});
  CurvePath segment({PathPiece::line(pi_, pj)});
  CurvePath circle_j({PathPiece::circle(xj, pj)});
  for (const auto* p : {&circle_i, &segment, &circle_j}) detail::check_clearance(*p, q);

  cplx log_i = section_log(pi_, q, base);
  cplx log_j = detail::end_log(segment.pieces().front(), q, log_i);
  cplx w = 1.0 / (a.c() - 1.0);
  cyc.epsilon = epsilon;
  cyc.branch = {pi_, log_i};
  cyc.pieces = {{circle_i, w, log_i}, {segment, 1.0, log_i}, {circle_j, -w, log_j}};
  return cyc;
}

inline RegularizedCycle build_cycle(Gen mu, const Configuration& q, const AlphaParam& a, double epsilon) {
  return build_cycle(mu, q, a, epsilon, canonical_basepoint(q));
}

inline RegularizedCycle build_cycle(Gen mu, const Configuration& q, const AlphaParam& a) {
  return build_cycle(mu, q, a, default_epsilon(q.lattice()));
}

/// Weighted sum of integrals of g^alpha dt over the pieces, the branch
/// being continued along each piece from its recorded start.
inline IntegralResult integrate(const RegularizedCycle& cycle, const AlphaParam& a, double tol = 1e-10) {
  struct Job {
    const PathPiece* piece;
    Panel panel;
    cplx weight;
  };
  std::vector<Job> jobs;
  for (const auto& cp : cycle.pieces) {
    cplx log = cp.start_log;
    for (const auto& piece : cp.path.pieces()) {
      for (const auto& panel : detail::track_piece(piece, cycle.q, log)) jobs.push_back({&piece, panel, cp.weight});
      log = jobs.back().panel.log1;
    }
  }
  IntegralResult out{0.0, 0.0, 0};
  for (const auto& job : jobs) {
    AdaptiveOptions opt;
    opt.abs_tol = tol / (double(jobs.size()) * std::max(1.0, std::abs(job.weight)));
    auto f = [&](double s) {
      cplx t = job.piece->point(s);
      cplx lg = detail::branch_near(t, job.panel.log0, cycle.q);
      return std::exp(a.alpha() * lg) * job.piece->velocity(s);
    };
    auto r = integrate_adaptive<cplx>(f, job.panel.s0, job.panel.s1, opt);
    out.value += job.weight * r.value;
    out.error_estimate += std::abs(job.weight) * r.error;
    out.evaluations += r.evaluations;
  }
  return out;
}

/// F_mu(q) with default epsilon and tolerance.
inline IntegralResult euler_integral(Gen mu, const Configuration& q, const AlphaParam& a,
                                     std::optional<double> epsilon = std::nullopt, double tol = 1e-10) {
  double eps = epsilon.value_or(default_epsilon(q.lattice()));
  return integrate(build_cycle(mu, q, a, eps), a, tol);
}

/// Epsilon used near a singular point: the default, shrunk to a quarter of
/// the smallest puncture separation.
inline double adaptive_epsilon(const Configuration& q) {
  return std::min(default_epsilon(q.lattice()), 0.25 * q.min_separation());
}

/// |integral over Delta(q(s))| along the path towards the singular point.
inline std::vector<double> vanishing_limit(const PathLabel& label, const AlphaParam& a,
                                           const std::vector<double>& s_values, const Lattice& L,
                                           double tol = 1e-11) {
  TwistedCycle delta = vanishing_cycle(label);
  std::vector<double> out;
  for (double s : s_values) {
    if (s < 0.0 || s >= 0.5) throw Error(Errc::invalid_configuration, "vanishing limit expects s in [0, 1/2)");
    // The undeformed path: the deformation window does not apply here.
    auto x = path_triple(label.pair, label.m1, label.m2, s, L);
    Configuration q = Configuration::from_pair(x[0], x[1], L);
    double eps = adaptive_epsilon(q);
    BranchState base = canonical_basepoint(q);
    cplx total = 0.0;
    for (Gen g : all_generators) {
      const auto& coeff = delta[g];
      if (coeff.is_zero()) continue;
      total += coeff.eval(a.c()) * integrate(build_cycle(g, q, a, eps, base), a, tol).value;
    }
    out.push_back(std::abs(total));
  }
  return out;
}

}  // namespace ellhyp

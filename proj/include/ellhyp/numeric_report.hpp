#pragma once

// Numeric cross-checks bundled as named records with thresholds.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellhyp/quadrature.hpp"

namespace ellhyp {

struct CheckRecord {
  std::string check;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// Informational records do not decide the overall verdict.
  bool gating = true;
};

using Thresholds = std::map<std::string, double>;

inline const Thresholds& default_thresholds() {
  static const Thresholds t{
      {"legendre", 1e-12},        {"I1", 1e-10},          {"I2", 1e-10},
      {"monodromy_x0", 1e-8},     {"monodromy_x1", 1e-8}, {"monodromy_x2", 1e-8},
      {"monodromy_0", 1e-8},      {"eps_independence", 1e-8}, {"relation", 1e-6},
      {"ellipticity", 1e-10},     {"vanishing_ratio", 0.2},
  };
  return t;
}

/// Defaults overridden by `overrides`; unknown names are rejected.
inline Thresholds merge_thresholds(const Thresholds& overrides) {
  Thresholds t = default_thresholds();
  for (const auto& [k, v] : overrides) {
    if (!t.count(k)) throw Error(Errc::parse_error, "unknown tolerance name '" + k + "'");
    t[k] = v;
  }
  return t;
}

inline bool all_pass(const std::vector<CheckRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass || !r.gating; });
}

namespace detail {

inline CheckRecord below(std::string name, double value, const Thresholds& t) {
  double th = t.at(name);
  return {std::move(name), value, th, std::isfinite(value) && value < th, true};
}

/// g evaluated at t itself, without reducing t to the fundamental cell.
inline cplx g_unreduced(cplx t, const Configuration& q) {
  const Lattice& L = q.lattice();
  cplx s = sigma(t, L);
  cplx num = sigma(t - q.x(0), L) * sigma(t - q.x(1), L) * sigma(t - q.x(2), L);
  return num / (s * s * s * sigma(q.x(0), L) * sigma(q.x(1), L) * sigma(q.x(2), L));
}

/// Factor gained by g^alpha around a ccw circle, from the raw integral of
/// dlog g (no branch snapping).
inline cplx circle_monodromy(cplx center, double radius, const Configuration& q, const AlphaParam& a) {
  CurvePath loop({PathPiece::circle(center, center + std::polar(radius, 0.3))});
  cplx inc = integrate_dlog(loop, q.points(), q.lattice()).value;
  return std::exp(a.alpha() * inc);
}

}  // namespace detail

struct ReportOptions {
  std::optional<double> epsilon;
  Thresholds tolerances;
};

inline std::vector<CheckRecord> numeric_report(const Configuration& q, const AlphaParam& a,
                                               const ReportOptions& opt = {}) {
  const Thresholds t = merge_thresholds(opt.tolerances);
  const Lattice& L = q.lattice();
  std::vector<CheckRecord> out;

  out.push_back(detail::below("legendre", L.legendre_residual(), t));

  BranchState base = canonical_basepoint(q);
  for (int i = 1; i <= 2; ++i) {
    auto loop = period_loop(i, q, base);
    cplx I = integrate_dlog(loop.path, q.points(), L).value;
    out.push_back(detail::below("I" + std::to_string(i), std::abs(I), t));
  }

  double r = 0.25 * q.min_separation();
  for (int i = 0; i < 3; ++i) {
    cplx ratio = detail::circle_monodromy(q.x(i), r, q, a);
    out.push_back(detail::below("monodromy_x" + std::to_string(i), std::abs(ratio - a.c()) / std::abs(a.c()), t));
  }
  {
    cplx expect = std::pow(a.c(), -3);
    cplx ratio = detail::circle_monodromy(0.0, r, q, a);
    out.push_back(detail::below("monodromy_0", std::abs(ratio - expect) / std::abs(expect), t));
  }

  {
    double worst = 0.0;
    for (int k = 0; k < 16; ++k) {
      cplx z = L.point(0.05 + 0.9 * std::fmod(0.618034 * k, 1.0), 0.05 + 0.9 * std::fmod(0.414214 * k + 0.3, 1.0));
      if (CutSet(q).distance_to_punctures(z) < 0.05 * L.scale()) continue;
      cplx g0 = detail::g_unreduced(z, q);
      for (cplx w : {L.omega1(), L.omega2()})
        worst = std::max(worst, std::abs(detail::g_unreduced(z + w, q) - g0) / std::abs(g0));
    }
    out.push_back(detail::below("ellipticity", worst, t));
  }

  double eps = opt.epsilon.value_or(default_epsilon(L));
  const std::array<double, 3> scales{1.0, 1.5, 2.5};
  std::array<cplx, 3> f0{};
  double eps_delta = 0.0;
  const std::array<Gen, 3> segs{Gen::s01, Gen::s12, Gen::s20};
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t e = 0; e < scales.size(); ++e) {
      cplx f = integrate(build_cycle(segs[k], q, a, eps * scales[e], base), a).value;
      if (e == 0)
        f0[k] = f;
      else
        eps_delta = std::max(eps_delta, std::abs(f - f0[k]) / std::max(1.0, std::abs(f0[k])));
    }
  }
  out.push_back(detail::below("eps_independence", eps_delta, t));
  double fmax = std::max({std::abs(f0[0]), std::abs(f0[1]), std::abs(f0[2])});
  out.push_back(detail::below("relation", std::abs(f0[0] + f0[1] + f0[2]) / fmax, t));

  out.push_back({"arg_ordering", q.args_ordered() ? 1.0 : 0.0, 1.0, q.args_ordered(), false});
  return out;
}

/// Final/initial magnitude ratio of the vanishing-cycle integral along
/// s = 0.30, 0.40, 0.45, 0.48; passes when strictly decreasing and below
/// the threshold.
inline CheckRecord vanishing_record(const PathLabel& label, const AlphaParam& a, const Lattice& L,
                                    const Thresholds& overrides = {}) {
  const Thresholds t = merge_thresholds(overrides);
  auto mags = vanishing_limit(label, a, {0.30, 0.40, 0.45, 0.48}, L);
  bool decreasing = true;
  for (std::size_t k = 1; k < mags.size(); ++k) decreasing = decreasing && mags[k] < mags[k - 1];
  double ratio = mags.back() / mags.front();
  double th = t.at("vanishing_ratio");
  return {"vanishing_" + label.str(), ratio, th, decreasing && ratio < th, true};
}

}  // namespace ellhyp

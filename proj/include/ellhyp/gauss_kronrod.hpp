#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a real interval,
// for real- or complex-valued integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

#include "ellhyp/error.hpp"

namespace ellhyp {

namespace detail {

inline constexpr std::array<double, 8> gk15_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> g7_weights{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(std::complex<double> x) { return std::abs(x); }

}  // namespace detail

template <class T>
struct GkEstimate {
  T value{};
  double error = 0.0;
  /// Integral of |f|, useful as a variation bound.
  double abs_integral = 0.0;
};

template <class T, class F>
GkEstimate<T> gauss_kronrod15(F&& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fc = f(centre);
  T kronrod = fc * detail::gk15_weights[7];
  T gauss = fc * detail::g7_weights[3];
  double resabs = detail::magnitude(fc) * detail::gk15_weights[7];
  for (std::size_t k = 0; k < 7; ++k) {
    double dx = half * detail::gk15_nodes[k];
    T f1 = f(centre - dx);
    T f2 = f(centre + dx);
    kronrod += (f1 + f2) * detail::gk15_weights[k];
    resabs += (detail::magnitude(f1) + detail::magnitude(f2)) * detail::gk15_weights[k];
    if (k % 2 == 1) gauss += (f1 + f2) * detail::g7_weights[k / 2];
  }
  GkEstimate<T> out;
  out.value = kronrod * half;
  out.error = detail::magnitude((kronrod - gauss) * half);
  out.abs_integral = resabs * std::abs(half);
  return out;
}

template <class T>
struct AdaptiveResult {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  std::size_t max_intervals = 4000;
  std::size_t initial_splits = 1;
};

/// Splits the interval with the largest error estimate until the summed
/// estimate meets max(abs_tol, rel_tol*|I|).
template <class T, class F>
AdaptiveResult<T> integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
  struct Interval {
    double a, b;
    GkEstimate<T> est;
    bool operator<(const Interval& o) const { return est.error < o.est.error; }
  };
  std::priority_queue<Interval> heap;
  AdaptiveResult<T> out;
  std::size_t n0 = std::max<std::size_t>(1, opt.initial_splits);
  for (std::size_t k = 0; k < n0; ++k) {
    double lo = a + (b - a) * double(k) / double(n0);
    double hi = k + 1 == n0 ? b : a + (b - a) * double(k + 1) / double(n0);
    heap.push({lo, hi, gauss_kronrod15<T>(f, lo, hi)});
    out.evaluations += 15;
  }
  auto totals = [&heap]() {
    T v{};
    double e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().est.value;
      e += copy.top().est.error;
      copy.pop();
    }
    return std::pair{v, e};
  };
  T value{};
  double error = 0.0;
  {
    auto [v, e] = totals();
    value = v;
    error = e;
  }
  while (error > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(value))) {
    if (heap.size() >= opt.max_intervals)
      throw Error(Errc::quadrature_failure, "adaptive quadrature exceeded its interval budget");
    Interval worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b || std::abs(worst.b - worst.a) < 1e-14 * std::abs(b - a))
      throw Error(Errc::quadrature_failure, "adaptive quadrature interval underflow");
    Interval left{worst.a, mid, gauss_kronrod15<T>(f, worst.a, mid)};
    Interval right{mid, worst.b, gauss_kronrod15<T>(f, mid, worst.b)};
    out.evaluations += 30;
    value += left.est.value + right.est.value - worst.est.value;
    error += left.est.error + right.est.error - worst.est.error;
    heap.push(left);
    heap.push(right);
    if (heap.size() % 64 == 0) {
      auto [v, e] = totals();
      value = v;
      error = e;
    }
  }
  auto [v, e] = totals();
  out.value = v;
  out.error = e;
  return out;
}

}  // namespace ellhyp

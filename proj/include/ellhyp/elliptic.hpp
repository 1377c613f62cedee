#pragma once

// Weierstrass sigma, zeta, wp and wp' for an arbitrary period lattice,
// evaluated through the Jacobi theta-1 series in the nome.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>

#include "ellhyp/error.hpp"

namespace ellhyp {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx two_pi_i{0.0, 2.0 * std::numbers::pi};

namespace detail {

/// Theta-1 and its first three derivatives in v.
struct ThetaJet {
  cplx f, d1, d2, d3;
};

inline constexpr std::size_t max_theta_terms = 32;

}  // namespace detail

/// Period lattice Z*omega1 + Z*omega2.
///
/// The second period is negated at construction when needed so that
/// Im(omega2/omega1) > 0; `orientation_flipped()` records that.  Evaluation
/// runs on a Gauss-reduced basis of the same lattice, which keeps the
/// internal nome below exp(-pi*sqrt(3)/2) whatever basis the caller picked.
class Lattice {
 public:
  cplx omega1() const { return omega1_; }
  cplx omega2() const { return omega2_; }
  /// -(omega1 + omega2), the third half-period direction.
  cplx omega0() const { return -(omega1_ + omega2_); }
  cplx input_omega2() const { return orientation_flipped_ ? -omega2_ : omega2_; }
  bool orientation_flipped() const { return orientation_flipped_; }

  cplx tau() const { return omega2_ / omega1_; }
  cplx nome() const { return std::exp(cplx(0.0, pi) * tau()); }
  cplx eta1() const { return eta1_; }
  cplx eta2() const { return eta2_; }
  cplx eta(int i) const { return i == 1 ? eta1_ : eta2_; }
  cplx omega(int i) const { return i == 1 ? omega1_ : omega2_; }
  cplx g2() const { return g2_; }
  cplx g3() const { return g3_; }

  double scale() const { return std::abs(omega1_); }
  double pole_guard() const { return 1e-10 * scale(); }

  /// Real coordinates (a, b) with z = a*omega1 + b*omega2.
  std::pair<double, double> coords(cplx z) const {
    double b = std::imag(z * std::conj(omega1_)) / std::imag(omega2_ * std::conj(omega1_));
    double a = std::real((z - b * omega2_) / omega1_);
    return {a, b};
  }

  cplx point(double a, double b) const { return a * omega1_ + b * omega2_; }

  /// Representative in [0,1)*omega1 + [0,1)*omega2.
  cplx reduce(cplx z) const {
    auto [a, b] = coords(z);
    a -= std::floor(a);
    b -= std::floor(b);
    if (a >= 1.0) a = 0.0;
    if (b >= 1.0) b = 0.0;
    return point(a, b);
  }

  double distance_to_lattice(cplx z) const {
    auto r = reduce_internal(z);
    double best = std::abs(r.z0);
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j) best = std::min(best, std::abs(r.z0 - double(i) * w1_ - double(j) * w2_));
    return best;
  }

  bool contains(cplx z, double tol) const { return distance_to_lattice(z) < tol; }

  /// Legendre residual |eta1*omega2 - eta2*omega1 - 2*pi*i| / (2*pi).
  double legendre_residual() const {
    return std::abs(eta1_ * omega2_ - eta2_ * omega1_ - two_pi_i) / (2.0 * pi);
  }

  // -- evaluation internals, used by the free functions below --

  struct Reduced {
    cplx z0;          // representative near the origin of the internal cell
    cplx shift;       // lattice vector with z = z0 + shift
    cplx eta_shift;   // quasi-period attached to `shift`
    bool odd_sign;    // (-1)^(m+n+mn) == -1
  };

  Reduced reduce_internal(cplx z) const {
    double b = std::imag(z * std::conj(w1_)) / std::imag(w2_ * std::conj(w1_));
    double a = std::real((z - b * w2_) / w1_);
    double m = std::round(a);
    double n = std::round(b);
    cplx shift = m * w1_ + n * w2_;
    auto mi = static_cast<std::int64_t>(m);
    auto ni = static_cast<std::int64_t>(n);
    bool odd = ((mi + ni + mi * ni) % 2) != 0;
    return {z - shift, shift, m * h1_ + n * h2_, odd};
  }

  detail::ThetaJet theta_jet(cplx v) const {
    detail::ThetaJet t{0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < nterms_; ++k) {
      double odd = 2.0 * double(k) + 1.0;
      cplx s = std::sin(odd * v);
      cplx c = std::cos(odd * v);
      cplx q = (k % 2 == 0) ? qn_[k] : -qn_[k];
      t.f += q * s;
      t.d1 += q * odd * c;
      t.d2 -= q * odd * odd * s;
      t.d3 -= q * odd * odd * odd * c;
    }
    t.f *= 2.0;
    t.d1 *= 2.0;
    t.d2 *= 2.0;
    t.d3 *= 2.0;
    return t;
  }

  cplx w1() const { return w1_; }
  cplx h1() const { return h1_; }
  cplx theta1_prime_zero() const { return theta1p0_; }

  friend Lattice make_lattice(cplx omega1, cplx omega2);

 private:
  Lattice() = default;

  cplx omega1_{}, omega2_{};
  bool orientation_flipped_ = false;
  cplx w1_{}, w2_{};  // reduced basis
  cplx h1_{}, h2_{};  // quasi-periods of the reduced basis
  cplx eta1_{}, eta2_{};
  cplx g2_{}, g3_{};
  cplx theta1p0_{};
  std::array<cplx, detail::max_theta_terms> qn_{};
  std::size_t nterms_ = 0;
};

/// Builds a normalized lattice; throws DegenerateLattice when the periods
/// are zero or real-proportional.
inline Lattice make_lattice(cplx omega1, cplx omega2) {
  if (omega1 == 0.0 || omega2 == 0.0) throw Error(Errc::degenerate_lattice, "zero period");
  cplx ratio = omega2 / omega1;
  if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag()) ||
      std::abs(ratio.imag()) <= 1e-12 * std::abs(ratio))
    throw Error(Errc::degenerate_lattice, "omega2/omega1 is real");

  Lattice L;
  L.omega1_ = omega1;
  L.orientation_flipped_ = ratio.imag() < 0.0;
  L.omega2_ = L.orientation_flipped_ ? -omega2 : omega2;

  // Gauss reduction; rows of `m` express (w1, w2) in terms of (omega1, omega2).
  cplx w1 = L.omega1_, w2 = L.omega2_;
  std::int64_t m[2][2] = {{1, 0}, {0, 1}};
  for (int iter = 0; iter < 200; ++iter) {
    cplx t = w2 / w1;
    auto k = static_cast<std::int64_t>(std::round(t.real()));
    if (k != 0) {
      w2 -= double(k) * w1;
      m[1][0] -= k * m[0][0];
      m[1][1] -= k * m[0][1];
      t = w2 / w1;
    }
    if (std::abs(t) < 1.0 - 1e-14) {
      std::swap(w1, w2);
      w2 = -w2;
      std::int64_t r0[2] = {m[0][0], m[0][1]};
      m[0][0] = m[1][0];
      m[0][1] = m[1][1];
      m[1][0] = -r0[0];
      m[1][1] = -r0[1];
      continue;
    }
    break;
  }
  L.w1_ = w1;
  L.w2_ = w2;

  cplx tau = w2 / w1;
  double im_tau = tau.imag();
  // q_k = exp(i*pi*tau*(k+1/2)^2); the largest |sin| factor on the reduced
  // strip is exp((2k+1)*pi*Im(tau)/2).
  double lead = std::exp(-pi * im_tau * 0.25 + pi * im_tau * 0.5);
  L.nterms_ = 0;
  for (std::size_t k = 0; k < detail::max_theta_terms; ++k) {
    double h = double(k) + 0.5;
    L.qn_[k] = std::exp(cplx(0.0, pi) * tau * (h * h));
    L.nterms_ = k + 1;
    double odd = 2.0 * double(k) + 1.0;
    double bound = std::exp(-pi * im_tau * h * h + odd * pi * im_tau * 0.5) * odd * odd * odd;
    if (k >= 2 && bound < 1e-18 * lead) break;
  }

  detail::ThetaJet at0 = L.theta_jet(0.0);
  L.theta1p0_ = at0.d1;
  L.h1_ = -(pi * pi / (3.0 * w1)) * at0.d3 / at0.d1;
  // h2 = 2*zeta(w2/2), evaluated from the same series (not via Legendre).
  {
    cplx v = pi * (0.5 * w2) / w1;
    detail::ThetaJet th = L.theta_jet(v);
    L.h2_ = 2.0 * (L.h1_ * (0.5 * w2) / w1 + (pi / w1) * th.d1 / th.f);
  }

  // Back to the caller's basis: (omega1, omega2) = inv(m) * (w1, w2).
  std::int64_t det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  double inv[2][2] = {{double(m[1][1] * det), double(-m[0][1] * det)},
                      {double(-m[1][0] * det), double(m[0][0] * det)}};
  L.eta1_ = inv[0][0] * L.h1_ + inv[0][1] * L.h2_;
  L.eta2_ = inv[1][0] * L.h1_ + inv[1][1] * L.h2_;

  // Eisenstein series in Q = exp(2*pi*i*tau), Lambert form.
  cplx Q = std::exp(cplx(0.0, 2.0 * pi) * tau);
  cplx s3 = 0.0, s5 = 0.0, Qn = 1.0;
  for (int n = 1; n < 400; ++n) {
    Qn *= Q;
    cplx term = Qn / (1.0 - Qn);
    double n3 = double(n) * n * n;
    s3 += n3 * term;
    s5 += n3 * n * n * term;
    if (std::abs(Qn) * n3 * n * n < 1e-20) break;
  }
  cplx w4 = w1 * w1 * w1 * w1;
  L.g2_ = (4.0 * std::pow(pi, 4) / 3.0) * (1.0 + 240.0 * s3) / w4;
  L.g3_ = (8.0 * std::pow(pi, 6) / 27.0) * (1.0 - 504.0 * s5) / (w4 * w1 * w1);
  return L;
}

/// A point of the torus C / Lattice, kept with a chosen representative.
struct TorusPoint {
  cplx rep;
  Lattice lattice;

  TorusPoint reduce() const { return {lattice.reduce(rep), lattice}; }
  bool same_as(const TorusPoint& other, double tol) const {
    return lattice.contains(rep - other.rep, tol);
  }
};

namespace detail {

inline void check_pole(cplx z, const Lattice& L) {
  if (L.distance_to_lattice(z) < L.pole_guard())
    throw Error(Errc::pole_at_lattice_point, "argument lies on the lattice");
}

}  // namespace detail

inline cplx sigma(cplx z, const Lattice& L) {
  auto r = L.reduce_internal(z);
  cplx v = pi * r.z0 / L.w1();
  detail::ThetaJet th = L.theta_jet(v);
  cplx base = (L.w1() / pi) * std::exp(L.h1() * r.z0 * r.z0 / (2.0 * L.w1())) * th.f / L.theta1_prime_zero();
  if (r.shift == 0.0) return base;
  cplx factor = std::exp(r.eta_shift * (r.z0 + 0.5 * r.shift));
  return (r.odd_sign ? -1.0 : 1.0) * factor * base;
}

inline cplx zeta(cplx z, const Lattice& L) {
  detail::check_pole(z, L);
  auto r = L.reduce_internal(z);
  cplx v = pi * r.z0 / L.w1();
  detail::ThetaJet th = L.theta_jet(v);
  return L.h1() * r.z0 / L.w1() + (pi / L.w1()) * th.d1 / th.f + r.eta_shift;
}

inline cplx wp(cplx z, const Lattice& L) {
  detail::check_pole(z, L);
  auto r = L.reduce_internal(z);
  cplx k = pi / L.w1();
  detail::ThetaJet th = L.theta_jet(k * r.z0);
  cplx l1 = th.d1 / th.f;
  return -L.h1() / L.w1() - k * k * (th.d2 / th.f - l1 * l1);
}

inline cplx wp_prime(cplx z, const Lattice& L) {
  detail::check_pole(z, L);
  auto r = L.reduce_internal(z);
  cplx k = pi / L.w1();
  detail::ThetaJet th = L.theta_jet(k * r.z0);
  cplx l1 = th.d1 / th.f;
  cplx l2 = th.d2 / th.f;
  cplx l3 = th.d3 / th.f;
  return -k * k * k * (l3 - 3.0 * l2 * l1 + 2.0 * l1 * l1 * l1);
}

/// Integral of wp along a loop in the class of omega_i, i.e. -eta_i.
inline cplx period_integral_of_wp(int i, const Lattice& L) {
  if (i != 1 && i != 2) throw Error(Errc::unknown_index, "period index must be 1 or 2");
  return -L.eta(i);
}

}  // namespace ellhyp

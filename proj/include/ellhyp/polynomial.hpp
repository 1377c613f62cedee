#pragma once

// Dense univariate polynomials over Q with arbitrary-precision coefficients.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ellhyp/error.hpp"

namespace ellhyp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational constant) {
    if (constant != 0) coeffs_.push_back(std::move(constant));
  }
  Polynomial(int constant) : Polynomial(Rational(constant)) {}
  /// Coefficients in increasing degree: {a0, a1, ...}.
  Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(Rational coeff, std::size_t degree) {
    std::vector<Rational> c(degree + 1);
    c[degree] = std::move(coeff);
    return Polynomial(std::move(c));
  }
  /// The indeterminate c.
  static Polynomial c() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_constant() const { return degree() <= 0; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& x : r.coeffs_) x = -x;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += -o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Rational& s) const {
    if (s == 0) return {};
    Polynomial r = *this;
    for (auto& x : r.coeffs_) x *= s;
    return r;
  }

  /// Euclidean division: returns (quotient, remainder).
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw Error(Errc::singular_matrix, "polynomial division by zero");
    Polynomial rem = num;
    if (rem.degree() < den.degree()) return {Polynomial{}, rem};
    std::vector<Rational> q(rem.degree() - den.degree() + 1);
    while (!rem.is_zero() && rem.degree() >= den.degree()) {
      std::size_t shift = rem.degree() - den.degree();
      Rational f = rem.leading() / den.leading();
      q[shift] = f;
      for (std::size_t k = 0; k < den.coeffs_.size(); ++k) rem.coeffs_[k + shift] -= f * den.coeffs_[k];
      rem.trim();
    }
    return {Polynomial(std::move(q)), rem};
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    return scaled(Rational(1) / leading());
  }

  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// c^degree * p(1/c): the coefficient reversal.
  Polynomial reversed() const {
    std::vector<Rational> r(coeffs_.rbegin(), coeffs_.rend());
    return Polynomial(std::move(r));
  }

  /// Number of trailing zero coefficients (power of c dividing p).
  std::size_t valuation() const {
    std::size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
    return k;
  }

  std::complex<double> eval(std::complex<double> x) const {
    std::complex<double> r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + it->convert_to<double>();
    return r;
  }

  Rational eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
    return r;
  }

  /// Highest degree first, e.g. "c^2+c+1", "-c-1", "1/2*c".
  std::string to_string(const std::string& var = "c") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const Rational& a = coeffs_[k];
      if (a == 0) continue;
      Rational mag = a < 0 ? Rational(-a) : a;
      if (a < 0)
        out += "-";
      else if (!out.empty())
        out += "+";
      bool unit = mag == 1;
      if (k == 0 || !unit) {
        out += mag.str();
        if (k > 0) out += "*";
      }
      if (k >= 1) out += var;
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

  /// Number of nonzero terms.
  std::size_t term_count() const {
    return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return r != 0; }));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

}  // namespace ellhyp

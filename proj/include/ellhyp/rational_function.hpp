#pragma once

// Exact elements of Q(c), kept as numerator/denominator with a monic
// denominator and no common factor.

#include <cctype>
#include <complex>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ellhyp/polynomial.hpp"

namespace ellhyp {

class RationalFunctionC {
 public:
  RationalFunctionC() : num_(), den_(1) {}
  RationalFunctionC(int k) : num_(k), den_(1) {}
  RationalFunctionC(Rational k) : num_(std::move(k)), den_(1) {}
  RationalFunctionC(Polynomial p) : num_(std::move(p)), den_(1) {}
  RationalFunctionC(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RationalFunctionC c() { return RationalFunctionC(Polynomial::c()); }
  static RationalFunctionC parse(std::string_view text);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend bool operator==(const RationalFunctionC& a, const RationalFunctionC& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunctionC operator-() const { return {-num_, den_, raw_tag{}}; }

  friend RationalFunctionC operator+(const RationalFunctionC& a, const RationalFunctionC& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunctionC operator-(const RationalFunctionC& a, const RationalFunctionC& b) { return a + (-b); }
  friend RationalFunctionC operator*(const RationalFunctionC& a, const RationalFunctionC& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunctionC operator/(const RationalFunctionC& a, const RationalFunctionC& b) {
    if (b.is_zero()) throw Error(Errc::singular_matrix, "division by the zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  RationalFunctionC& operator+=(const RationalFunctionC& o) { return *this = *this + o; }
  RationalFunctionC& operator-=(const RationalFunctionC& o) { return *this = *this - o; }
  RationalFunctionC& operator*=(const RationalFunctionC& o) { return *this = *this * o; }
  RationalFunctionC& operator/=(const RationalFunctionC& o) { return *this = *this / o; }

  RationalFunctionC inverse() const { return RationalFunctionC(1) / *this; }

  RationalFunctionC pow(int k) const {
    RationalFunctionC base = k < 0 ? inverse() : *this;
    RationalFunctionC r(1);
    for (int i = 0; i < (k < 0 ? -k : k); ++i) r *= base;
    return r;
  }

  /// a(c) -> a(1/c).
  RationalFunctionC substitute_inverse() const {
    if (is_zero()) return {};
    // N(1/c)/D(1/c) = rev(N) * c^degD / (rev(D) * c^degN)
    Polynomial n = num_.reversed();
    Polynomial d = den_.reversed();
    int shift = den_.degree() - num_.degree();
    if (shift > 0)
      n = n * Polynomial::monomial(1, shift);
    else if (shift < 0)
      d = d * Polynomial::monomial(1, -shift);
    return {n, d};
  }

  std::complex<double> eval(std::complex<double> c0) const { return num_.eval(c0) / den_.eval(c0); }

  /// Expanded numerator over a denominator with the factors c, c-1, c+1
  /// pulled out, e.g. "(-c-1)/(c-1)", "(c^2+c+1)/(c-1)^2", "c-1".
  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const RationalFunctionC& r) { return os << r.str(); }

 private:
  struct raw_tag {};
  RationalFunctionC(Polynomial num, Polynomial den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw Error(Errc::singular_matrix, "zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    if (den_.degree() > 0 && num_.degree() > 0) {
      Polynomial g = Polynomial::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = Polynomial::divmod(num_, g).first;
        den_ = Polynomial::divmod(den_, g).first;
      }
    }
    Rational lead = den_.leading();
    if (lead != 1) {
      num_ = num_.scaled(Rational(1) / lead);
      den_ = den_.scaled(Rational(1) / lead);
    }
  }

  Polynomial num_;
  Polynomial den_;
};

namespace detail {

/// Scales p by the lcm of its coefficient denominators.
inline BigInt clear_denominators(const Polynomial& p) {
  BigInt l = 1;
  for (const auto& a : p.coeffs()) {
    BigInt d = boost::multiprecision::denominator(a);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  return l;
}

inline std::string render_factor(const std::string& base, bool wrap, unsigned power) {
  std::string s = wrap ? "(" + base + ")" : base;
  if (power > 1) s += "^" + std::to_string(power);
  return s;
}

}  // namespace detail

inline std::string RationalFunctionC::str() const {
  if (den_ == Polynomial(1)) return num_.to_string();

  // Integer-normalized display copy.
  BigInt l = detail::clear_denominators(num_);
  BigInt ld = detail::clear_denominators(den_);
  l = l / boost::multiprecision::gcd(l, ld) * ld;
  Polynomial n = num_.scaled(Rational(l));
  Polynomial d = den_.scaled(Rational(l));
  BigInt content = 0;
  for (const auto& a : n.coeffs()) content = boost::multiprecision::gcd(content, boost::multiprecision::numerator(a));
  for (const auto& a : d.coeffs()) content = boost::multiprecision::gcd(content, boost::multiprecision::numerator(a));
  if (content > 1) {
    n = n.scaled(Rational(1, content));
    d = d.scaled(Rational(1, content));
  }

  std::vector<std::string> factors;
  BigInt dcontent = 0;
  for (const auto& a : d.coeffs()) dcontent = boost::multiprecision::gcd(dcontent, boost::multiprecision::numerator(a));
  if (dcontent > 1) {
    factors.push_back(dcontent.str());
    d = d.scaled(Rational(1, dcontent));
  }
  std::size_t v = d.valuation();
  if (v > 0) {
    factors.push_back(detail::render_factor("c", false, static_cast<unsigned>(v)));
    std::vector<Rational> shifted(d.coeffs().begin() + static_cast<std::ptrdiff_t>(v), d.coeffs().end());
    d = Polynomial(std::move(shifted));
  }
  for (int sign : {-1, 1}) {
    Polynomial f{Rational(sign), Rational(1)};  // c-1 or c+1
    unsigned k = 0;
    while (d.degree() >= 1) {
      auto [q, r] = Polynomial::divmod(d, f);
      if (!r.is_zero()) break;
      d = q;
      ++k;
    }
    if (k > 0) factors.push_back(detail::render_factor(sign < 0 ? "c-1" : "c+1", true, k));
  }
  if (!(d == Polynomial(1))) {
    if (d == Polynomial(-1)) {
      n = -n;
    } else {
      factors.push_back(detail::render_factor(d.to_string(), d.term_count() > 1, 1));
    }
  }

  std::string num_s = n.to_string();
  if (factors.empty()) return num_s;
  if (n.term_count() > 1) num_s = "(" + num_s + ")";
  std::string den_s;
  for (std::size_t i = 0; i < factors.size(); ++i) den_s += (i ? "*" : "") + factors[i];
  if (factors.size() > 1) den_s = "(" + den_s + ")";
  return num_s + "/" + den_s;
}

namespace detail {

/// Recursive-descent parser for expressions in c: integers, c, + - * / ^,
/// parentheses and implicit multiplication ("2c", "c(c-1)").
class RationalFunctionParser {
 public:
  explicit RationalFunctionParser(std::string_view s) : s_(s) {}

  RationalFunctionC parse() {
    RationalFunctionC r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::parse_error, why + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char ch) {
    skip();
    return pos_ < s_.size() && s_[pos_] == ch;
  }
  bool starts_primary() {
    skip();
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == 'c' || s_[pos_] == '(');
  }

  RationalFunctionC expr() {
    RationalFunctionC r = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        r += term();
      } else if (peek('-')) {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }

  RationalFunctionC term() {
    RationalFunctionC r = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        r *= unary();
      } else if (peek('/')) {
        ++pos_;
        r /= unary();
      } else if (starts_primary()) {
        r *= power();
      } else {
        return r;
      }
    }
  }

  RationalFunctionC unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  RationalFunctionC power() {
    RationalFunctionC base = primary();
    if (peek('^')) {
      ++pos_;
      bool neg = false;
      if (peek('-')) {
        neg = true;
        ++pos_;
      }
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
      base = base.pow(neg ? -k : k);
    }
    return base;
  }

  RationalFunctionC primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      RationalFunctionC r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (ch == 'c') {
      ++pos_;
      return RationalFunctionC::c();
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunctionC(Rational(BigInt(std::string(s_.substr(start, pos_ - start)))));
    }
    fail(std::string("unexpected '") + ch + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RationalFunctionC RationalFunctionC::parse(std::string_view text) {
  return detail::RationalFunctionParser(text).parse();
}

}  // namespace ellhyp

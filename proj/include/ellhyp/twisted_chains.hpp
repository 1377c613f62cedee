#pragma once

// Symbolic twisted cycles over Q(c) and their intersection pairing.
//
// Generators are indexed by J = {(01), (12), (20), w1, w2} in that order.
// The reduced basis J' = {(01), (20), w1, w2} drops (12) through the
// relation Xi(01) + Xi(12) + Xi(20) = 0.

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ellhyp/matrix.hpp"
#include "ellhyp/rational_function.hpp"

namespace ellhyp {

enum class Gen : std::size_t { s01 = 0, s12 = 1, s20 = 2, w1 = 3, w2 = 4 };

inline constexpr std::array<Gen, 5> all_generators{Gen::s01, Gen::s12, Gen::s20, Gen::w1, Gen::w2};
inline constexpr std::array<Gen, 4> reduced_basis{Gen::s01, Gen::s20, Gen::w1, Gen::w2};

constexpr std::size_t index_of(Gen g) { return static_cast<std::size_t>(g); }

constexpr std::string_view to_string(Gen g) {
  switch (g) {
    case Gen::s01: return "(01)";
    case Gen::s12: return "(12)";
    case Gen::s20: return "(20)";
    case Gen::w1: return "w1";
    case Gen::w2: return "w2";
  }
  return "?";
}

/// Accepts "(01)", "01", "w1", "omega1" and friends.
inline Gen parse_generator(std::string_view s) {
  if (s == "(01)" || s == "01") return Gen::s01;
  if (s == "(12)" || s == "12") return Gen::s12;
  if (s == "(20)" || s == "20") return Gen::s20;
  if (s == "w1" || s == "omega1") return Gen::w1;
  if (s == "w2" || s == "omega2") return Gen::w2;
  throw Error(Errc::unknown_index, "unknown generator '" + std::string(s) + "'");
}

using Coeffs5 = std::array<RationalFunctionC, 5>;
using Coeffs4 = std::array<RationalFunctionC, 4>;

/// Formal Q(c)-combination of the generators.  Cycles produced by
/// `dualize` carry the dual tag: their coefficients already have c -> 1/c
/// applied and they live in the homology of the dual local system.
class TwistedCycle {
 public:
  TwistedCycle() = default;
  explicit TwistedCycle(Coeffs5 coeffs, bool dual = false) : coeffs_(std::move(coeffs)), dual_(dual) {}

  static TwistedCycle generator(Gen g) {
    TwistedCycle t;
    t.coeffs_[index_of(g)] = RationalFunctionC(1);
    return t;
  }

  /// Lifts coordinates on J' back to a J-indexed combination.
  static TwistedCycle from_basis(const Coeffs4& v) {
    TwistedCycle t;
    for (std::size_t k = 0; k < 4; ++k) t.coeffs_[index_of(reduced_basis[k])] = v[k];
    return t;
  }

  const RationalFunctionC& operator[](Gen g) const { return coeffs_[index_of(g)]; }
  RationalFunctionC& operator[](Gen g) { return coeffs_[index_of(g)]; }
  const Coeffs5& coeffs() const { return coeffs_; }
  bool is_dual() const { return dual_; }

  friend bool operator==(const TwistedCycle& a, const TwistedCycle& b) {
    return a.dual_ == b.dual_ && a.coeffs_ == b.coeffs_;
  }

  friend TwistedCycle operator+(TwistedCycle a, const TwistedCycle& b) {
    for (std::size_t k = 0; k < 5; ++k) a.coeffs_[k] += b.coeffs_[k];
    return a;
  }
  friend TwistedCycle operator-(TwistedCycle a, const TwistedCycle& b) {
    for (std::size_t k = 0; k < 5; ++k) a.coeffs_[k] -= b.coeffs_[k];
    return a;
  }
  friend TwistedCycle operator*(const RationalFunctionC& s, TwistedCycle a) {
    for (auto& x : a.coeffs_) x = s * x;
    return a;
  }
  TwistedCycle operator-() const { return RationalFunctionC(-1) * *this; }

  /// Substitutes Xi(12) = -Xi(01) - Xi(20).
  TwistedCycle reduce_to_basis() const {
    TwistedCycle r = *this;
    RationalFunctionC a12 = r.coeffs_[index_of(Gen::s12)];
    if (!a12.is_zero()) {
      r.coeffs_[index_of(Gen::s01)] -= a12;
      r.coeffs_[index_of(Gen::s20)] -= a12;
      r.coeffs_[index_of(Gen::s12)] = RationalFunctionC();
    }
    return r;
  }

  /// Coordinates on J' (after reduction).
  Coeffs4 basis_coords() const {
    TwistedCycle r = reduce_to_basis();
    Coeffs4 v;
    for (std::size_t k = 0; k < 4; ++k) v[k] = r.coeffs_[index_of(reduced_basis[k])];
    return v;
  }

  /// Coefficients a(c) -> a(1/c); toggles the dual tag.
  TwistedCycle dualize() const {
    TwistedCycle r = *this;
    for (auto& x : r.coeffs_) x = x.substitute_inverse();
    r.dual_ = !dual_;
    return r;
  }

  std::vector<std::complex<double>> eval(std::complex<double> c0) const {
    std::vector<std::complex<double>> v;
    for (const auto& x : coeffs_) v.push_back(x.eval(c0));
    return v;
  }

  std::string str() const {
    std::string out;
    for (Gen g : all_generators) {
      const auto& a = coeffs_[index_of(g)];
      if (a.is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "[" + a.str() + "]" + std::string(to_string(g));
    }
    return out.empty() ? "0" : out;
  }

 private:
  Coeffs5 coeffs_{};
  bool dual_ = false;
};

inline TwistedCycle generator(Gen g) { return TwistedCycle::generator(g); }
inline TwistedCycle reduce_to_basis(const TwistedCycle& x) { return x.reduce_to_basis(); }
inline TwistedCycle dualize(const TwistedCycle& x) { return x.dualize(); }

using IntersectionMatrix = Matrix<RationalFunctionC>;

/// Pairing <Xi_mu, Xi_nu^dual> on J x J, valid for configurations with
/// arg x0 < arg x1 < arg x2.
inline const IntersectionMatrix& intersection_matrix() {
  static const IntersectionMatrix m = [] {
    const RationalFunctionC c = RationalFunctionC::c();
    const RationalFunctionC cm1 = c - 1;
    const RationalFunctionC d = -(c + 1) / cm1;
    const RationalFunctionC a = RationalFunctionC(1) / cm1;
    const RationalFunctionC b = c / cm1;
    const RationalFunctionC z, one(1);
    return IntersectionMatrix{
        {d, a, b, z, z},
        {b, d, a, z, z},
        {a, b, d, z, z},
        {z, z, z, z, one},
        {z, z, z, -one, z},
    };
  }();
  return m;
}

/// Restriction of the pairing to J' x J'.
inline IntersectionMatrix reduced_intersection_matrix() {
  const auto& m = intersection_matrix();
  IntersectionMatrix r(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r(i, j) = m(index_of(reduced_basis[i]), index_of(reduced_basis[j]));
  return r;
}

/// (2,2)-cofactor: the minor with the (12) row and column removed.
inline RationalFunctionC intersection_cofactor_22() { return determinant(intersection_matrix().minor_matrix(1, 1)); }

/// <xi, eta^dual>.  The second argument is dualized here unless it already
/// carries the dual tag.
inline RationalFunctionC intersect(const TwistedCycle& xi, const TwistedCycle& eta) {
  const auto& m = intersection_matrix();
  TwistedCycle dual = eta.is_dual() ? eta : eta.dualize();
  RationalFunctionC sum;
  for (std::size_t i = 0; i < 5; ++i) {
    if (xi.coeffs()[i].is_zero()) continue;
    for (std::size_t j = 0; j < 5; ++j) {
      if (dual.coeffs()[j].is_zero() || m(i, j).is_zero()) continue;
      sum += xi.coeffs()[i] * dual.coeffs()[j] * m(i, j);
    }
  }
  return sum;
}

/// Rank of the pairing restricted to J' (four independent generators).
inline std::size_t rank_check() { return rank(reduced_intersection_matrix()); }

inline Matrix<std::complex<double>> intersection_matrix_at(std::complex<double> c0) {
  return intersection_matrix().map([c0](const RationalFunctionC& r) { return r.eval(c0); });
}

/// Entry strings, row by row.
inline std::vector<std::vector<std::string>> render(const Matrix<RationalFunctionC>& m) {
  std::vector<std::vector<std::string>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i].push_back(m(i, j).str());
  return rows;
}

}  // namespace ellhyp

#pragma once

// Vanishing cycles, the twisted Picard-Lefschetz transform and connection
// matrices on the reduced basis J' = {(01), (20), w1, w2}.
//
// Matrix convention: column nu of a connection matrix holds the
// J'-coordinates of the image of the nu-th basis cycle, so matrices act on
// coordinate columns and a path composite gamma_2 o gamma_1 has matrix
// M(gamma_2) * M(gamma_1).

#include <array>
#include <charconv>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ellhyp/matrix.hpp"
#include "ellhyp/twisted_chains.hpp"

namespace ellhyp {

/// Which two points move along the path (the third stays put).
enum class MovingPair { p02, p01 };

/// gamma_(ij)^{m1,m2}.
struct PathLabel {
  MovingPair pair = MovingPair::p01;
  int m1 = 0;
  int m2 = 1;

  friend bool operator==(const PathLabel&, const PathLabel&) = default;

  /// One of the eight paths through the singular points of the pencil.
  bool is_valid() const {
    if (pair == MovingPair::p02) return (m1 == 1 || m1 == -1) && (m2 == 0 || m2 == 2);
    return (m1 == 0 || m1 == 2) && (m2 == 1 || m2 == -1);
  }
  /// Paths whose vanishing cycle is known directly.
  bool is_elementary() const {
    return is_valid() && ((pair == MovingPair::p02 && m2 == 0) || (pair == MovingPair::p01 && m1 == 0));
  }
  /// Indices of the moving points.
  std::pair<int, int> moving() const { return pair == MovingPair::p02 ? std::pair{0, 2} : std::pair{0, 1}; }

  std::string str() const {
    return std::string(pair == MovingPair::p02 ? "02" : "01") + ":" + std::to_string(m1) + "," + std::to_string(m2);
  }
};

namespace detail {

inline int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error(Errc::unknown_label, "bad integer '" + std::string(s) + "'");
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "01:0,1" or "02:-1,0" (optionally parenthesized: "(02):(1,0)").
inline PathLabel parse_path_label(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != '(' && ch != ')' && ch != ' ') s += ch;
  auto colon = s.find(':');
  auto comma = s.find(',');
  if (colon == std::string::npos || comma == std::string::npos || comma < colon)
    throw Error(Errc::unknown_label, "expected 'ij:m1,m2', got '" + std::string(text) + "'");
  std::string pair = s.substr(0, colon);
  PathLabel l;
  if (pair == "02" || pair == "20")
    l.pair = MovingPair::p02;
  else if (pair == "01" || pair == "10")
    l.pair = MovingPair::p01;
  else
    throw Error(Errc::unknown_label, "unknown pair '" + pair + "'");
  l.m1 = detail::parse_int(std::string_view(s).substr(colon + 1, comma - colon - 1));
  l.m2 = detail::parse_int(std::string_view(s).substr(comma + 1));
  if (!l.is_valid()) throw Error(Errc::unknown_label, "no such path " + l.str());
  return l;
}

/// Configuration tag (i j k): x0 sits at omega_i/2, x1 at omega_j/2, x2 at omega_k/2.
using PermTag = std::array<int, 3>;

inline constexpr PermTag identity_tag{0, 1, 2};

inline std::string tag_string(const PermTag& t) {
  return std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
}

inline PermTag parse_tag(std::string_view s) {
  std::string d;
  for (char ch : s)
    if (ch >= '0' && ch <= '9') d += ch;
  if (d.size() != 3) throw Error(Errc::unknown_label, "bad configuration tag '" + std::string(s) + "'");
  PermTag t{d[0] - '0', d[1] - '0', d[2] - '0'};
  std::array<bool, 3> seen{};
  for (int v : t) {
    if (v < 0 || v > 2 || seen[v]) throw Error(Errc::unknown_label, "tag is not a permutation of 012");
    seen[v] = true;
  }
  return t;
}

/// Endpoint of a traversal of gamma_(ij) starting at `tag`: the points
/// sitting at omega_i/2 and omega_j/2 trade places.
inline PermTag apply_transposition(PermTag tag, int i, int j) {
  for (int& v : tag) {
    if (v == i)
      v = j;
    else if (v == j)
      v = i;
  }
  return tag;
}

inline TwistedCycle vanishing_cycle(const PathLabel& label) {
  if (!label.is_elementary())
    throw Error(Errc::unknown_label, "no direct vanishing cycle for " + label.str() + " (use a composition word)");
  const TwistedCycle s01 = generator(Gen::s01), s20 = generator(Gen::s20);
  const TwistedCycle w1 = generator(Gen::w1), w2 = generator(Gen::w2);
  if (label.pair == MovingPair::p02) return label.m1 == -1 ? -s20 - w1 - w2 : -s20 - w2;
  return label.m2 == -1 ? s01 - w1 - w2 : s01 - w1;
}

/// xi + (-c-1) / <delta, delta^dual> * <xi, delta^dual> * delta.
inline TwistedCycle pl_transform(const TwistedCycle& xi, const TwistedCycle& delta) {
  RationalFunctionC self = intersect(delta, delta);
  if (self.is_zero()) throw Error(Errc::self_intersection_zero, "vanishing cycle has zero self-intersection");
  RationalFunctionC k = (-RationalFunctionC::c() - 1) / self * intersect(xi, delta);
  if (k.is_zero()) return xi;
  return xi + k * delta;
}

struct ConnectionMatrix {
  Matrix<RationalFunctionC> matrix;
  PermTag source = identity_tag;
  PermTag target = identity_tag;
};

inline ConnectionMatrix connection_matrix(const PathLabel& label) {
  TwistedCycle delta = vanishing_cycle(label);
  ConnectionMatrix out{Matrix<RationalFunctionC>(4, 4), identity_tag, identity_tag};
  for (std::size_t nu = 0; nu < 4; ++nu) {
    Coeffs4 image = pl_transform(generator(reduced_basis[nu]), delta).basis_coords();
    for (std::size_t mu = 0; mu < 4; ++mu) out.matrix(mu, nu) = image[mu];
  }
  auto [i, j] = label.moving();
  out.target = apply_transposition(identity_tag, i, j);
  return out;
}

/// The displayed reference matrices for the four elementary paths, parsed
/// from their entry strings.
inline Matrix<RationalFunctionC> reference_connection_matrix(const PathLabel& label) {
  using Rows = std::array<std::array<const char*, 4>, 4>;
  Rows rows;
  if (label == PathLabel{MovingPair::p02, -1, 0})
    rows = {{{"1", "0", "0", "0"}, {"c", "-c", "c-1", "-c+1"}, {"c", "-c-1", "c", "-c+1"}, {"c", "-c-1", "c-1", "-c+2"}}};
  else if (label == PathLabel{MovingPair::p02, 1, 0})
    rows = {{{"1", "0", "0", "0"}, {"c", "-c", "c-1", "0"}, {"0", "0", "1", "0"}, {"c", "-c-1", "c-1", "1"}}};
  else if (label == PathLabel{MovingPair::p01, 0, -1})
    rows = {{{"-c", "1", "-c+1", "c-1"}, {"0", "1", "0", "0"}, {"c+1", "-1", "c", "-c+1"}, {"c+1", "-1", "c-1", "-c+2"}}};
  else if (label == PathLabel{MovingPair::p01, 0, 1})
    rows = {{{"-c", "1", "0", "c-1"}, {"0", "1", "0", "0"}, {"c+1", "-1", "1", "-c+1"}, {"0", "0", "0", "1"}}};
  else
    throw Error(Errc::unknown_label, "no reference matrix for " + label.str());
  Matrix<RationalFunctionC> m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = RationalFunctionC::parse(rows[i][j]);
  return m;
}

inline const std::array<PathLabel, 4>& elementary_labels() {
  static const std::array<PathLabel, 4> labels{PathLabel{MovingPair::p02, -1, 0}, PathLabel{MovingPair::p02, 1, 0},
                                                PathLabel{MovingPair::p01, 0, -1}, PathLabel{MovingPair::p01, 0, 1}};
  return labels;
}

/// One factor gamma^exponent of a path word.  `from` optionally pins the
/// configuration the factor must start at.
struct WordFactor {
  PathLabel label;
  int exponent = 1;
  std::optional<PermTag> from;
};

using PathWord = std::vector<WordFactor>;

/// Product of the factor matrices as written: the rightmost factor acts
/// first.  Tags are chained from `source`; a pinned `from` that disagrees
/// raises CompositionMismatch.
inline ConnectionMatrix compose(const PathWord& word, PermTag source = identity_tag) {
  ConnectionMatrix out{Matrix<RationalFunctionC>::identity(4), source, source};
  PermTag tag = source;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->exponent == 0) throw Error(Errc::unknown_label, "zero exponent in path word");
    if (it->from && *it->from != tag)
      throw Error(Errc::composition_mismatch, it->label.str() + " expected to start at q(" + tag_string(*it->from) +
                                                  ") but the word reaches q(" + tag_string(tag) + ")");
    Matrix<RationalFunctionC> m = power(connection_matrix(it->label).matrix, it->exponent);
    out.matrix = m * out.matrix;
    if (it->exponent % 2 != 0) {
      auto [i, j] = it->label.moving();
      tag = apply_transposition(tag, i, j);
    }
  }
  out.target = tag;
  return out;
}

/// Word realizing gamma_(02)^{+-1,2} through the elementary paths.
inline PathWord composite_word(const PathLabel& label) {
  if (label.pair == MovingPair::p02 && label.m2 == 2 && (label.m1 == 1 || label.m1 == -1)) {
    int e = label.m1;
    PathLabel a{MovingPair::p01, 0, 1}, b{MovingPair::p01, 0, -1}, g{MovingPair::p02, label.m1, 0};
    return {{a, -e, {}}, {b, -e, {}}, {g, e, {}}, {b, e, {}}, {a, e, {}}};
  }
  throw Error(Errc::unknown_label, "no known decomposition for " + label.str());
}

/// Parses whitespace-separated factors "01:0,1^-1", optionally pinned with
/// "@102".  A single composite label expands to its known word.
inline PathWord parse_word(std::string_view text) {
  PathWord word;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    WordFactor f;
    std::string_view t = tok;
    if (auto at = t.find('@'); at != std::string_view::npos) {
      f.from = parse_tag(t.substr(at + 1));
      t = t.substr(0, at);
    }
    if (auto caret = t.find('^'); caret != std::string_view::npos) {
      f.exponent = detail::parse_int(t.substr(caret + 1));
      t = t.substr(0, caret);
    }
    f.label = parse_path_label(detail::trim(t));
    word.push_back(f);
  }
  if (word.empty()) return word;
  if (word.size() == 1 && !word[0].label.is_elementary()) {
    PathWord expanded = composite_word(word[0].label);
    if (word[0].exponent != 1) throw Error(Errc::unknown_label, "powers of composite labels are not supported");
    return expanded;
  }
  for (const auto& f : word)
    if (!f.label.is_elementary())
      throw Error(Errc::unknown_label, f.label.str() + " is not elementary; spell it out as a word");
  return word;
}

inline std::string word_string(const PathWord& word) {
  std::string out;
  for (const auto& f : word) {
    if (!out.empty()) out += " ";
    out += f.label.str();
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
    if (f.from) out += "@" + tag_string(*f.from);
  }
  return out;
}

/// Complex-arithmetic Picard-Lefschetz transform at a fixed value of c, on
/// J-indexed coordinate vectors.  `delta_dual` holds the coefficients of
/// delta with c -> 1/c applied.
inline std::array<std::complex<double>, 5> pl_transform_at(const std::array<std::complex<double>, 5>& xi,
                                                           const std::array<std::complex<double>, 5>& delta,
                                                           const std::array<std::complex<double>, 5>& delta_dual,
                                                           std::complex<double> c0) {
  auto m = intersection_matrix_at(c0);
  auto pair = [&](const std::array<std::complex<double>, 5>& a, const std::array<std::complex<double>, 5>& b) {
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) s += a[i] * m(i, j) * b[j];
    return s;
  };
  std::complex<double> k = (-c0 - 1.0) / pair(delta, delta_dual) * pair(xi, delta_dual);
  std::array<std::complex<double>, 5> r = xi;
  for (std::size_t i = 0; i < 5; ++i) r[i] += k * delta[i];
  return r;
}

inline Matrix<std::complex<double>> connection_matrix_at(const PathLabel& label, std::complex<double> c0) {
  auto delta_sym = vanishing_cycle(label);
  std::array<std::complex<double>, 5> delta{}, delta_dual{};
  for (std::size_t i = 0; i < 5; ++i) {
    delta[i] = delta_sym.coeffs()[i].eval(c0);
    delta_dual[i] = delta_sym.coeffs()[i].eval(1.0 / c0);
  }
  Matrix<std::complex<double>> out(4, 4);
  for (std::size_t nu = 0; nu < 4; ++nu) {
    std::array<std::complex<double>, 5> e{};
    e[index_of(reduced_basis[nu])] = 1.0;
    auto img = pl_transform_at(e, delta, delta_dual, c0);
    // fold (12) back onto J'
    std::complex<double> a12 = img[index_of(Gen::s12)];
    img[index_of(Gen::s01)] -= a12;
    img[index_of(Gen::s20)] -= a12;
    for (std::size_t mu = 0; mu < 4; ++mu) out(mu, nu) = img[index_of(reduced_basis[mu])];
  }
  return out;
}

}  // namespace ellhyp

#pragma once

// Points and paths of the configuration space: the special points
// q_(ijk), the singular loci and the explicit paths gamma_(ij)^{m1,m2}.

#include <string>
#include <vector>

#include "ellhyp/local_system.hpp"
#include "ellhyp/picard_lefschetz.hpp"

namespace ellhyp {

namespace detail {
inline cplx half_period(int k, const Lattice& L) { return 0.5 * (k == 0 ? L.omega0() : L.omega(k)); }
}  // namespace detail

/// q_(ijk) = (omega_i/2, omega_j/2, omega_k/2), with x2 projected so the sum
/// is exactly zero.
inline Configuration special_configuration(const PermTag& tag, const Lattice& L) {
  return Configuration::from_pair(detail::half_period(tag[0], L), detail::half_period(tag[1], L), L);
}

enum class LocusKind { collision, divergence };

/// D^{ij} (x_i - x_j in the lattice) or D^i_inf (x_i in the lattice).
struct Locus {
  LocusKind kind;
  int i = 0, j = 0;
  friend bool operator==(const Locus&, const Locus&) = default;
  std::string str() const {
    if (kind == LocusKind::collision) return "D^{" + std::to_string(i) + std::to_string(j) + "}";
    return "D^" + std::to_string(i) + "_inf";
  }
};

inline std::vector<Locus> singular_membership(const PointTriple& x, const Lattice& L) {
  double tol = 1e-9 * L.scale();
  std::vector<Locus> out;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (L.contains(x[i] - x[j], tol)) out.push_back({LocusKind::collision, i, j});
  for (int i = 0; i < 3; ++i)
    if (L.contains(x[i], tol)) out.push_back({LocusKind::divergence, i, 0});
  return out;
}

inline std::vector<Locus> singular_membership(const Configuration& q) {
  return singular_membership(q.points(), q.lattice());
}

/// Representatives along gamma_(ij)^{m1,m2} at parameter s, without any
/// validity check.
inline PointTriple path_triple(MovingPair pair, int m1, int m2, double s, const Lattice& L) {
  cplx shift = 0.5 * s * (double(m1) * L.omega1() + double(m2) * L.omega2());
  cplx x0 = detail::half_period(0, L) + shift;
  if (pair == MovingPair::p02) {
    cplx x1 = detail::half_period(1, L);
    return {{x0, x1, -x0 - x1}};
  }
  cplx x1 = detail::half_period(1, L) - shift;
  return {{x0, x1, -x0 - x1}};
}

/// q_(ij)^{m1,m2}: the path formula at s = 1/2.
inline PointTriple singular_point(MovingPair pair, int m1, int m2, const Lattice& L) {
  return path_triple(pair, m1, m2, 0.5, L);
}

inline Configuration path_point(const PathLabel& label, double s, const Lattice& L, double eps_det = 0.05) {
  if (!label.is_valid()) throw Error(Errc::unknown_label, "unknown path label " + label.str());
  if (s < 0.0 || s > 1.0) throw Error(Errc::invalid_configuration, "path parameter outside [0, 1]");
  if (std::abs(s - 0.5) <= eps_det)
    throw Error(Errc::in_deformation_window, "parameter lies in the deformation window around 1/2");
  auto x = path_triple(label.pair, label.m1, label.m2, s, L);
  return Configuration::from_pair(x[0], x[1], L);
}

}  // namespace ellhyp

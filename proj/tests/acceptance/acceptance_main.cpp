// Acceptance suite: one PASS/FAIL line per criterion, with runtimes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "ellhyp/ellhyp.hpp"

using namespace ellhyp;
using RF = RationalFunctionC;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Matrix<RF> parse_rows(const std::vector<std::vector<const char*>>& rows) {
  Matrix<RF> m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = RF::parse(rows[i][j]);
  return m;
}

Verdict intersection_exact() {
  Verdict v;
  const std::vector<std::vector<const char*>> golden{{"(-c-1)/(c-1)", "1/(c-1)", "c/(c-1)", "0", "0"},
                                                     {"c/(c-1)", "(-c-1)/(c-1)", "1/(c-1)", "0", "0"},
                                                     {"1/(c-1)", "c/(c-1)", "(-c-1)/(c-1)", "0", "0"},
                                                     {"0", "0", "0", "0", "1"},
                                                     {"0", "0", "0", "-1", "0"}};
  const auto& m = intersection_matrix();
  auto text = render(m);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) v.require(text[i][j] == golden[i][j], "entry " + std::to_string(i) + std::to_string(j));
  v.require(m == parse_rows(golden), "matrix equality");
  RF cof = intersection_cofactor_22();
  v.require(cof == RF::parse("(c^2+c+1)/(c-1)^2"), "cofactor");
  v.detail << " cofactor_22=" << cof.str();
  return v;
}

Verdict connection_exact() {
  Verdict v;
  const std::vector<std::pair<PathLabel, std::vector<std::vector<const char*>>>> golden{
      {{MovingPair::p02, -1, 0}, {{"1", "0", "0", "0"}, {"c", "-c", "c-1", "-c+1"}, {"c", "-c-1", "c", "-c+1"}, {"c", "-c-1", "c-1", "-c+2"}}},
      {{MovingPair::p02, 1, 0}, {{"1", "0", "0", "0"}, {"c", "-c", "c-1", "0"}, {"0", "0", "1", "0"}, {"c", "-c-1", "c-1", "1"}}},
      {{MovingPair::p01, 0, -1}, {{"-c", "1", "-c+1", "c-1"}, {"0", "1", "0", "0"}, {"c+1", "-1", "c", "-c+1"}, {"c+1", "-1", "c-1", "-c+2"}}},
      {{MovingPair::p01, 0, 1}, {{"-c", "1", "0", "c-1"}, {"0", "1", "0", "0"}, {"c+1", "-1", "1", "-c+1"}, {"0", "0", "0", "1"}}},
  };
  for (const auto& [label, rows] : golden) {
    bool ok = connection_matrix(label).matrix == parse_rows(rows);
    v.require(ok, label.str());
    v.detail << " " << label.str() << (ok ? ":match" : ":mismatch");
  }
  return v;
}

Verdict derived_exact() {
  Verdict v;
  const RF c = RF::c();
  const std::vector<RF> charpoly{-c, 3 * c - 1, 3 - 3 * c, c - 3, RF(1)};  // (x-1)^3 (x+c)
  for (const auto& label : elementary_labels()) {
    auto m = connection_matrix(label).matrix;
    v.require(determinant(m) == -c, "det " + label.str());
    v.require(characteristic_polynomial(m) == charpoly, "charpoly " + label.str());
  }
  const auto& m = intersection_matrix();
  v.require(m.map([](const RF& r) { return r.substitute_inverse(); }).transpose() == m.scaled(RF(-1)), "antisymmetry");
  v.require(rank(m) == 4, "rank");
  auto ker = kernel(m);
  bool ker_ok = ker.size() == 1 && !ker[0][0].is_zero() && ker[0][1] == ker[0][0] && ker[0][2] == ker[0][0] &&
                ker[0][3].is_zero() && ker[0][4].is_zero();
  v.require(ker_ok, "kernel (1,1,1,0,0)");
  v.detail << " det=-c charpoly=(x-1)^3(x+c) rank=" << rank(m);
  return v;
}

Verdict kernel_numerics() {
  Verdict v;
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> u(-0.4, 0.4), cell(0.1, 0.9);
  std::vector<Lattice> lattices{make_lattice(1.0, cplx(0, 1)), make_lattice(cplx(1.0 + u(rng), u(rng)), cplx(u(rng), 1.0 + u(rng)))};
  double worst_parity = 0, worst_quasi = 0, worst_fd = 0, worst_leg = 0, worst_wpp = 0;
  for (const auto& L : lattices) {
    worst_leg = std::max(worst_leg, L.legendre_residual());
    for (int k = 0; k < 20; ++k) {
      cplx z = L.point(cell(rng), cell(rng));
      auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
      worst_parity = std::max({worst_parity, rel(sigma(-z, L), -sigma(z, L)), rel(zeta(-z, L), -zeta(z, L)),
                               rel(wp(-z, L), wp(z, L)), rel(wp_prime(-z, L), -wp_prime(z, L))});
      for (int i = 1; i <= 2; ++i) {
        cplx expect = -std::exp(L.eta(i) * (z + 0.5 * L.omega(i))) * sigma(z, L);
        worst_quasi = std::max(worst_quasi, std::abs(sigma(z + L.omega(i), L) - expect) / std::abs(expect));
      }
      const double h = 1e-5;
      worst_fd = std::max(worst_fd, rel((zeta(z + h, L) - zeta(z - h, L)) / (2 * h), -wp(z, L)));
      cplx p = wp(z, L), dp = wp_prime(z, L);
      cplx rhs = 4.0 * p * p * p - L.g2() * p - L.g3();
      worst_wpp = std::max(worst_wpp, std::abs(dp * dp - rhs) / std::abs(rhs));
    }
  }
  v.require(worst_parity < 1e-12, "parity");
  v.require(worst_quasi < 1e-10, "sigma quasi-periodicity");
  v.require(worst_fd < 1e-6, "zeta' = -wp");
  v.require(worst_leg < 1e-12, "Legendre");
  v.require(worst_wpp < 1e-10, "wp' equation");
  v.detail << " parity=" << worst_parity << " quasi=" << worst_quasi << " fd=" << worst_fd << " legendre=" << worst_leg
           << " wp'^2=" << worst_wpp;
  return v;
}

Verdict local_system_numerics() {
  Verdict v;
  const Lattice L = make_lattice(1.0, cplx(0, 1));
  Configuration q = Configuration::from_pair(cplx(-0.31, -0.22), cplx(0.41, 0.05), L);
  auto records = numeric_report(q, AlphaParam::make(cplx(0.3, 0.1)));
  for (const auto& r : records) {
    if (r.check == "I1" || r.check == "I2" || r.check.rfind("monodromy", 0) == 0 || r.check == "ellipticity") {
      v.require(r.pass, r.check);
      v.detail << " " << r.check << "=" << r.value;
    }
  }
  Configuration q012 = special_configuration(identity_tag, L);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  double worst = 0;
  for (int n = 0; n < 20;) {
    cplx t = L.point(u(rng), u(rng));
    if (CutSet(q012).distance_to_punctures(t) < 0.02) continue;
    ++n;
    cplx ref = 0.5 * wp_prime(t, L);
    worst = std::max(worst, std::abs(g_value(t, q012) - ref) / std::abs(ref));
  }
  v.require(worst < 1e-9, "g = wp'/2 at q(012)");
  v.detail << " |g-wp'/2|=" << worst;
  return v;
}

Verdict regularized_integrals() {
  Verdict v;
  const Lattice L = make_lattice(1.0, cplx(0, 1));
  Configuration q = special_configuration(identity_tag, L);
  BranchState base = canonical_basepoint(q);
  double worst_eps = 0, worst_rel = 0;
  for (cplx alpha : {cplx(0.3), cplx(0.3, 0.1)}) {
    AlphaParam a = AlphaParam::make(alpha);
    std::array<cplx, 3> f{};
    std::size_t k = 0;
    for (Gen mu : {Gen::s01, Gen::s12, Gen::s20}) {
      std::array<cplx, 3> byeps{};
      std::size_t e = 0;
      for (double s : {0.02, 0.03, 0.05}) byeps[e++] = integrate(build_cycle(mu, q, a, s * L.scale(), base), a).value;
      for (std::size_t j = 1; j < 3; ++j)
        worst_eps = std::max(worst_eps, std::abs(byeps[j] - byeps[0]) / std::max(1.0, std::abs(byeps[0])));
      f[k++] = byeps[0];
    }
    double fmax = std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])});
    worst_rel = std::max(worst_rel, std::abs(f[0] + f[1] + f[2]) / fmax);
  }
  v.require(worst_eps < 1e-8, "epsilon independence");
  v.require(worst_rel < 1e-6, "homology relation");
  v.detail << " eps_delta=" << worst_eps << " relation=" << worst_rel;
  return v;
}

Verdict vanishing_cycles() {
  Verdict v;
  const Lattice L = make_lattice(1.0, cplx(0, 1));
  AlphaParam a = AlphaParam::make(0.3);
  for (const auto& label : {PathLabel{MovingPair::p01, 0, 1}, PathLabel{MovingPair::p02, 1, 0}}) {
    auto mags = vanishing_limit(label, a, {0.30, 0.40, 0.45, 0.48}, L);
    bool decreasing = true;
    for (std::size_t k = 1; k < mags.size(); ++k) decreasing = decreasing && mags[k] < mags[k - 1];
    double ratio = mags.back() / mags.front();
    v.require(decreasing, label.str() + " decreasing");
    v.require(ratio < 0.2, label.str() + " ratio");
    v.detail << " " << label.str() << " ratio=" << ratio;
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "intersection matrix and cofactor, exact", 0.1, intersection_exact},
      {2, "four connection matrices from Picard-Lefschetz, exact", 0.1, connection_exact},
      {3, "determinants, characteristic polynomials, antisymmetry, rank, kernel", 0.1, derived_exact},
      {4, "elliptic kernel identities on two lattices", 5.0, kernel_numerics},
      {5, "local system: abelian integrals, monodromy, ellipticity, g = wp'/2", 10.0, local_system_numerics},
      {6, "regularized integrals: epsilon independence and relation", 30.0, regularized_integrals},
      {7, "vanishing-cycle limit", 30.0, vanishing_cycles},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs < c.budget_s;
    bool pass = v.pass && in_budget;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s (%.3f s, budget %.1f s)%s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_s, in_budget ? "" : " [over budget]", v.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include <catch_amalgamated.hpp>

#include <random>

#include "ellhyp/picard_lefschetz.hpp"

using namespace ellhyp;
using RF = RationalFunctionC;

namespace {

RF rf(const char* s) { return RF::parse(s); }

Matrix<RF> parse_matrix(const std::vector<std::vector<const char*>>& rows) {
  Matrix<RF> m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rf(rows[i][j]);
  return m;
}

RF random_rf(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  Polynomial n{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
  Polynomial den{Rational(d(rng)), Rational(d(rng) == 0 ? 1 : 2), Rational(1)};
  if (den.eval(Rational(0)) == 0 && den.degree() <= 0) den = Polynomial(1);
  return RF(n, den);
}

/// Small polynomial over one of 1, c, c-1, c+1: the denominators the pairing
/// produces, which keeps exact sums of products at moderate degree.
RF random_sparse_rf(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3), pick(0, 3);
  Polynomial n{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
  const char* dens[] = {"1", "c", "c-1", "c+1"};
  return RF(n) / rf(dens[pick(rng)]);
}

TwistedCycle random_sparse_cycle(std::mt19937& rng) {
  Coeffs5 v;
  for (auto& x : v) x = random_sparse_rf(rng);
  return TwistedCycle(v);
}

TwistedCycle random_cycle(std::mt19937& rng) {
  Coeffs5 v;
  for (auto& x : v) x = random_rf(rng);
  return TwistedCycle(v);
}

}  // namespace

TEST_CASE("rational functions normalize and render") {
  CHECK(rf("-(c+1)/(c-1)").str() == "(-c-1)/(c-1)");
  CHECK(rf("1/(c-1)").str() == "1/(c-1)");
  CHECK(rf("c/(c-1)").str() == "c/(c-1)");
  CHECK(rf("(c^2+c+1)/(c-1)^2").str() == "(c^2+c+1)/(c-1)^2");
  CHECK(rf("(c^2-1)/(c+1)").str() == "c-1");
  CHECK(rf("c").substitute_inverse().str() == "1/c");
  CHECK(rf("0").str() == "0");
  CHECK(rf("2c - 2").str() == "2*c-2");
  CHECK(rf("1/(c-1)").substitute_inverse() == rf("c/(1-c)"));
  CHECK(rf("c^-2") == rf("1/(c*c)"));
  CHECK_THROWS_AS(rf("c+"), Error);
  CHECK_THROWS_AS(rf("(c"), Error);
  CHECK_THROWS_AS(rf("1/0"), Error);
}

TEST_CASE("rational function arithmetic is a field") {
  std::mt19937 rng(7);
  for (int k = 0; k < 30; ++k) {
    RF a = random_rf(rng), b = random_rf(rng), x = random_rf(rng);
    CHECK((a + b) * x == a * x + b * x);
    if (!a.is_zero()) CHECK(a * a.inverse() == RF(1));
    CHECK(a.substitute_inverse().substitute_inverse() == a);
    std::complex<double> c0(0.3, 0.7);
    CHECK(std::abs((a * b).eval(c0) - a.eval(c0) * b.eval(c0)) < 1e-9 * (1 + std::abs(a.eval(c0) * b.eval(c0))));
  }
}

TEST_CASE("generators and reduction") {
  CHECK(generator(Gen::s01)[Gen::s01] == RF(1));
  CHECK(parse_generator("omega1") == Gen::w1);
  CHECK_THROWS_AS(parse_generator("(03)"), Error);
  auto r = reduce_to_basis(generator(Gen::s12));
  CHECK(r == -generator(Gen::s01) - generator(Gen::s20));
  CHECK(reduce_to_basis(generator(Gen::s01) + generator(Gen::s12) + generator(Gen::s20)) == TwistedCycle());
  CHECK(reduce_to_basis(generator(Gen::w2)) == generator(Gen::w2));
  std::mt19937 rng(3);
  for (int k = 0; k < 10; ++k) {
    auto x = random_cycle(rng);
    CHECK(reduce_to_basis(reduce_to_basis(x)) == reduce_to_basis(x));
    CHECK(dualize(dualize(x)) == x);
  }
  CHECK(dualize(RF::c() * generator(Gen::w1))[Gen::w1] == rf("1/c"));
  CHECK(dualize(rf("1/(c-1)") * generator(Gen::w1))[Gen::w1] == rf("-c/(c-1)"));
}

TEST_CASE("intersection matrix matches the displayed form") {
  auto golden = parse_matrix({{"-(c+1)/(c-1)", "1/(c-1)", "c/(c-1)", "0", "0"},
                              {"c/(c-1)", "-(c+1)/(c-1)", "1/(c-1)", "0", "0"},
                              {"1/(c-1)", "c/(c-1)", "-(c+1)/(c-1)", "0", "0"},
                              {"0", "0", "0", "0", "1"},
                              {"0", "0", "0", "-1", "0"}});
  CHECK(intersection_matrix() == golden);
  CHECK(intersection_cofactor_22() == rf("(c^2+c+1)/(c-1)^2"));
  CHECK(intersection_cofactor_22().str() == "(c^2+c+1)/(c-1)^2");
  auto text = render(intersection_matrix());
  CHECK(text[0][0] == "(-c-1)/(c-1)");
  CHECK(text[3][4] == "1");
  CHECK(text[4][3] == "-1");
}

TEST_CASE("pairing properties") {
  const auto& m = intersection_matrix();
  auto twisted = m.map([](const RF& r) { return r.substitute_inverse(); }).transpose();
  CHECK(twisted == m.scaled(RF(-1)));
  CHECK(rank(m) == 4);
  CHECK(rank_check() == 4);
  auto ker = kernel(m);
  REQUIRE(ker.size() == 1);
  RF s = ker[0][0];
  std::vector<RF> expect{s, s, s, RF(), RF()};
  CHECK(ker[0] == expect);

  CHECK(intersect(generator(Gen::s01), generator(Gen::s20)) == rf("c/(c-1)"));
  CHECK(intersect(generator(Gen::w1), generator(Gen::w2)) == RF(1));
  CHECK(intersect(generator(Gen::w2), generator(Gen::w1)) == RF(-1));
  auto rel = generator(Gen::s01) + generator(Gen::s12) + generator(Gen::s20);
  std::mt19937 rng(11);
  for (int k = 0; k < 5; ++k) CHECK(intersect(rel, random_cycle(rng)).is_zero());

  auto delta = generator(Gen::s01) - generator(Gen::w1);
  CHECK(intersect(delta, delta) == rf("-(c+1)/(c-1)"));

  for (int k = 0; k < 8; ++k) {
    auto x = random_sparse_cycle(rng), y = random_sparse_cycle(rng), z = random_sparse_cycle(rng);
    RF a = random_sparse_rf(rng);
    CHECK(intersect(a * x + y, z) == a * intersect(x, z) + intersect(y, z));
    CHECK(intersect(z, a * x + y) == a.substitute_inverse() * intersect(z, x) + intersect(z, y));
  }

  std::mt19937 crng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    std::complex<double> c0(u(crng), u(crng));
    if (std::abs(c0) < 0.1 || std::abs(c0 - 1.0) < 0.1) continue;
    auto num = intersection_matrix_at(c0);
    std::complex<double> d = -(c0 + 1.0) / (c0 - 1.0), a = 1.0 / (c0 - 1.0), b = c0 / (c0 - 1.0);
    CHECK(std::abs(num(0, 0) - d) < 1e-12);
    CHECK(std::abs(num(0, 1) - a) < 1e-12);
    CHECK(std::abs(num(1, 0) - b) < 1e-12);
    CHECK(std::abs(num(4, 3) + 1.0) < 1e-12);
  }
}

TEST_CASE("path labels and configurations tags") {
  auto l = parse_path_label("01:0,1");
  CHECK(l.is_elementary());
  CHECK(l.str() == "01:0,1");
  CHECK(parse_path_label("(02):(-1,0)") == PathLabel{MovingPair::p02, -1, 0});
  CHECK_FALSE(parse_path_label("02:1,2").is_elementary());
  CHECK_THROWS_AS(parse_path_label("03:1,0"), Error);
  CHECK_THROWS_AS(parse_path_label("01:5,5"), Error);
  CHECK_THROWS_AS(vanishing_cycle(parse_path_label("02:1,2")), Error);
}

TEST_CASE("vanishing cycles") {
  auto s01 = generator(Gen::s01), s20 = generator(Gen::s20), w1 = generator(Gen::w1), w2 = generator(Gen::w2);
  CHECK(vanishing_cycle({MovingPair::p02, -1, 0}) == -s20 - w1 - w2);
  CHECK(vanishing_cycle({MovingPair::p02, 1, 0}) == -s20 - w2);
  CHECK(vanishing_cycle({MovingPair::p01, 0, -1}) == s01 - w1 - w2);
  CHECK(vanishing_cycle({MovingPair::p01, 0, 1}) == s01 - w1);
}

TEST_CASE("Picard-Lefschetz transform") {
  auto delta = vanishing_cycle({MovingPair::p01, 0, 1});
  CHECK(pl_transform(delta, delta) == -RF::c() * delta);
  CHECK(pl_transform(generator(Gen::w1), delta) == generator(Gen::w1));
  CHECK(pl_transform(generator(Gen::s01), delta) == -RF::c() * generator(Gen::s01) + (RF::c() + 1) * generator(Gen::w1));
  CHECK_THROWS_AS(pl_transform(generator(Gen::s01), generator(Gen::w1)), Error);

  // Orthogonal complement is fixed.
  std::mt19937 rng(19);
  for (const auto& label : elementary_labels()) {
    auto d = vanishing_cycle(label);
    RF dd = intersect(d, d);
    for (int k = 0; k < 4; ++k) {
      auto x = random_cycle(rng).reduce_to_basis();
      auto perp = x - (intersect(x, d) / dd) * d;
      CHECK(intersect(perp, d).is_zero());
      CHECK(pl_transform(perp, d) == perp);
    }
  }
}

TEST_CASE("connection matrices reproduce the displayed matrices") {
  auto golden = [](const std::vector<std::vector<const char*>>& rows) { return parse_matrix(rows); };
  CHECK(connection_matrix({MovingPair::p02, -1, 0}).matrix ==
        golden({{"1", "0", "0", "0"}, {"c", "-c", "c-1", "-c+1"}, {"c", "-c-1", "c", "-c+1"}, {"c", "-c-1", "c-1", "-c+2"}}));
  CHECK(connection_matrix({MovingPair::p02, 1, 0}).matrix ==
        golden({{"1", "0", "0", "0"}, {"c", "-c", "c-1", "0"}, {"0", "0", "1", "0"}, {"c", "-c-1", "c-1", "1"}}));
  CHECK(connection_matrix({MovingPair::p01, 0, -1}).matrix ==
        golden({{"-c", "1", "-c+1", "c-1"}, {"0", "1", "0", "0"}, {"c+1", "-1", "c", "-c+1"}, {"c+1", "-1", "c-1", "-c+2"}}));
  CHECK(connection_matrix({MovingPair::p01, 0, 1}).matrix ==
        golden({{"-c", "1", "0", "c-1"}, {"0", "1", "0", "0"}, {"c+1", "-1", "1", "-c+1"}, {"0", "0", "0", "1"}}));
  for (const auto& label : elementary_labels()) {
    auto m = connection_matrix(label).matrix;
    CHECK(m == reference_connection_matrix(label));
    CHECK(determinant(m) == -RF::c());
    auto cp = characteristic_polynomial(m);
    // (x-1)^3 (x+c) = x^4 + (c-3)x^3 + (3-3c)x^2 + (3c-1)x - c
    std::vector<RF> expect{-RF::c(), 3 * RF::c() - 1, 3 - 3 * RF::c(), RF::c() - 3, RF(1)};
    CHECK(cp == expect);
    CHECK(inverse(m) * m == Matrix<RF>::identity(4));
  }
  // Row reading does not reproduce the displayed (01):(0,1) matrix.
  auto m = connection_matrix({MovingPair::p01, 0, 1}).matrix;
  CHECK_FALSE(m.transpose() == reference_connection_matrix({MovingPair::p01, 0, 1}));
}

TEST_CASE("specialization agrees with complex arithmetic") {
  std::complex<double> c0 = std::exp(2.0 * std::numbers::pi * std::complex<double>(0, 1) * std::complex<double>(0.3, 0.1));
  for (const auto& label : elementary_labels()) {
    auto exact = connection_matrix(label).matrix;
    auto num = connection_matrix_at(label, c0);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(exact(i, j).eval(c0) - num(i, j)) < 1e-12);
  }
}

TEST_CASE("composition") {
  CHECK(compose({}).matrix == Matrix<RF>::identity(4));
  PathLabel a{MovingPair::p01, 0, 1};
  CHECK(compose({{a, 1, {}}, {a, -1, {}}}).matrix == Matrix<RF>::identity(4));
  auto word = composite_word({MovingPair::p02, 1, 2});
  auto cm = compose(word);
  CHECK(determinant(cm.matrix) == -RF::c());
  CHECK(tag_string(cm.target) == "210");
  auto parsed = parse_word("01:0,1^-1 01:0,-1^-1 02:1,0 01:0,-1 01:0,1");
  CHECK(compose(parsed).matrix == cm.matrix);
  CHECK(compose(parse_word("02:1,2")).matrix == cm.matrix);
  // the displayed word for the -1 case inverts an elementary factor
  CHECK(determinant(compose(parse_word("02:-1,2")).matrix) == (-RF::c()).inverse());
  // rightmost factor acts first
  PathLabel b{MovingPair::p02, 1, 0};
  CHECK(compose({{b, 1, {}}, {a, 1, {}}}).matrix == connection_matrix(b).matrix * connection_matrix(a).matrix);
  CHECK_NOTHROW(compose(parse_word("02:1,0@102 01:0,1@012")));
  CHECK_THROWS_AS(compose(parse_word("02:1,0@012 01:0,1@012")), Error);
  CHECK_THROWS_AS(parse_word("01:2,1 01:0,1"), Error);
}

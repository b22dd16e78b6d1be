#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "stackres/blowup.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace stackres;

namespace {

MPoly P(const std::string& text, Field field = Field(), std::vector<std::string> vars = {}) {
  return parse_polynomial(text, field, vars);
}

const std::vector<std::string> kMulti = {"x1'", "x2'", "s", "u"};

}  // namespace

TEST_CASE("weighted blow-up charts") {
  auto b = weighted_blowup({3, 2, 6}, {"x1", "x2"}, Field());
  REQUIRE(b.charts.size() == 2);
  CHECK(b.charts[0].label == "x1' != 0");
  CHECK(b.charts[0].stabilizer_order == 3);
  CHECK(b.charts[1].stabilizer_order == 2);
  CHECK(b.deligne_mumford);
  CHECK(b.fan.rays == std::vector<LatticePoint>{{1, 0}, {3, 2}, {0, 1}});

  for (unsigned p : {2u, 3u}) {
    Field fp = Field::prime(p);
    auto wb = weighted_blowup({p + 1, p, p * (p + 1)}, {"x1", "x2"}, fp);
    CHECK(wb.charts[0].stabilizer_order == p + 1);
    CHECK(wb.charts[1].stabilizer_order == p);
    // (s, x2') -> (zeta^-1 s, zeta^-1 x2')
    CHECK(wb.charts[0].slice == std::array<std::string, 2>{"x2'", "s"});
    CHECK(wb.charts[0].stabilizer_weights == std::array<std::int64_t, 2>{-1, -1});
    CHECK(wb.charts[0].deligne_mumford);
    CHECK_FALSE(wb.charts[1].deligne_mumford);
    CHECK_FALSE(wb.deligne_mumford);
    CHECK(wb.processing_order == std::vector<std::size_t>{0, 1});

    MPoly f = P("x1^" + std::to_string(p) + " - x2^" + std::to_string(p + 1), fp);
    auto pt = proper_transform(f, wb);
    CHECK(pt.alpha == p * (p + 1));
    CHECK_FALSE(pt.beta.has_value());
    CHECK(pt.f_prime == P("x1'^" + std::to_string(p) + " - x2'^" + std::to_string(p + 1), fp, wb.target_variables));
    MPoly restricted = chart_restriction(pt, wb, wb.charts[0]);
    CHECK(restricted == P("1 - x2'^" + std::to_string(p + 1), fp, {"x2'", "s"}));
    // The slice origin s = x2' = 0 is not on the transform.
    CHECK_FALSE(restricted.evaluate({fp.zero(), fp.zero()}).is_zero());
    CHECK(recompose_at_unit(pt, wb) == f);
  }

  auto standard = weighted_blowup({1, 1, 2}, {"y", "x"}, Field::prime(5));
  CHECK(standard.charts[0].stabilizer_order == 1);
  CHECK(standard.charts[1].stabilizer_order == 1);
  CHECK_THROWS_AS(weighted_blowup({2, 4, 4}, {"x", "y"}, Field()), Error);
}

TEST_CASE("multi-weighted fan") {
  auto fan = multiweighted_fan({3, 4, 12}, 3);
  CHECK(fan.rays == std::vector<LatticePoint>{{1, 0}, {3, 4}, {1, 2}, {0, 1}});
  CHECK(fan.determinants() == std::vector<std::int64_t>{4, 2, 1});
  auto cusp3 = multiweighted_fan({3, 2, 6}, 3);
  CHECK(cusp3.rays[2] == LatticePoint{1, 1});
  CHECK(cusp3.determinants() == std::vector<std::int64_t>{2, 1, 1});
  auto cusp2 = multiweighted_fan({3, 2, 6}, 2);
  CHECK(cusp2.rays[1] == LatticePoint{2, 3});
  CHECK(cusp2.rays[2] == LatticePoint{1, 2});
  CHECK(cusp2.determinants() == std::vector<std::int64_t>{3, 1, 1});
  CHECK_THROWS_AS(multiweighted_fan({3, 2, 6}, 5), Error);
  CHECK_THROWS_AS(multiweighted_fan({3, 2, 6}, 0), Error);
}

TEST_CASE("multi-weighted fan properties") {
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (std::int64_t w1 = 1; w1 <= 30; ++w1)
      for (std::int64_t w2 = 1; w2 <= 30; ++w2) {
        if (std::gcd(w1, w2) != 1 || (w1 * w2) % p != 0) continue;
        auto fan = multiweighted_fan({w1, w2, 1}, p);
        const auto& w = fan.rays[1];
        const auto& u = fan.rays[2];
        CHECK(w[0] % p == 0);
        // u lies strictly between w and e2.
        CHECK(determinant(w, u) >= 1);
        CHECK(u[0] == 1);
        for (auto d : fan.determinants()) {
          CHECK(d >= 1);
          CHECK(d % p != 0);
        }
        auto b = multiweighted_blowup({w1, w2, 1}, {"a", "b"}, Field::prime(p));
        for (std::size_t i = 0; i < 3; ++i) {
          CHECK(b.charts[i].stabilizer_order == fan.determinants()[i]);
          CHECK(b.charts[i].deligne_mumford);
        }
      }
}

TEST_CASE("multi-weighted blow-up of the order seven example") {
  Field f3 = Field::prime(3);
  MPoly f = P(fixtures::kSevenOrder, f3);
  auto analysis = compute_invariant_and_center(f);
  auto b = multiweighted_blowup(analysis.reduced, analysis.polyhedron.working.variables(), f3);
  CHECK_FALSE(b.swapped);
  CHECK(b.kappa == 2);
  CHECK(b.target_variables == kMulti);
  REQUIRE(b.charts.size() == 3);
  CHECK(b.charts[0].label == "x2'*u != 0");
  CHECK(b.charts[1].label == "x1'*x2' != 0");
  CHECK(b.charts[2].label == "x1'*s != 0");
  CHECK(b.charts[0].stabilizer_order == 4);
  CHECK(b.charts[1].stabilizer_order == 2);
  CHECK(b.charts[2].stabilizer_order == 1);
  // (x1', s) -> (zeta^{w1} x1', zeta^-1 s) and (s, u) -> (xi^-1 s, xi^{w1} u).
  CHECK(b.charts[0].stabilizer_weights == std::array<std::int64_t, 2>{-1, -1});
  CHECK(b.charts[1].stabilizer_weights == std::array<std::int64_t, 2>{1, 1});

  auto pt = proper_transform(analysis.polyhedron.working, b);
  CHECK(pt.alpha == 28);
  CHECK(pt.beta == 11);
  CHECK(pt.f_prime == P("x2'^7*u^3 + x1'^4*x2'^4*u + x1'^7*x2'^2*s + x1'^9*x2'*s^3 + x1'^11*s^5 + x1'^6*x2'^3*s^2*u", f3, kMulti));
  CHECK(chart_restriction(pt, b, b.charts[2]).evaluate_at(1, f3.zero()) == P("x2'^2 + x2' + 1", f3, {"x2'", "u"}));
  CHECK(chart_restriction(pt, b, b.charts[0]).evaluate_at(1, f3.zero()) == P("1 + x1'^4", f3, {"x1'", "s"}));
  CHECK(chart_restriction(pt, b, b.charts[1]) == P("u^3 + u + s + s^3 + s^5 + s^2*u", f3, {"s", "u"}));
  CHECK(recompose_at_unit(pt, b) == f);
}

TEST_CASE("multi-weighted cusp in characteristic two") {
  Field f2 = Field::prime(2);
  MPoly f = P("x2^2 - x1^3", f2);
  auto a = compute_invariant_and_center(f);
  CHECK(a.reduced == ReducedCenter{2, 3, 6});
  auto b = multiweighted_blowup(a.reduced, f.variables(), f2);
  CHECK(b.kappa == 2);
  auto pt = proper_transform(f, b);
  // Oracle: x2'^2 s^6 u^4 - x1'^3 s^6 u^3 divided by s^6 u^3.
  CHECK(pt.f_prime == P("x2'^2*u - x1'^3", f2, kMulti));
  CHECK(pt.alpha == 6);
  CHECK(pt.beta == 3);
}

TEST_CASE("orientation swap keeps the user's labels") {
  Field f3 = Field::prime(3);
  MPoly f = P(fixtures::kTangentSolve, f3);
  auto a = compute_invariant_and_center(f);
  CHECK(a.reduced == ReducedCenter{11, 3, 33});
  auto b = multiweighted_blowup(a.reduced, a.polyhedron.working.variables(), f3);
  CHECK(b.swapped);
  CHECK(b.source_variables == std::vector<std::string>{"x", "y"});
  CHECK(b.w1 == 3);
  CHECK(b.w2 == 11);
  CHECK(b.kappa == 4);
  auto pt = proper_transform(a.polyhedron.working, b);
  CHECK(recompose_at_unit(pt, b) == a.polyhedron.working.in_ring(b.source_variables));
}

TEST_CASE("transform identity and exceptional exponents on random inputs") {
  std::mt19937_64 rng(515);
  for (unsigned p : {2u, 3u, 5u}) {
    Field fp = Field::prime(p);
    for (int k = 0; k < 60; ++k) {
      MPoly f = testgen::random_poly(fp, {"x1", "x2"}, 8, 6, rng, 1);
      if (f.is_zero()) continue;
      std::int64_t w1 = std::uniform_int_distribution<std::int64_t>(1, 9)(rng);
      std::int64_t w2 = std::uniform_int_distribution<std::int64_t>(1, 9)(rng);
      if (std::gcd(w1, w2) != 1) continue;
      ReducedCenter rc{w1, w2, w1 * w2};
      auto wb = weighted_blowup(rc, f.variables(), fp);
      auto pt = proper_transform(f, wb);
      CHECK(pt.alpha == weighted_order(f, {w1, w2}));
      CHECK(recompose_at_unit(pt, wb) == f);
      CHECK(pt.f_prime.min_degree_in(2) == 0);
      if ((w1 * w2) % p != 0) continue;
      auto mb = multiweighted_blowup(rc, f.variables(), fp);
      auto mt = proper_transform(f, mb);
      MPoly oriented = f.in_ring(mb.source_variables);
      CHECK(mt.alpha == weighted_order(oriented, {mb.w1, mb.w2}));
      CHECK(mt.beta == weighted_order(oriented, {1, mb.kappa}));
      CHECK(recompose_at_unit(mt, mb) == f.in_ring(mb.source_variables));
      CHECK(mt.f_prime.min_degree_in(2) == 0);
      CHECK(mt.f_prime.min_degree_in(3) == 0);
    }
  }
}

TEST_CASE("admissibility matches the exceptional exponent") {
  for (const auto& fx : fixtures::all()) {
    MPoly f = fixtures::parse(fx);
    CAPTURE(fx.name);
    CenterAnalysis a;
    try {
      a = compute_invariant_and_center(f);
    } catch (const PurePowerError&) {
      continue;
    }
    auto b = weighted_blowup(a.reduced, a.polyhedron.working.variables(), f.field());
    auto pt = proper_transform(a.polyhedron.working, b);
    CHECK(pt.alpha == a.reduced.ell);
  }
}

TEST_CASE("dual fans") {
  CHECK(dual_fan_check({{6, 0}, {4, 1}, {0, 4}}).rays == multiweighted_fan({3, 4, 12}, 3).rays);
  CHECK(dual_fan_check(integral_closure_generators({3, 4, 12}, 16)) == multiweighted_fan({3, 4, 12}, 3));
  CHECK(dual_fan_check({{1, 0}, {0, 1}}).rays == std::vector<LatticePoint>{{1, 0}, {1, 1}, {0, 1}});
  CHECK(dual_fan_check({{2, 0}, {1, 2}, {0, 3}}).rays == std::vector<LatticePoint>{{1, 0}, {3, 2}, {0, 1}});
  CHECK_THROWS_AS(dual_fan_check({}), Error);
  CHECK_THROWS_AS(make_fan({{1, 0}, {2, 2}, {0, 1}}), Error);
  CHECK_THROWS_AS(make_fan({{1, 0}, {1, 2}, {2, 1}, {0, 1}}), Error);
}

TEST_CASE("controlled transform of the valuation ideal is the irrelevant ideal") {
  Field f3 = Field::prime(3);
  auto b = multiweighted_blowup({3, 4, 12}, {"x1", "x2"}, f3);
  auto ct = controlled_transform(integral_closure_generators({3, 4, 12}, 3 * 4 + 4), b);
  auto rad = monomial_radical(ct, 4);
  // (x2' u, x1' x2', x1' s)
  std::vector<Exponents> expected = {{0, 1, 0, 1}, {1, 1, 0, 0}, {1, 0, 1, 0}};
  std::sort(expected.begin(), expected.end(), [](const Exponents& a, const Exponents& c) { return graded_lex_greater(a, c); });
  CHECK(rad == expected);

  for (unsigned p : {2u, 3u, 5u})
    for (std::int64_t w1 = 1; w1 <= 12; ++w1)
      for (std::int64_t w2 = 1; w2 <= 12; ++w2) {
        if (std::gcd(w1, w2) != 1 || (w1 * w2) % p != 0) continue;
        auto mb = multiweighted_blowup({w1, w2, 1}, {"x1", "x2"}, Field::prime(p));
        ReducedCenter oriented{mb.w1, mb.w2, 1};
        auto gens = integral_closure_generators(oriented, mb.w1 * mb.w2 + mb.w2);
        CHECK(dual_fan_check(gens) == mb.fan);
        CHECK(monomial_radical(controlled_transform(gens, mb), 4) == expected);
      }
}

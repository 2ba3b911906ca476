#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetvar/poly.hpp"
#include "support/test_support.hpp"

using namespace jetvar;
using namespace jetvar::testing;

namespace {
const VariableId y = field_var(0);
const VariableId c0 = field_var(100, true);
const VariableId c1 = field_var(101, true);

GradedPoly P(const VariableId& v) { return GradedPoly::variable(v); }
}  // namespace

TEST_CASE("normalize canonicalizes raw products") {
  SUBCASE("one odd transposition flips the coefficient") {
    NormalizedTerm t = normalize({{c1, 1}, {c0, 1}}, 1);
    CHECK(t.coeff == Rational(-1));
    GradedMonomial expect;
    CHECK(GradedMonomial::multiply(GradedMonomial::of(c0), GradedMonomial::of(c1), expect) == 1);
    CHECK(t.monomial == expect);
  }
  SUBCASE("odd square vanishes") {
    NormalizedTerm t = normalize({{c0, 1}, {c0, 1}}, 1);
    CHECK(is_zero_rat(t.coeff));
    CHECK(normalize({{c0, 2}}, 1).coeff == Rational(0));
  }
  SUBCASE("even variables commute freely and merge exponents") {
    NormalizedTerm t = normalize({{y, 1}, {c0, 1}, {y, 1}}, 3);
    CHECK(t.coeff == Rational(3));
    CHECK(t.monomial.exponent(y) == 2);
    CHECK(t.monomial.exponent(c0) == 1);
    CHECK(t.monomial.total_degree() == 3);
  }
  SUBCASE("renormalizing a normal form is the identity") {
    NormalizedTerm t = normalize({{y, 2}, {c0, 1}, {c1, 1}}, rat(5, 3));
    std::vector<std::pair<VariableId, std::int32_t>> back;
    for (const auto& f : t.monomial.factors()) back.emplace_back(f.var, f.exp);
    NormalizedTerm again = normalize(back, t.coeff);
    CHECK(again.coeff == t.coeff);
    CHECK(again.monomial == t.monomial);
  }
}

TEST_CASE("poly_mul distributes and respects parity signs") {
  SUBCASE("odd pair anticommutes") {
    GradedPoly ab = P(c0) * P(c1);
    GradedPoly ba = P(c1) * P(c0);
    CHECK(ba == -ab);
    CHECK((ab + ba).is_zero());
  }
  SUBCASE("zero annihilates") {
    GradedPoly z;
    CHECK((z * (P(y) + P(c0))).is_zero());
    CHECK(((P(y) + P(c0)) * z).is_zero());
  }
  SUBCASE("difference of squares with a nilpotent cross term") {
    GradedPoly s = P(c0) * P(c1);
    GradedPoly prod = (P(y) + s) * (P(y) - s);
    CHECK(prod == P(y) * P(y));
  }
}

TEST_CASE("grading_of reports homogeneous gradings and mixtures") {
  SUBCASE("constant") {
    auto g = GradedPoly::constant(rat(7, 2)).grading();
    REQUIRE(g.has_value());
    CHECK(g->parity == 0);
    CHECK(g->ghost == 0);
    CHECK(g->antifield == 0);
  }
  SUBCASE("ghost times antifield accumulates all three numbers") {
    VariableId ghost(Kind::Ghost, 0, Grading{1, 1, 0});
    VariableId sbar(Kind::Antifield, 0, Grading{1, -1, 1});
    auto g = (P(ghost) * P(sbar)).grading();
    REQUIRE(g.has_value());
    CHECK(g->parity % 2 == 0);
    CHECK(g->ghost == 0);
    CHECK(g->antifield == 1);
  }
  SUBCASE("mixed parity yields no grading") {
    CHECK(!(P(y) + P(c0)).grading().has_value());
  }
}

TEST_CASE("graded commutativity and associativity on random homogeneous inputs") {
  Rng rng(12345);
  auto evens = even_pool(3);
  auto odds = odd_pool(4);
  for (int trial = 0; trial < 60; ++trial) {
    GradedPoly a = random_homogeneous(rng, evens, odds, trial % 2);
    GradedPoly b = random_homogeneous(rng, evens, odds, (trial / 2) % 2);
    auto ga = a.grading();
    auto gb = b.grading();
    REQUIRE(ga.has_value());
    REQUIRE(gb.has_value());
    int sign = (ga->parity % 2) * (gb->parity % 2);
    GradedPoly lhs = a * b;
    GradedPoly rhs = b * a;
    CHECK((sign ? lhs + rhs : lhs - rhs).is_zero());
  }
  for (int trial = 0; trial < 60; ++trial) {
    GradedPoly a = random_poly(rng, evens, odds);
    GradedPoly b = random_poly(rng, evens, odds);
    GradedPoly c = random_poly(rng, evens, odds);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("products agree with the exterior-algebra oracle") {
  Rng rng(777);
  auto evens = even_pool(3);
  auto odds = odd_pool(8);
  for (int trial = 0; trial < 40; ++trial) {
    std::map<VariableId, Rational> even_vals;
    for (const auto& v : evens) even_vals[v] = random_rational(rng);
    std::map<VariableId, ExtElem> odd_vals;
    for (std::size_t i = 0; i < odds.size(); ++i) odd_vals[odds[i]] = ext_generator(static_cast<int>(i));

    GradedPoly a = random_poly(rng, evens, odds);
    GradedPoly b = random_poly(rng, evens, odds);
    ExtElem lhs = ext_evaluate(a * b, even_vals, odd_vals);
    ExtElem rhs = ext_mul(ext_evaluate(a, even_vals, odd_vals), ext_evaluate(b, even_vals, odd_vals));
    CHECK(lhs == rhs);
  }
  // Odd variables may also be sent to composite odd elements of the algebra.
  for (int trial = 0; trial < 20; ++trial) {
    std::map<VariableId, Rational> even_vals;
    for (const auto& v : evens) even_vals[v] = random_rational(rng);
    std::map<VariableId, ExtElem> odd_vals;
    for (std::size_t i = 0; i < odds.size(); ++i) {
      ExtElem e = ext_generator(static_cast<int>(i));
      ExtElem triple = ext_mul(ext_mul(ext_generator((i + 1) % 8), ext_generator((i + 3) % 8)),
                               ext_generator((i + 5) % 8));
      odd_vals[odds[i]] = ext_add(e, ext_scale(triple, random_rational(rng)));
    }
    GradedPoly a = random_poly(rng, evens, odds, 3, 2);
    GradedPoly b = random_poly(rng, evens, odds, 3, 2);
    ExtElem lhs = ext_evaluate(a * b, even_vals, odd_vals);
    ExtElem rhs = ext_mul(ext_evaluate(a, even_vals, odd_vals), ext_evaluate(b, even_vals, odd_vals));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("monomial helpers") {
  GradedPoly p = P(y) * P(y) * P(c0) * rat(3, 2);
  REQUIRE(p.term_count() == 1);
  const auto& [mono, coeff] = *p.terms().begin();
  CHECK(coeff == rat(3, 2));
  CHECK(mono.field_degree() == 3);
  GradedPoly with_x = P(base_coordinate(0)) * P(y);
  CHECK(with_x.terms().begin()->first.field_degree() == 1);
  CHECK(with_x.terms().begin()->first.total_degree() == 2);
}

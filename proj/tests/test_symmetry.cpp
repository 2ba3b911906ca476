#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "jetvar/derivation.hpp"
#include "jetvar/errors.hpp"
#include "support/test_support.hpp"

using namespace jetvar;
using namespace jetvar::testing;

namespace {
const VariableId y = field_var(0);
const VariableId c = field_var(100, true);

GradedPoly P(const VariableId& v) { return GradedPoly::variable(v); }

GradedPoly jet(const VariableId& v, std::initializer_list<std::int32_t> axes) {
  return P(v.prolong(MultiIndex(axes)));
}

Errc thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::UnknownModel;  // sentinel: nothing was thrown
}
}  // namespace

TEST_CASE("derivation construction is validated") {
  SUBCASE("jet-prolonged keys are rejected") {
    std::map<VariableId, GradedPoly> comps{{y.prolong(0), P(y)}};
    CHECK(thrown_code([&] { Derivation(0, comps); }) == Errc::GradingInconsistency);
  }
  SUBCASE("base-coordinate keys are rejected") {
    std::map<VariableId, GradedPoly> comps{{base_coordinate(0), P(y)}};
    CHECK(thrown_code([&] { Derivation(0, comps); }) == Errc::GradingInconsistency);
  }
  SUBCASE("parity-inhomogeneous components are rejected") {
    std::map<VariableId, GradedPoly> comps{{y, P(y) + P(c)}};
    CHECK(thrown_code([&] { Derivation(0, comps); }) == Errc::GradingInconsistency);
  }
  SUBCASE("component parity must be generator parity plus derivation parity") {
    std::map<VariableId, GradedPoly> comps{{y, P(c)}};
    CHECK(thrown_code([&] { Derivation(0, comps); }) == Errc::GradingInconsistency);
    CHECK_NOTHROW(Derivation(1, comps));
  }
  SUBCASE("zero components are dropped and absent components read as zero") {
    std::map<VariableId, GradedPoly> comps{{y, P(y)}, {c, GradedPoly()}};
    Derivation d(0, comps);
    CHECK(d.components().size() == 1);
    CHECK(d.component(c).is_zero());
    CHECK(d.component(y) == P(y));
  }
}

TEST_CASE("prolonged action") {
  JetContext ctx{2, 10};
  Derivation d(0, {{y, P(y) * P(y)}});
  SUBCASE("first jets receive one total derivative") {
    CHECK(d.apply(jet(y, {0}), ctx) == P(y) * jet(y, {0}) * 2);
  }
  SUBCASE("second jets receive two") {
    CHECK(d.apply(jet(y, {0, 0}), ctx) ==
          jet(y, {0}) * jet(y, {0}) * 2 + P(y) * jet(y, {0, 0}) * 2);
  }
  SUBCASE("base coordinates are untouched") {
    CHECK(d.apply(P(base_coordinate(1)), ctx).is_zero());
  }
  SUBCASE("graded Leibniz rule on random homogeneous factors") {
    Rng rng(77);
    auto evens = even_pool(2);
    auto odds = odd_pool(2);
    for (int t = 0; t < 30; ++t) {
      int dp = t % 2;
      std::map<VariableId, GradedPoly> comps;
      comps[evens[0]] = random_homogeneous(rng, evens, odds, dp % 2);
      comps[odds[0]] = random_homogeneous(rng, evens, odds, (dp + 1) % 2);
      Derivation dd(dp, comps);
      int pa = (t / 2) % 2;
      GradedPoly a = random_homogeneous(rng, evens, odds, pa);
      GradedPoly b = random_poly(rng, evens, odds);
      GradedPoly rhs = dd.apply(a, ctx) * b;
      GradedPoly tail = a * dd.apply(b, ctx);
      if (dp * pa % 2 == 1) tail = -tail;
      rhs += tail;
      CHECK(dd.apply(a * b, ctx) == rhs);
    }
  }
}

TEST_CASE("variational symmetries of a wave density") {
  JetContext ctx{2, 10};
  GradedPoly L = jet(y, {0}) * jet(y, {0}) * rat(1, 2) - jet(y, {1}) * jet(y, {1}) * rat(1, 2);
  SUBCASE("translation flow is a symmetry") {
    Derivation translate(0, {{y, jet(y, {0})}});
    CHECK(lie_derivative(translate, L, ctx) == translate.apply(L, ctx));
    CHECK(is_variational_symmetry(translate, L, ctx));
  }
  SUBCASE("scaling flow is not") {
    Derivation scale(0, {{y, P(y)}});
    CHECK(lie_derivative(scale, L, ctx) == L * 2);
    CHECK(!is_variational_symmetry(scale, L, ctx));
  }
  SUBCASE("a shift by the base coordinate is a divergence symmetry") {
    Derivation shift(0, {{y, P(base_coordinate(0))}});
    CHECK(lie_derivative(shift, L, ctx) == jet(y, {0}));
    CHECK(is_variational_symmetry(shift, L, ctx));
  }
}

TEST_CASE("commutators") {
  JetContext ctx{2, 10};
  SUBCASE("translations along different axes commute") {
    Derivation d0(0, {{y, jet(y, {0})}});
    Derivation d1(0, {{y, jet(y, {1})}});
    CHECK(commutator(d0, d1, ctx).components().empty());
  }
  SUBCASE("odd self-bracket doubles the square") {
    Derivation d(1, {{y, P(c)}, {c, P(y)}});
    Derivation self = commutator(d, d, ctx);
    auto sq = nilpotency_residuals(d, ctx);
    for (const auto& [gen, res] : sq) CHECK(self.component(gen) == res * 2);
  }
  SUBCASE("bracket action matches the graded commutator of actions") {
    Rng rng(78);
    auto evens = even_pool(2);
    auto odds = odd_pool(2);
    for (int t = 0; t < 30; ++t) {
      int p1 = t % 2;
      int p2 = (t / 2) % 2;
      auto make = [&](int par) {
        std::map<VariableId, GradedPoly> comps;
        comps[evens[0]] = random_homogeneous(rng, evens, odds, par % 2);
        comps[odds[0]] = random_homogeneous(rng, evens, odds, (par + 1) % 2);
        return Derivation(par, comps);
      };
      Derivation d1 = make(p1);
      Derivation d2 = make(p2);
      GradedPoly probe = random_poly(rng, {evens[0], evens[0].prolong(0), evens[1]},
                                     {odds[0], odds[0].prolong(1), odds[1]});
      GradedPoly lhs = commutator(d1, d2, ctx).apply(probe, ctx);
      GradedPoly rhs = d1.apply(d2.apply(probe, ctx), ctx);
      GradedPoly cross = d2.apply(d1.apply(probe, ctx), ctx);
      if (p1 * p2 % 2 == 0) rhs -= cross;
      else rhs += cross;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("nilpotency checks") {
  JetContext ctx{2, 10};
  SUBCASE("even derivations are rejected") {
    Derivation d(0, {{y, P(y)}});
    CHECK(thrown_code([&] { is_nilpotent(d, ctx); }) == Errc::EvenDerivation);
  }
  SUBCASE("shift of the field by a ghost squares to zero") {
    Derivation d(1, {{y, P(c)}});
    CHECK(is_nilpotent(d, ctx));
    CHECK(nilpotency_residuals(d, ctx).empty());
  }
  SUBCASE("a swap between field and ghost does not") {
    Derivation d(1, {{y, P(c)}, {c, P(y)}});
    CHECK(!is_nilpotent(d, ctx));
    auto res = nilpotency_residuals(d, ctx);
    REQUIRE(res.count(y));
    REQUIRE(res.count(c));
    CHECK(res.at(y) == P(y));
    CHECK(res.at(c) == P(c));
  }
  SUBCASE("residuals cover jets appearing through prolongation") {
    Derivation d(1, {{y, jet(c, {0})}, {c, P(y)}});
    auto res = nilpotency_residuals(d, ctx);
    REQUIRE(res.count(y));
    CHECK(res.at(y) == jet(y, {0}));
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>

#include "jetvar/brst.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/models.hpp"
#include "support/test_support.hpp"

using namespace jetvar;
using namespace jetvar::testing;

namespace {
Errc thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::UnknownModel;  // sentinel: nothing was thrown
}

GradedPoly pv(const TheoryModel& m, const std::string& fam, const std::vector<int>& idx,
              MultiIndex jet = {}) {
  return GradedPoly::variable(m.var(fam, idx, jet));
}
}  // namespace

TEST_CASE("builtin roster") {
  auto names = builtin_names();
  REQUIRE(names.size() == 5);
  for (const char* expected :
       {"free-scalar", "maxwell", "yang-mills-su2", "chern-simons-3d", "gravitation-gauge"}) {
    CHECK(std::count(names.begin(), names.end(), expected) == 1);
    CHECK(builtin(expected).name == expected);
  }
  CHECK(thrown_code([] { builtin("nope"); }) == Errc::UnknownModel);
}

TEST_CASE("parameter tensors") {
  SUBCASE("antisymmetric orbit completion") {
    TheoryModel ym = builtin("yang-mills-su2");
    const ParamTensor& c = ym.params.at("c");
    CHECK(c.at({0, 1, 2}) == rat(1));
    CHECK(c.at({1, 0, 2}) == rat(-1));
    CHECK(c.at({2, 0, 1}) == rat(1));
    CHECK(c.at({0, 0, 1}) == rat(0));
  }
  SUBCASE("symmetric completion and invertibility") {
    TheoryModel fs = builtin("free-scalar");
    const ParamTensor& g = fs.params.at("g");
    CHECK(g.at({0, 1}) == rat(0));
    CHECK(g.at({1, 1}) == rat(-1));
  }
  SUBCASE("a singular declared-invertible metric is rejected") {
    ParamTensor g;
    g.name = "g";
    g.shape = {2, 2};
    g.attr_symmetric = true;
    g.attr_invertible = true;
    g.set({0, 0}, 1);
    CHECK(thrown_code([&] { g.finalize(); }) == Errc::GradingInconsistency);
  }
  SUBCASE("a Jacobi violation is rejected") {
    ParamTensor c;
    c.name = "c";
    c.shape = {3, 3, 3};
    c.attr_jacobi = true;
    c.set({0, 1, 2}, 1);
    c.set({1, 0, 2}, 1);
    CHECK(thrown_code([&] { c.finalize(); }) == Errc::GradingInconsistency);
  }
  SUBCASE("a nonzero repeated index under total antisymmetry is rejected") {
    ParamTensor c;
    c.name = "c";
    c.shape = {3, 3, 3};
    c.attr_totally_antisymmetric = true;
    c.set({0, 1, 1}, 1);
    CHECK(thrown_code([&] { c.finalize(); }) == Errc::GradingInconsistency);
  }
}

TEST_CASE("generator bookkeeping") {
  TheoryModel m = builtin("maxwell");
  SUBCASE("index arity and range are validated") {
    CHECK(thrown_code([&] { m.var("a", {}); }) == Errc::IndexArityMismatch);
    CHECK(thrown_code([&] { m.var("a", {7}); }) == Errc::IndexArityMismatch);
    CHECK(thrown_code([&] { m.var("c", {0}); }) == Errc::IndexArityMismatch);
  }
  SUBCASE("antifield gradings descend from their partners") {
    Grading abar = m.var("abar", {2}).grading();
    CHECK(abar.parity == 1);
    CHECK(abar.ghost == -1);
    CHECK(abar.antifield == 1);
    Grading cbar = m.var("cbar", {}).grading();
    CHECK(cbar.parity == 0);
    CHECK(cbar.ghost == -2);
    CHECK(cbar.antifield == 2);
  }
  SUBCASE("display names") {
    CHECK(m.display_name(m.var("a", {1}, MultiIndex{0, 0})) == "a[1;0,0]");
    CHECK(m.display_name(m.var("c", {})) == "c");
    CHECK(m.display_name(base_coordinate(3)) == "x[3]");
    const GeneratorFamily* ph = m.placeholder_of("a");
    REQUIRE(ph != nullptr);
    CHECK(m.display_name(ph->var({2})) == "E[a;2]");
  }
  SUBCASE("symmetric rank-2 families share slots across the diagonal") {
    TheoryModel grav = builtin("gravitation-gauge");
    CHECK(grav.var("sig", {1, 0}) == grav.var("sig", {0, 1}));
    CHECK(grav.var("sig", {1, 0}) != grav.var("sig", {1, 1}));
    const GeneratorFamily* sig = grav.family("sig");
    REQUIRE(sig != nullptr);
    CHECK(sig->size() == 10);
  }
}

TEST_CASE("gauge operator matches the stored differential on fields") {
  for (const char* name : {"maxwell", "yang-mills-su2", "chern-simons-3d", "gravitation-gauge"}) {
    CAPTURE(name);
    TheoryModel m = builtin(name);
    REQUIRE(m.brst.has_value());
    Derivation u = gauge_operator(m);
    for (const VariableId& gen : m.generators_of_kind(Kind::Field)) {
      CAPTURE(m.display_name(gen));
      CHECK(u.component(gen) == m.brst->component(gen));
    }
  }
}

TEST_CASE("free scalar passes its full report") {
  ModelReport r = verify_model(builtin("free-scalar"));
  CHECK(r.model == "free-scalar");
  CHECK(!r.checks.empty());
  for (const CheckResult& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
}

TEST_CASE("maxwell passes its full report") {
  TheoryModel m = builtin("maxwell");
  ModelReport r = verify_model(m);
  CHECK(r.all_pass());
  SUBCASE("the extension pairs the ghost jet with the vector antifield") {
    REQUIRE(m.extended.has_value());
    GradedPoly expect = m.lagrangian;
    for (int lam = 0; lam < 4; ++lam)
      expect += pv(m, "c", {}, MultiIndex{lam}) * pv(m, "abar", {lam});
    CHECK(*m.extended == expect);
  }
  SUBCASE("the differential sends the ghost antifield to the divergence of the vector one") {
    Derivation kt = kt_differential(m);
    GradedPoly expect;
    for (int lam = 0; lam < 4; ++lam) expect -= pv(m, "abar", {lam}, MultiIndex{lam});
    CHECK(kt.component(m.var("cbar", {})) == expect);
  }
}

TEST_CASE("yang-mills passes its full report") {
  TheoryModel m = builtin("yang-mills-su2");
  ModelReport r = verify_model(m);
  CHECK(r.all_pass());
  SUBCASE("identity residual is exactly zero") {
    CHECK(verify_ni(m, m.noether[0], field_euler_lagrange(m)).is_zero());
  }
  SUBCASE("stored differential is nilpotent") {
    REQUIRE(m.brst.has_value());
    CHECK(is_nilpotent(*m.brst, m.ctx));
  }
  SUBCASE("extended density satisfies the master equation") {
    REQUIRE(m.extended.has_value());
    CHECK(check_master_equation(*m.extended, m.antibracket_pairing(), m.ctx));
  }
  SUBCASE("a single structure-constant bump destroys nilpotency") {
    ParamTensor c = m.params.at("c");
    c.set({0, 1, 1}, c.at({0, 1, 1}) + 1);
    TheoryModel mutated = yang_mills_model(c, false);
    REQUIRE(mutated.brst.has_value());
    CHECK(!is_nilpotent(*mutated.brst, mutated.ctx));
    CHECK(!mutated.extended.has_value());
  }
}

TEST_CASE("chern-simons passes its full report") {
  TheoryModel m = builtin("chern-simons-3d");
  CHECK(m.noether.size() == 2);
  ModelReport r = verify_model(m);
  CHECK(r.all_pass());
}

TEST_CASE("gravitation gauge sector passes its placeholder report") {
  TheoryModel m = builtin("gravitation-gauge");
  CHECK(!m.has_lagrangian);
  ModelReport r = verify_model(m);
  CHECK(r.all_pass());
  SUBCASE("the transposition residual is variationally trivial") {
    GradedPoly res = placeholder_ni_residual(m, m.noether[0]);
    CHECK(is_variationally_trivial(res, m.ctx));
  }
  SUBCASE("stored differential is nilpotent") {
    REQUIRE(m.brst.has_value());
    CHECK(is_nilpotent(*m.brst, m.ctx));
  }
}

TEST_CASE("parallel verification matches the serial report") {
  ModelReport serial = verify_model(builtin("maxwell"), 1);
  ModelReport parallel = verify_model(builtin("maxwell"), 4);
  REQUIRE(serial.checks.size() == parallel.checks.size());
  for (std::size_t i = 0; i < serial.checks.size(); ++i) {
    CHECK(serial.checks[i].name == parallel.checks[i].name);
    CHECK(serial.checks[i].pass == parallel.checks[i].pass);
  }
}

// Theory-file parser, canonical printer, report serialization, and the
// command-line tool's exit-code contract.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jetvar/calculus.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/models.hpp"
#include "jetvar/parser.hpp"
#include "jetvar/printer.hpp"
#include "jetvar/report.hpp"

using namespace jetvar;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(JETVAR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

const std::string kShare = JETVAR_SHARE_DIR;
const std::string kFixtures = JETVAR_FIXTURE_DIR;

}  // namespace

TEST_CASE("printer emits parseable text that reproduces every builtin model") {
  for (const std::string& n : builtin_names()) {
    CAPTURE(n);
    TheoryModel m = builtin(n);
    std::string text = print_theory(m);
    TheoryModel back = parse_theory(text);
    CHECK(back == m);
  }
}

TEST_CASE("printer output is deterministic") {
  for (const std::string& n : builtin_names()) {
    TheoryModel m = builtin(n);
    CHECK(print_theory(m) == print_theory(m));
    CHECK(print_poly(m.lagrangian, m) == print_poly(m.lagrangian, m));
  }
}

TEST_CASE("shipped theory files match the printer byte for byte and parse back") {
  for (const std::string& n : builtin_names()) {
    CAPTURE(n);
    TheoryModel m = builtin(n);
    std::string file = slurp(kShare + "/" + n + ".thy");
    CHECK(print_theory(m) == file);
    CHECK(parse_theory(file) == m);
  }
}

TEST_CASE("repeated-letter sums expand to the explicit expression") {
  TheoryModel m = builtin("free-scalar");

  GradedPoly implicit = parse_expression("1/2*g[a,b]*y[;a]*y[;b]", m);
  CHECK((implicit - m.lagrangian).is_zero());

  GradedPoly diag = parse_expression("y[;a]*y[;a]", m);
  GradedPoly expl = parse_expression("y[;0]^2 + y[;1]^2", m);
  CHECK((diag - expl).is_zero());

  // The sum ranges over each additive term independently.
  GradedPoly split = parse_expression("y[;a]*y[;a] - y[;b]*y[;b]", m);
  CHECK(split.is_zero());
}

TEST_CASE("derivative syntax matches the total derivative operator") {
  TheoryModel m = builtin("free-scalar");
  GradedPoly inner = parse_expression("y*y[;0]", m);
  GradedPoly via_d = parse_expression("d[1](y*y[;0])", m);
  CHECK((via_d - total_derivative(inner, 1, m.ctx)).is_zero());

  // Summed letters reach inside derivative bodies.
  GradedPoly div = parse_expression("d[a](y[;a])", m);
  GradedPoly expl = parse_expression("y[;0,0] + y[;1,1]", m);
  CHECK((div - expl).is_zero());
}

TEST_CASE("reserved names address base coordinates and placeholder generators") {
  TheoryModel m = builtin("free-scalar");
  GradedPoly x0 = parse_expression("x[0]", m);
  CHECK(x0.to_string() == GradedPoly::variable(base_coordinate(0)).to_string());

  const GeneratorFamily* ph = m.placeholder_of("y");
  REQUIRE(ph != nullptr);
  GradedPoly e = parse_expression("E[y]", m);
  CHECK((e - GradedPoly::variable(ph->var({}))).is_zero());
}

TEST_CASE("power and division suffixes bind to single factors") {
  TheoryModel m = builtin("free-scalar");
  GradedPoly p = parse_expression("3*y^2/4", m);
  GradedPoly q = parse_expression("3/4*y*y", m);
  CHECK((p - q).is_zero());
}

TEST_CASE("empty input is rejected for want of a dimension") {
  try {
    parse_theory("");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SyntaxError);
    CHECK(e.byte_offset().has_value());
  }
}

TEST_CASE("unknown identifiers are reported with position") {
  TheoryModel m = builtin("free-scalar");
  try {
    parse_expression("y*zeta", m);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownIdentifier);
    REQUIRE(e.byte_offset().has_value());
    CHECK(*e.byte_offset() == 2);
    CHECK(std::string(e.what()).find('^') != std::string::npos);
  }
}

TEST_CASE("index-count mismatches are flagged at the offending reference") {
  try {
    parse_theory(slurp(kFixtures + "/arity-error.thy"));
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexArityMismatch);
    CHECK(e.byte_offset().has_value());
  }
}

TEST_CASE("a letter appearing once in a term is rejected") {
  TheoryModel m = builtin("maxwell");
  try {
    parse_expression("a[r]", m);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexArityMismatch);
  }
}

TEST_CASE("conflicting ranges for one letter are rejected") {
  TheoryModel m = builtin("yang-mills-su2");
  try {
    // r ranges over 3 color slots in the ghost, 4 axes on the coordinate.
    parse_expression("c[r]*x[r]", m);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexArityMismatch);
  }
  try {
    parse_expression("h[r,s]*c[r]*a[s,s]", m);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexArityMismatch);
  }
}

TEST_CASE("declarations after an expression block are rejected") {
  std::string text =
      "model \"late\"\ndimension 2\nfield y[] even\n"
      "lagrangian { y*y }\nfield z[] even\n";
  try {
    parse_theory(text);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SyntaxError);
  }
}

TEST_CASE("verification reports serialize to the documented JSON shape") {
  ModelReport r = verify_model(builtin("free-scalar"));
  nlohmann::json j = nlohmann::json::parse(report_json(r));
  REQUIRE(j.contains("model"));
  REQUIRE(j.contains("checks"));
  REQUIRE(j.contains("engine-version"));
  CHECK(j["model"] == "free-scalar");
  CHECK(j["checks"].is_array());
  CHECK(!j["checks"].empty());
  for (const auto& c : j["checks"]) {
    REQUIRE(c.contains("name"));
    REQUIRE(c.contains("status"));
    REQUIRE(c.contains("residual"));
    REQUIRE(c.contains("millis"));
    CHECK((c["status"] == "pass" || c["status"] == "fail"));
    CHECK((c["residual"].is_null() || c["residual"].is_string()));
    CHECK(c["millis"].is_number());
  }
}

TEST_CASE("parallel verification produces the same checks in the same order") {
  TheoryModel m = builtin("maxwell");
  ModelReport serial = verify_model(m, 1);
  ModelReport parallel = verify_model(m, 4);
  REQUIRE(serial.checks.size() == parallel.checks.size());
  for (std::size_t i = 0; i < serial.checks.size(); ++i) {
    CHECK(serial.checks[i].name == parallel.checks[i].name);
    CHECK(serial.checks[i].pass == parallel.checks[i].pass);
  }
}

TEST_CASE("latex rendering produces math-mode markup") {
  TheoryModel m = builtin("maxwell");
  std::string lag = latex_poly(m.lagrangian, m);
  CHECK(lag.find("\\tfrac") != std::string::npos);
  CHECK(lag.find('_') != std::string::npos);
  std::string table = report_latex(verify_model(builtin("free-scalar")));
  CHECK(table.find("\\begin{tabular}") != std::string::npos);
}

TEST_CASE("command-line tool: passing checks exit 0") {
  CHECK(run_cli("verify --model free-scalar") == 0);
  CHECK(run_cli("verify free-scalar") == 0);
  CHECK(run_cli("el --model free-scalar --format json") == 0);
  CHECK(run_cli("brst " + kShare + "/maxwell.thy") == 0);
}

TEST_CASE("command-line tool: failed verification exits 1") {
  CHECK(run_cli("brst " + kFixtures + "/broken-jacobi.thy") == 1);
  CHECK(run_cli("brst " + kFixtures + "/broken-jacobi.thy --format json") == 1);
}

TEST_CASE("command-line tool: usage and parse problems exit 2") {
  CHECK(run_cli("verify " + kFixtures + "/empty.thy") == 2);
  CHECK(run_cli("verify " + kFixtures + "/arity-error.thy") == 2);
  CHECK(run_cli("el --model no-such-model") == 2);
  CHECK(run_cli("definitely-not-a-subcommand") == 2);
  CHECK(run_cli("symmetry --model free-scalar") == 2);  // missing --derivation
  CHECK(run_cli("el --model free-scalar --format yaml") == 2);
}

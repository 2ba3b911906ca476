#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jetvar/brst.hpp"
#include "jetvar/calculus.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/models.hpp"
#include "jetvar/parser.hpp"
#include "jetvar/printer.hpp"
#include "jetvar/report.hpp"

namespace {

using namespace jetvar;

struct Options {
  std::string file;
  std::string model_name;
  std::string format = "text";
  std::string derivation;
  int max_jet_order = 0;
  int jobs = 1;
};

TheoryModel load_model(const Options& o, bool builtin_positional) {
  TheoryModel m;
  if (!o.model_name.empty()) {
    m = builtin(o.model_name);
  } else if (o.file.empty()) {
    throw Error(Errc::UnknownModel, "no input model: pass a theory file or --model <builtin>");
  } else {
    bool is_builtin = false;
    if (builtin_positional)
      for (const std::string& n : builtin_names())
        if (n == o.file) is_builtin = true;
    if (is_builtin) {
      m = builtin(o.file);
    } else {
      std::ifstream in(o.file, std::ios::binary);
      if (!in) throw Error(Errc::UnknownModel, "cannot open theory file '" + o.file + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      m = parse_theory(ss.str());
    }
  }
  if (o.max_jet_order > 0) m.ctx.max_jet_order = o.max_jet_order;
  return m;
}

std::string render(const GradedPoly& p, const TheoryModel& m, const std::string& fmt) {
  return fmt == "latex" ? latex_poly(p, m) : print_poly(p, m);
}

std::string latex_of_var(const VariableId& v, const TheoryModel& m) {
  return latex_poly(GradedPoly::variable(v), m);
}

// Extended density: the stored one, or freshly built from the stored
// differential when the model ships only the ingredients.
GradedPoly extended_density(const TheoryModel& m) {
  if (m.extended) return *m.extended;
  if (!m.has_lagrangian)
    throw Error(Errc::RosterMismatch, "model has no density to extend");
  if (!m.brst)
    throw Error(Errc::RosterMismatch, "model stores no differential to extend with");
  return extend_lagrangian(m.lagrangian, *m.brst, m);
}

int cmd_el(const Options& o) {
  TheoryModel m = load_model(o, false);
  if (!m.has_lagrangian) throw Error(Errc::RosterMismatch, "model has no density");
  EulerLagrangeResult el = field_euler_lagrange(m);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = m.name;
    j["components"] = nlohmann::ordered_json::array();
    for (const auto& [gen, comp] : el)
      j["components"].push_back(
          {{"generator", m.display_name(gen)}, {"expression", print_poly(comp, m)}});
    j["engine-version"] = engine_version();
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "latex") {
    std::cout << "\\begin{align*}\n";
    for (const auto& [gen, comp] : el)
      std::cout << "\\frac{\\delta\\mathcal{L}}{\\delta " << latex_of_var(gen, m) << "} &= "
                << latex_poly(comp, m) << "\\\\\n";
    std::cout << "\\end{align*}\n";
  } else {
    for (const auto& [gen, comp] : el)
      std::cout << "E[" << m.display_name(gen) << "] = " << print_poly(comp, m) << "\n";
  }
  return 0;
}

int cmd_symmetry(const Options& o) {
  TheoryModel m = load_model(o, false);
  if (!m.has_lagrangian) throw Error(Errc::RosterMismatch, "model has no density");
  Derivation d = m.derivation(o.derivation);
  bool ok = is_variational_symmetry(d, m.lagrangian, m.ctx);
  std::string residual;
  if (!ok) {
    GradedPoly dL = lie_derivative(d, m.lagrangian, m.ctx);
    EulerLagrangeResult el = euler_lagrange(dL, dynamical_generators(dL), m.ctx);
    for (const auto& [gen, comp] : el) {
      if (comp.is_zero()) continue;
      if (!residual.empty()) residual += "; ";
      residual += m.display_name(gen) + ": " + render(comp, m, o.format);
    }
  }
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = m.name;
    j["derivation"] = o.derivation;
    j["symmetry"] = ok;
    j["residual"] = ok ? nlohmann::ordered_json() : nlohmann::ordered_json(residual);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "derivation \"" << o.derivation << "\" is "
              << (ok ? "a variational symmetry" : "NOT a variational symmetry") << "\n";
    if (!ok) std::cout << "residual: " << residual << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_current(const Options& o) {
  TheoryModel m = load_model(o, false);
  if (!m.has_lagrangian) throw Error(Errc::RosterMismatch, "model has no density");
  Derivation d = m.derivation(o.derivation);
  std::vector<GradedPoly> J = noether_current(d, m.lagrangian, m.ctx);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = m.name;
    j["derivation"] = o.derivation;
    j["current"] = nlohmann::ordered_json::array();
    for (const GradedPoly& c : J) j["current"].push_back(print_poly(c, m));
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "latex") {
    std::cout << "\\begin{align*}\n";
    for (std::size_t lam = 0; lam < J.size(); ++lam)
      std::cout << "J^{" << lam << "} &= " << latex_poly(J[lam], m) << "\\\\\n";
    std::cout << "\\end{align*}\n";
  } else {
    for (std::size_t lam = 0; lam < J.size(); ++lam)
      std::cout << "J[" << lam << "] = " << print_poly(J[lam], m) << "\n";
  }
  return 0;
}

int cmd_ni(const Options& o) {
  TheoryModel m = load_model(o, false);
  bool all_ok = true;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const NoetherFamily& fam : m.noether) {
    GradedPoly residual;
    bool ok;
    if (m.has_lagrangian) {
      residual = verify_ni(m, fam, field_euler_lagrange(m));
      ok = residual.is_zero();
    } else {
      residual = placeholder_ni_residual(m, fam);
      ok = is_variationally_trivial(residual, m.ctx);
    }
    all_ok = all_ok && ok;
    if (o.format == "json") {
      checks.push_back({{"name", fam.name},
                        {"status", ok ? "pass" : "fail"},
                        {"residual",
                         ok ? nlohmann::ordered_json() : nlohmann::ordered_json(print_poly(residual, m))}});
    } else {
      std::cout << "identity \"" << fam.name << "\": " << (ok ? "verified" : "FAILED") << "\n";
      if (!ok) std::cout << "  residual: " << render(residual, m, o.format) << "\n";
    }
  }
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = m.name;
    j["identities"] = checks;
    std::cout << j.dump(2) << "\n";
  } else if (m.noether.empty()) {
    std::cout << "model declares no identity families\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_kt(const Options& o) {
  TheoryModel m = load_model(o, false);
  Derivation kt = kt_differential(m);
  bool ok = check_kt_nilpotency(kt, m.ctx);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = m.name;
    j["kt-nilpotent"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "Koszul-Tate differential is " << (ok ? "nilpotent" : "NOT nilpotent") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_brst(const Options& o) {
  TheoryModel m = load_model(o, false);
  if (!m.brst) throw Error(Errc::RosterMismatch, "model stores no differential");
  auto residuals = nilpotency_residuals(*m.brst, m.ctx);
  bool ok = residuals.empty();
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = m.name;
    j["nilpotent"] = ok;
    j["residuals"] = nlohmann::ordered_json::array();
    for (const auto& [gen, r] : residuals)
      j["residuals"].push_back(
          {{"generator", m.display_name(gen)}, {"expression", print_poly(r, m)}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "stored differential is " << (ok ? "nilpotent" : "NOT nilpotent") << "\n";
    for (const auto& [gen, r] : residuals)
      std::cout << "  b(b(" << m.display_name(gen) << ")) = " << render(r, m, o.format) << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_master(const Options& o) {
  TheoryModel m = load_model(o, false);
  GradedPoly le = extended_density(m);
  GradedPoly bracket = antibracket(le, le, m.antibracket_pairing(), m.ctx);
  bool ok = is_variationally_trivial(bracket, m.ctx);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = m.name;
    j["master-equation"] = ok;
    j["residual"] = ok ? nlohmann::ordered_json() : nlohmann::ordered_json(print_poly(bracket, m));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "master equation " << (ok ? "holds" : "FAILS") << "\n";
    if (!ok) std::cout << "  self-bracket: " << render(bracket, m, o.format) << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_extend(const Options& o) {
  TheoryModel m = load_model(o, false);
  GradedPoly le = extended_density(m);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = m.name;
    j["extended"] = print_poly(le, m);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render(le, m, o.format) << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o) {
  TheoryModel m = load_model(o, true);
  ModelReport r = verify_model(m, o.jobs);
  if (o.format == "json")
    std::cout << report_json(r);
  else if (o.format == "latex")
    std::cout << report_latex(r);
  else
    std::cout << report_text(r);
  return r.all_pass() ? 0 : 1;
}

// Failure of a verified property exits 1; everything else is a usage,
// parse, or applicability problem and exits 2.
int classify(const Error& e) {
  switch (e.code()) {
    case Errc::NotNilpotent:
    case Errc::NotASymmetry: return 1;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"exact variational calculus for polynomial field theories on jet coordinates"};
  app.require_subcommand(1);

  auto add_common = [&o](CLI::App* s) {
    s->add_option("file", o.file, "theory file (.thy)");
    s->add_option("--model", o.model_name, "use a builtin model instead of a file");
    s->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json", "latex"}));
    s->add_option("--max-jet-order", o.max_jet_order, "override the jet-order cap");
    return s;
  };

  int code = 0;
  auto* el = add_common(app.add_subcommand("el", "print Euler-Lagrange components"));
  el->callback([&] { code = cmd_el(o); });

  auto* sym = add_common(app.add_subcommand("symmetry", "test a named derivation"));
  sym->add_option("--derivation", o.derivation, "derivation name")->required();
  sym->callback([&] { code = cmd_symmetry(o); });

  auto* cur = add_common(app.add_subcommand("current", "conserved current of a symmetry"));
  cur->add_option("--derivation", o.derivation, "derivation name")->required();
  cur->callback([&] { code = cmd_current(o); });

  auto* ni = add_common(app.add_subcommand("ni", "verify the identity tower"));
  ni->callback([&] { code = cmd_ni(o); });

  auto* kt = add_common(app.add_subcommand("kt", "Koszul-Tate nilpotency"));
  kt->callback([&] { code = cmd_kt(o); });

  auto* brst = add_common(app.add_subcommand("brst", "stored-differential nilpotency"));
  brst->callback([&] { code = cmd_brst(o); });

  auto* master = add_common(app.add_subcommand("master", "classical master equation"));
  master->callback([&] { code = cmd_master(o); });

  auto* extend = add_common(app.add_subcommand("extend", "emit the extended density"));
  extend->callback([&] { code = cmd_extend(o); });

  auto* verify = add_common(app.add_subcommand("verify", "full verification report"));
  verify->add_option("--jobs", o.jobs, "run independent checks on N threads");
  verify->callback([&] { code = cmd_verify(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const jetvar::Error& e) {
    if (o.format == "json")
      std::cout << jetvar::error_json(jetvar::errc_name(e.code()), e.what());
    else
      std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}

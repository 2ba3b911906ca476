#include "jetvar/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace jetvar {

std::string report_json(const ModelReport& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = c.pass ? "pass" : "fail";
    if (c.residual)
      e["residual"] = *c.residual;
    else
      e["residual"] = nullptr;
    e["millis"] = c.millis;
    j["checks"].push_back(std::move(e));
  }
  j["engine-version"] = engine_version();
  return j.dump(2) + "\n";
}

std::string report_text(const ModelReport& r) {
  std::string out = "model: " + r.model + "\n";
  std::size_t width = 0;
  for (const CheckResult& c : r.checks) width = std::max(width, c.name.size());
  for (const CheckResult& c : r.checks) {
    out += "  " + c.name + std::string(width - c.name.size(), ' ') + "  " +
           (c.pass ? "pass" : "FAIL") + "  (" + std::to_string(c.millis) + " ms)\n";
    if (!c.pass && c.residual) out += "    residual: " + *c.residual + "\n";
  }
  out += r.all_pass() ? "result: all checks passed\n" : "result: FAILURES PRESENT\n";
  return out;
}

namespace {

std::string latex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '_':
      case '#':
      case '%':
      case '&':
      case '$': out += std::string("\\") + c; break;
      case '^': out += "\\textasciicircum{}"; break;
      case '\\': out += "\\textbackslash{}"; break;
      case '{': out += "\\{"; break;
      case '}': out += "\\}"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string report_latex(const ModelReport& r) {
  std::string out = "\\begin{tabular}{llr}\n";
  out += "\\multicolumn{3}{l}{\\textbf{" + latex_escape(r.model) + "}}\\\\\n";
  out += "check & status & ms\\\\\\hline\n";
  for (const CheckResult& c : r.checks)
    out += latex_escape(c.name) + " & " + (c.pass ? "pass" : "\\textbf{fail}") + " & " +
           std::to_string(c.millis) + "\\\\\n";
  out += "\\end{tabular}\n";
  return out;
}

std::string error_json(const std::string& code, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = {{"code", code}, {"message", message}};
  return j.dump(2) + "\n";
}

}  // namespace jetvar

#include "jetvar/printer.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace jetvar {

namespace {

const char* kind_keyword(Kind k) {
  switch (k) {
    case Kind::Field: return "field";
    case Kind::Ghost: return "ghost";
    case Kind::Antifield: return "antifield";
    case Kind::GhostAntifield: return "ghost_antifield";
    case Kind::BaseCoordinate: break;
  }
  return "field";
}

std::string shape_string(const std::vector<int>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

std::string index_string(const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s;
}

// Splits a canonical expression at its top-level " + " / " - " seams so long
// polynomials wrap to readable lines.  Display names contain no spaces, so
// the seams are unambiguous.
std::string wrap_expr(const std::string& expr, const std::string& indent, std::size_t width) {
  std::vector<std::string> chunks;
  std::size_t pos = 0;
  while (pos < expr.size()) {
    std::size_t plus = expr.find(" + ", pos);
    std::size_t minus = expr.find(" - ", pos);
    std::size_t cut = std::min(plus, minus);
    if (cut == std::string::npos) {
      chunks.push_back(expr.substr(pos));
      break;
    }
    chunks.push_back(expr.substr(pos, cut - pos));
    chunks.push_back(expr.substr(cut + 1, 1));  // "+" or "-"
    pos = cut + 3;
  }
  std::string out = indent;
  std::size_t line = indent.size();
  for (std::size_t i = 0; i < chunks.size(); i += 2) {
    std::string piece = chunks[i];
    if (i + 1 < chunks.size()) piece += " " + chunks[i + 1];
    if (line > indent.size() && line + piece.size() + 1 > width) {
      out += "\n" + indent;
      line = indent.size();
    } else if (line > indent.size()) {
      out += " ";
      line += 1;
    }
    out += piece;
    line += piece.size();
  }
  return out;
}

std::string latex_rational(const Rational& q, bool with_sign) {
  Rational mag = q < 0 ? Rational(-q) : q;
  std::string sign = q < 0 && with_sign ? "-" : "";
  if (mag.get_den() == 1) return sign + mag.get_num().get_str();
  return sign + "\\tfrac{" + mag.get_num().get_str() + "}{" + mag.get_den().get_str() + "}";
}

std::string latex_indices(const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += "\\,";
    s += std::to_string(idx[i]);
  }
  return s;
}

std::string latex_name(const std::string& name) {
  if (name.size() == 1) return name;
  return "\\mathit{" + name + "}";
}

struct LatexFactor {
  std::string body;
  bool decorated = false;  // carries indices/jets, needs parens under ^exp
};

LatexFactor latex_var(const VariableId& v, const TheoryModel& m) {
  if (v.kind() == Kind::BaseCoordinate)
    return {"x^{" + std::to_string(v.slot()) + "}", true};
  const GeneratorFamily* f = m.family_of(v);
  if (!f) return {v.to_string(), true};
  std::vector<int> idx = f->indices_of(v.slot() - f->base_slot);
  std::vector<int> jets = v.jet().expand();
  std::string body = f->placeholder ? "\\mathcal{E}(" + latex_name(f->name) + ")"
                                    : latex_name(f->name);
  if (!idx.empty()) body += "^{" + latex_indices(idx) + "}";
  if (!jets.empty()) {
    if (!idx.empty()) body += "{}";
    body += "_{" + latex_indices(jets) + "}";
  }
  return {body, !idx.empty() || !jets.empty()};
}

}  // namespace

std::string print_rational(const Rational& q) { return q.get_str(); }

std::string print_poly(const GradedPoly& p, const TheoryModel& m) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coef] : p.terms()) {
    bool neg = coef < 0;
    Rational mag = neg ? Rational(-coef) : coef;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (mono.is_unit()) {
      out += mag.get_str();
      continue;
    }
    std::string body;
    if (mag != 1) body = mag.get_str() + "*";
    bool first_factor = true;
    for (const Factor& f : mono.factors()) {
      if (!first_factor) body += "*";
      first_factor = false;
      body += m.display_name(f.var);
      if (f.exp > 1) body += "^" + std::to_string(f.exp);
    }
    out += body;
  }
  return out;
}

std::string latex_poly(const GradedPoly& p, const TheoryModel& m) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coef] : p.terms()) {
    bool neg = coef < 0;
    Rational mag = neg ? Rational(-coef) : coef;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (mono.is_unit()) {
      out += latex_rational(mag, false);
      continue;
    }
    std::string body;
    if (mag != 1) body = latex_rational(mag, false) + "\\,";
    bool first_factor = true;
    for (const Factor& f : mono.factors()) {
      if (!first_factor) body += "\\,";
      first_factor = false;
      LatexFactor lf = latex_var(f.var, m);
      if (f.exp > 1)
        body += lf.decorated ? "\\left(" + lf.body + "\\right)^{" + std::to_string(f.exp) + "}"
                             : lf.body + "^{" + std::to_string(f.exp) + "}";
      else
        body += lf.body;
    }
    out += body;
  }
  return out;
}

std::string print_theory(const TheoryModel& m) {
  std::string out = "# jetvar theory file\n";
  out += "model \"" + m.name + "\"\n";
  out += "dimension " + std::to_string(m.ctx.dim) + "\n";
  out += "jet_order " + std::to_string(m.ctx.max_jet_order) + "\n";

  for (const auto& [name, t] : m.params) {
    out += "\nparam " + name + shape_string(t.shape);
    if (t.attr_symmetric) out += " symmetric";
    if (t.attr_totally_antisymmetric) out += " antisymmetric";
    if (t.attr_jacobi) out += " jacobi";
    if (t.attr_invertible) out += " invertible";
    out += " {\n";
    for (const auto& [idx, val] : t.entries)
      out += "  [" + index_string(idx) + "] = " + val.get_str() + "\n";
    out += "}\n";
  }

  out += "\n";
  for (const GeneratorFamily& f : m.families) {
    if (f.placeholder) continue;
    out += std::string(kind_keyword(f.kind)) + " " + f.name + shape_string(f.shape);
    if (f.kind == Kind::Field || f.kind == Kind::Ghost)
      out += f.base.parity ? " odd" : " even";
    if (f.symmetric) out += " symmetric";
    if (f.kind == Kind::Ghost) out += " stage " + std::to_string(f.stage);
    if (f.kind == Kind::Antifield || f.kind == Kind::GhostAntifield) out += " for " + f.partner;
    out += "\n";
  }

  if (m.has_lagrangian)
    out += "\nlagrangian {\n" + wrap_expr(print_poly(m.lagrangian, m), "  ", 100) + "\n}\n";

  for (const NoetherFamily& ni : m.noether) {
    out += "\nni \"" + ni.name + "\" ghost " + ni.ghost_family + " {\n";
    const GeneratorFamily* gf = m.family(ni.ghost_family);
    for (std::size_t s = 0; s < ni.delta.size(); ++s) {
      std::string gidx = gf ? index_string(gf->indices_of(static_cast<int>(s))) : "";
      for (const auto& [key, val] : ni.delta[s])
        out += "  delta[" + gidx + "] " + m.display_name(key.first.prolong(key.second)) +
               " = " + print_poly(val, m) + "\n";
    }
    out += "}\n";
  }

  auto derivation_rows = [&](const Derivation& d) {
    std::string rows;
    for (const auto& [gen, comp] : d.components())
      rows += "  " + m.display_name(gen) + " = " + print_poly(comp, m) + "\n";
    return rows;
  };

  for (const auto& [name, d] : m.derivations) {
    out += "\nderivation \"" + name + "\" " + (d.is_odd() ? "odd" : "even") + " {\n";
    out += derivation_rows(d);
    out += "}\n";
  }

  if (m.brst) out += "\nbrst {\n" + derivation_rows(*m.brst) + "}\n";

  if (m.extended)
    out += "\nextended {\n" + wrap_expr(print_poly(*m.extended, m), "  ", 100) + "\n}\n";

  return out;
}

}  // namespace jetvar

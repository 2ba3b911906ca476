#include "jetvar/poly.hpp"

#include <cmath>

namespace jetvar {

GradedPoly GradedPoly::constant(Rational c) {
  GradedPoly p;
  if (!is_zero_rat(c)) p.terms_.emplace(GradedMonomial(), std::move(c));
  return p;
}

GradedPoly GradedPoly::variable(const VariableId& v) {
  GradedPoly p;
  p.terms_.emplace(GradedMonomial::of(v), rat(1));
  return p;
}

GradedPoly GradedPoly::term(Rational c, const GradedMonomial& m) {
  GradedPoly p;
  if (!is_zero_rat(c)) p.terms_.emplace(m, std::move(c));
  return p;
}

void GradedPoly::add_term(const GradedMonomial& m, const Rational& c) {
  if (is_zero_rat(c)) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (is_zero_rat(it->second)) terms_.erase(it);
  }
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly GradedPoly::operator+(const GradedPoly& o) const {
  GradedPoly r = *this;
  r += o;
  return r;
}

GradedPoly GradedPoly::operator-(const GradedPoly& o) const {
  GradedPoly r = *this;
  r -= o;
  return r;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
  GradedPoly r;
  GradedMonomial prod;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      int sign = GradedMonomial::multiply(ma, mb, prod);
      if (sign == 0) continue;
      r.add_term(prod, sign > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
    }
  }
  return r;
}

GradedPoly GradedPoly::operator*(const Rational& c) const {
  GradedPoly r;
  if (is_zero_rat(c)) return r;
  for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, Rational(coeff * c));
  return r;
}

std::optional<Grading> GradedPoly::grading() const {
  if (terms_.empty()) return Grading{};
  auto it = terms_.begin();
  Grading g = it->first.grading();
  for (++it; it != terms_.end(); ++it)
    if (!(it->first.grading() == g)) return std::nullopt;
  return g;
}

std::optional<int> GradedPoly::parity() const {
  if (terms_.empty()) return 0;
  auto it = terms_.begin();
  int p = it->first.grading().parity;
  for (++it; it != terms_.end(); ++it)
    if (it->first.grading().parity != p) return std::nullopt;
  return p;
}

GradedPoly GradedPoly::left_partial(const VariableId& v) const {
  GradedPoly r;
  for (const auto& [m, c] : terms_) {
    auto pr = m.left_partial(v);
    if (pr.multiplicity == 0) continue;
    Rational coeff = c * rat(pr.multiplicity);
    if (pr.sign < 0) coeff = -coeff;
    r.add_term(pr.reduced, coeff);
  }
  return r;
}

GradedPoly GradedPoly::right_partial(const VariableId& v) const {
  GradedPoly r;
  for (const auto& [m, c] : terms_) {
    auto pr = m.right_partial(v);
    if (pr.multiplicity == 0) continue;
    Rational coeff = c * rat(pr.multiplicity);
    if (pr.sign < 0) coeff = -coeff;
    r.add_term(pr.reduced, coeff);
  }
  return r;
}

std::set<VariableId> GradedPoly::variables() const {
  std::set<VariableId> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.var);
  return out;
}

int GradedPoly::max_jet_order() const {
  int mx = 0;
  for (const auto& [m, c] : terms_)
    if (int o = m.max_jet_order(); o > mx) mx = o;
  return mx;
}

GradedPoly GradedPoly::filter(const std::function<bool(const GradedMonomial&)>& keep) const {
  GradedPoly r;
  for (const auto& [m, c] : terms_)
    if (keep(m)) r.terms_.emplace(m, c);
  return r;
}

double GradedPoly::evaluate(const std::function<double(const VariableId&)>& point) const {
  double total = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = c.get_d();
    for (const auto& f : m.factors()) v *= std::pow(point(f.var), f.exp);
    total += v;
  }
  return total;
}

std::string GradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = rat_to_string(c);
    if (first) {
      out = cs == "1" && !m.is_unit() ? "" : (cs == "-1" && !m.is_unit() ? "-" : cs);
      if (!m.is_unit()) {
        if (!out.empty() && out != "-") out += "*";
        out += m.to_string();
      } else if (out.empty()) {
        out = cs;
      }
      first = false;
      continue;
    }
    bool negative = cs[0] == '-';
    std::string mag = negative ? cs.substr(1) : cs;
    out += negative ? " - " : " + ";
    if (m.is_unit()) {
      out += mag;
    } else {
      if (mag != "1") out += mag + "*";
      out += m.to_string();
    }
  }
  return out;
}

}  // namespace jetvar

#include "jetvar/monomial.hpp"

#include <cassert>

namespace jetvar {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::BaseCoordinate: return "x";
    case Kind::Field: return "s";
    case Kind::Antifield: return "sbar";
    case Kind::Ghost: return "c";
    case Kind::GhostAntifield: return "cbar";
  }
  return "?";
}

std::string VariableId::to_string() const {
  std::string out = kind_name(kind_) + std::to_string(slot_);
  if (jet_.order() > 0) out += "_" + jet_.to_string();
  return out;
}

GradedMonomial GradedMonomial::of(const VariableId& v, std::int32_t exp) {
  assert(exp >= 1 && (v.is_even() || exp == 1));
  GradedMonomial m;
  m.factors_.push_back({v, exp});
  return m;
}

int GradedMonomial::total_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.exp;
  return d;
}

int GradedMonomial::field_degree() const {
  int d = 0;
  for (const auto& f : factors_)
    if (f.var.kind() != Kind::BaseCoordinate) d += f.exp;
  return d;
}

Grading GradedMonomial::grading() const {
  Grading g;
  for (const auto& f : factors_) {
    const Grading& b = f.var.grading();
    g.parity = static_cast<std::uint8_t>((g.parity + f.exp * b.parity) & 1);
    g.ghost = static_cast<std::int16_t>(g.ghost + f.exp * b.ghost);
    g.antifield = static_cast<std::int16_t>(g.antifield + f.exp * b.antifield);
  }
  return g;
}

std::int32_t GradedMonomial::exponent(const VariableId& v) const {
  for (const auto& f : factors_)
    if (f.var == v) return f.exp;
  return 0;
}

int GradedMonomial::max_jet_order() const {
  int m = 0;
  for (const auto& f : factors_)
    if (int o = f.var.jet().order(); o > m) m = o;
  return m;
}

int GradedMonomial::multiply(const GradedMonomial& a, const GradedMonomial& b,
                             GradedMonomial& out) {
  out.factors_.clear();
  out.factors_.reserve(a.factors_.size() + b.factors_.size());

  // Odd factors of `a` not yet merged past; each factor of `b` taken before
  // them hops over all of them.
  int odd_left_in_a = 0;
  for (const auto& f : a.factors_) odd_left_in_a += f.var.is_odd() ? 1 : 0;

  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.factors_.size() && j < b.factors_.size()) {
    const Factor& fa = a.factors_[i];
    const Factor& fb = b.factors_[j];
    if (fa.var < fb.var) {
      out.factors_.push_back(fa);
      odd_left_in_a -= fa.var.is_odd() ? 1 : 0;
      ++i;
    } else if (fb.var < fa.var) {
      if (fb.var.is_odd() && (odd_left_in_a & 1)) sign = -sign;
      out.factors_.push_back(fb);
      ++j;
    } else {
      if (fa.var.is_odd()) return 0;  // odd variable squared
      out.factors_.push_back({fa.var, fa.exp + fb.exp});
      ++i;
      ++j;
    }
  }
  for (; i < a.factors_.size(); ++i) out.factors_.push_back(a.factors_[i]);
  for (; j < b.factors_.size(); ++j) out.factors_.push_back(b.factors_[j]);
  return sign;
}

GradedMonomial::PartialResult GradedMonomial::left_partial(const VariableId& v) const {
  PartialResult r;
  int odd_before = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Factor& f = factors_[i];
    if (f.var == v) {
      r.multiplicity = f.exp;
      r.sign = (v.is_odd() && (odd_before & 1)) ? -1 : 1;
      r.reduced.factors_ = factors_;
      if (f.exp == 1)
        r.reduced.factors_.erase(r.reduced.factors_.begin() + static_cast<std::ptrdiff_t>(i));
      else
        r.reduced.factors_[i].exp -= 1;
      return r;
    }
    odd_before += f.var.is_odd() ? 1 : 0;
  }
  return r;  // multiplicity 0: derivative vanishes
}

GradedMonomial::PartialResult GradedMonomial::right_partial(const VariableId& v) const {
  PartialResult r = left_partial(v);
  if (r.multiplicity == 0 || v.is_even()) return r;
  // For an odd variable the left and right derivatives differ by the parity
  // of the odd factors on the other side.
  int odd_total = 0;
  for (const auto& f : factors_) odd_total += f.var.is_odd() ? 1 : 0;
  // odd factors after v = total - (before) - 1; flip sign if that is odd.
  // left sign already encodes (-1)^before, so right sign = (-1)^(total-1-before).
  int odd_before = (r.sign == -1) ? 1 : 0;  // parity only
  int after_parity = (odd_total - 1 - odd_before) & 1;
  r.sign = after_parity ? -1 : 1;
  return r;
}

NormalizedTerm normalize(const std::vector<std::pair<VariableId, std::int32_t>>& raw_product,
                         const Rational& coeff) {
  NormalizedTerm result{coeff, GradedMonomial{}};
  if (is_zero_rat(result.coeff)) return result;
  for (const auto& [v, exp] : raw_product) {
    if (exp <= 0) continue;
    if (v.grading().is_odd() && exp > 1) {
      result.coeff = 0;
      result.monomial = GradedMonomial{};
      return result;
    }
    GradedMonomial out;
    int sign = GradedMonomial::multiply(result.monomial, GradedMonomial::of(v, exp), out);
    if (sign == 0) {
      result.coeff = 0;
      result.monomial = GradedMonomial{};
      return result;
    }
    result.coeff *= sign;
    result.monomial = std::move(out);
  }
  return result;
}

std::string GradedMonomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += "*";
    out += factors_[i].var.to_string();
    if (factors_[i].exp != 1) out += "^" + std::to_string(factors_[i].exp);
  }
  return out;
}

}  // namespace jetvar

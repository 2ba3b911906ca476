#include "jetvar/derivation.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

Derivation::Derivation(int parity, std::map<VariableId, GradedPoly> components)
    : parity_(parity & 1) {
  for (auto& [gen, comp] : components) {
    if (comp.is_zero()) continue;
    if (gen.kind() == Kind::BaseCoordinate)
      throw Error(Errc::GradingInconsistency,
                  "vertical derivation cannot move base coordinate " + gen.to_string());
    if (!gen.jet().empty())
      throw Error(Errc::GradingInconsistency,
                  "derivation component must be keyed by a base generator, got " +
                      gen.to_string());
    std::optional<int> p = comp.parity();
    if (!p)
      throw Error(Errc::GradingInconsistency,
                  "component of " + gen.to_string() + " has mixed parity");
    if (*p != ((gen.grading().parity + parity_) & 1))
      throw Error(Errc::GradingInconsistency,
                  "component of " + gen.to_string() + " has parity " + std::to_string(*p) +
                      ", inconsistent with derivation parity " + std::to_string(parity_));
    components_.emplace(gen, std::move(comp));
  }
}

GradedPoly Derivation::component(const VariableId& base) const {
  auto it = components_.find(base.base());
  return it == components_.end() ? GradedPoly() : it->second;
}

GradedPoly Derivation::apply(const GradedPoly& p, const JetContext& ctx) const {
  GradedPoly out;
  for (const VariableId& v : p.variables()) {
    if (v.kind() == Kind::BaseCoordinate) continue;
    auto it = components_.find(v.base());
    if (it == components_.end()) continue;
    out += iterated_total(it->second, v.jet(), ctx) * p.left_partial(v);
  }
  return out;
}

GradedPoly lie_derivative(const Derivation& d, const GradedPoly& L, const JetContext& ctx) {
  return d.apply(L, ctx);
}

bool is_variational_symmetry(const Derivation& d, const GradedPoly& L, const JetContext& ctx) {
  return is_variationally_trivial(lie_derivative(d, L, ctx), ctx);
}

Derivation commutator(const Derivation& d1, const Derivation& d2, const JetContext& ctx) {
  int sign = (d1.parity() & d2.parity()) ? -1 : 1;
  std::map<VariableId, GradedPoly> comps;
  auto accumulate = [&](const std::map<VariableId, GradedPoly>& source, bool first) {
    for (const auto& [gen, comp] : source) {
      GradedPoly piece = first ? d1.apply(comp, ctx) : d2.apply(comp, ctx) * rat(-sign);
      auto [it, inserted] = comps.emplace(gen, piece);
      if (!inserted) it->second += piece;
    }
  };
  accumulate(d2.components(), true);   // d1(v2^A)
  accumulate(d1.components(), false);  // -(-1)^{p1 p2} d2(v1^A)
  for (auto it = comps.begin(); it != comps.end();)
    it = it->second.is_zero() ? comps.erase(it) : std::next(it);
  return Derivation((d1.parity() + d2.parity()) & 1, std::move(comps));
}

std::map<VariableId, GradedPoly> nilpotency_residuals(const Derivation& d,
                                                      const JetContext& ctx) {
  std::map<VariableId, GradedPoly> out;
  for (const auto& [gen, comp] : d.components()) {
    GradedPoly r = d.apply(comp, ctx);
    if (!r.is_zero()) out.emplace(gen, std::move(r));
  }
  return out;
}

bool is_nilpotent(const Derivation& d, const JetContext& ctx) {
  if (!d.is_odd())
    throw Error(Errc::EvenDerivation, "nilpotency is only defined for odd derivations");
  return nilpotency_residuals(d, ctx).empty();
}

}  // namespace jetvar

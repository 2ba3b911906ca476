#include "jetvar/brst.hpp"

#include <algorithm>

#include "jetvar/errors.hpp"

namespace jetvar {

GradedPoly right_euler_lagrange_one(const GradedPoly& L, const VariableId& generator,
                                    const JetContext& ctx) {
  GradedPoly result;
  for (const VariableId& v : L.variables()) {
    if (!(v.base() == generator.base())) continue;
    GradedPoly piece = iterated_total(L.right_partial(v), v.jet(), ctx);
    if (v.jet().order() & 1)
      result -= piece;
    else
      result += piece;
  }
  return result;
}

EulerLagrangeResult field_euler_lagrange(const TheoryModel& m) {
  return euler_lagrange(m.lagrangian, m.generators_of_kind(Kind::Field), m.ctx);
}

EulerLagrangeResult placeholder_euler_lagrange(const TheoryModel& m) {
  EulerLagrangeResult el;
  for (const GeneratorFamily& f : m.families) {
    if (f.kind != Kind::Field || f.placeholder) continue;
    const GeneratorFamily* p = m.placeholder_of(f.name);
    if (!p) throw Error(Errc::RosterMismatch, "no placeholder family for " + f.name);
    for (int i = 0; i < f.size(); ++i)
      el[f.var_at(i)] = GradedPoly::variable(p->var_at(i));
  }
  return el;
}

GradedPoly verify_ni(const TheoryModel& m, const NoetherFamily& ni,
                     const EulerLagrangeResult& el) {
  const GeneratorFamily* ghosts = m.family(ni.ghost_family);
  if (!ghosts || static_cast<std::size_t>(ghosts->size()) != ni.delta.size())
    throw Error(Errc::RosterMismatch,
                "identity family " + ni.name + " does not match ghost family " +
                    ni.ghost_family);
  GradedPoly residual;
  for (std::size_t j = 0; j < ni.delta.size(); ++j) {
    GradedPoly member;
    for (const auto& [key, coeff] : ni.delta[j]) {
      auto it = el.find(key.first);
      if (it == el.end() || it->second.is_zero()) continue;
      member += coeff * iterated_total(it->second, key.second, m.ctx);
    }
    residual += GradedPoly::variable(ghosts->var_at(static_cast<int>(j))) * member;
  }
  return residual;
}

namespace {

// Map from each paired generator to its antifield.
std::map<VariableId, VariableId> antifield_table(const TheoryModel& m) {
  std::map<VariableId, VariableId> out;
  for (const auto& [z, zbar] : m.antibracket_pairing()) out.emplace(z, zbar);
  return out;
}

}  // namespace

Derivation kt_differential(const TheoryModel& m) {
  if (!m.has_lagrangian)
    throw Error(Errc::RosterMismatch, "model fixes no density to differentiate");
  std::map<VariableId, VariableId> antifields = antifield_table(m);
  if (antifields.empty())
    throw Error(Errc::RosterMismatch, "model declares no antifields");

  std::map<VariableId, GradedPoly> comps;
  EulerLagrangeResult el = field_euler_lagrange(m);
  for (const VariableId& field : m.generators_of_kind(Kind::Field)) {
    auto it = antifields.find(field);
    if (it == antifields.end())
      throw Error(Errc::RosterMismatch,
                  "field " + m.display_name(field) + " has no antifield partner");
    auto found = el.find(field);
    if (found != el.end()) comps[it->second] = found->second;
  }

  for (const NoetherFamily& ni : m.noether) {
    const GeneratorFamily* ghosts = m.family(ni.ghost_family);
    if (!ghosts || static_cast<std::size_t>(ghosts->size()) != ni.delta.size())
      throw Error(Errc::RosterMismatch,
                  "identity family " + ni.name + " does not match ghost family " +
                      ni.ghost_family);
    for (std::size_t j = 0; j < ni.delta.size(); ++j) {
      VariableId ghost = ghosts->var_at(static_cast<int>(j));
      auto it = antifields.find(ghost);
      if (it == antifields.end())
        throw Error(Errc::RosterMismatch,
                    "ghost " + m.display_name(ghost) + " has no antifield partner");
      GradedPoly comp;
      for (const auto& [key, coeff] : ni.delta[j]) {
        auto partner = antifields.find(key.first);
        if (partner == antifields.end())
          throw Error(Errc::RosterMismatch,
                      "identity references " + m.display_name(key.first) +
                          " which has no antifield partner");
        comp += coeff * GradedPoly::variable(partner->second.prolong(key.second));
      }
      comps[it->second] = std::move(comp);
    }
  }

  for (auto it = comps.begin(); it != comps.end();)
    it = it->second.is_zero() ? comps.erase(it) : std::next(it);
  return Derivation(1, std::move(comps));
}

bool check_kt_nilpotency(const Derivation& kt, const JetContext& ctx) {
  return is_nilpotent(kt, ctx);
}

Derivation gauge_operator(const TheoryModel& m) {
  std::map<VariableId, GradedPoly> comps;
  for (const NoetherFamily& ni : m.noether) {
    Derivation part = gauge_operator(m, ni);
    for (const auto& [gen, comp] : part.components()) {
      auto [it, inserted] = comps.emplace(gen, comp);
      if (!inserted) it->second += comp;
    }
  }
  for (auto it = comps.begin(); it != comps.end();)
    it = it->second.is_zero() ? comps.erase(it) : std::next(it);
  return Derivation(1, std::move(comps));
}

Derivation gauge_operator(const TheoryModel& m, const NoetherFamily& ni) {
  const GeneratorFamily* ghosts = m.family(ni.ghost_family);
  if (!ghosts || static_cast<std::size_t>(ghosts->size()) != ni.delta.size())
    throw Error(Errc::RosterMismatch,
                "identity family " + ni.name + " does not match ghost family " +
                    ni.ghost_family);
  std::map<VariableId, GradedPoly> comps;
  for (std::size_t j = 0; j < ni.delta.size(); ++j) {
    VariableId ghost = ghosts->var_at(static_cast<int>(j));
    // Regroup the member's coefficients per target generator.
    std::map<VariableId, std::map<MultiIndex, GradedPoly>> per_gen;
    int max_order = 0;
    for (const auto& [key, coeff] : ni.delta[j]) {
      per_gen[key.first][key.second] += coeff;
      max_order = std::max(max_order, key.second.order());
    }
    for (const auto& [gen, family] : per_gen) {
      for (const MultiIndex& lambda : MultiIndex::all_up_to_order(m.ctx.dim, max_order)) {
        GradedPoly eta = eta_component(family, lambda, max_order, m.ctx);
        if (eta.is_zero()) continue;
        GradedPoly piece = GradedPoly::variable(ghost.prolong(lambda)) * eta;
        auto [it, inserted] = comps.emplace(gen, piece);
        if (!inserted) it->second += piece;
      }
    }
  }
  for (auto it = comps.begin(); it != comps.end();)
    it = it->second.is_zero() ? comps.erase(it) : std::next(it);
  return Derivation(1, std::move(comps));
}

bool check_gauge_condition(const TheoryModel& m, const Derivation& u) {
  if (!m.has_lagrangian)
    throw Error(Errc::RosterMismatch, "model fixes no density for the gauge condition");
  EulerLagrangeResult el = field_euler_lagrange(m);
  GradedPoly combination;
  for (const auto& [gen, comp] : u.components()) {
    auto it = el.find(gen);
    if (it == el.end() || it->second.is_zero()) continue;
    combination += comp * it->second;
  }
  return is_variationally_trivial(combination, m.ctx);
}

GradedPoly placeholder_ni_residual(const TheoryModel& m, const NoetherFamily& ni) {
  EulerLagrangeResult el = placeholder_euler_lagrange(m);
  Derivation u = gauge_operator(m, ni);
  GradedPoly combination;
  for (const auto& [gen, comp] : u.components()) {
    auto it = el.find(gen);
    if (it == el.end()) continue;
    combination += comp * it->second;
  }
  return combination - verify_ni(m, ni, el);
}

namespace {

void require_paired(const GradedPoly& L,
                    const std::map<VariableId, VariableId>& reverse_pairing) {
  for (const VariableId& v : L.variables()) {
    if (v.kind() != Kind::Antifield && v.kind() != Kind::GhostAntifield) continue;
    if (!reverse_pairing.count(v.base()))
      throw Error(Errc::UnpairedAntifield,
                  "antifield " + v.base().to_string() + " is not covered by the pairing");
  }
}

}  // namespace

GradedPoly antibracket(const GradedPoly& L1, const GradedPoly& L2,
                       const std::vector<std::pair<VariableId, VariableId>>& pairing,
                       const JetContext& ctx) {
  std::map<VariableId, VariableId> reverse;
  for (const auto& [z, zbar] : pairing) reverse.emplace(zbar.base(), z.base());
  require_paired(L1, reverse);
  require_paired(L2, reverse);

  GradedPoly out;
  for (const auto& [z, zbar] : pairing) {
    GradedPoly r1 = right_euler_lagrange_one(L1, zbar, ctx);
    GradedPoly l2 = euler_lagrange_one(L2, z, ctx);
    if (!r1.is_zero() && !l2.is_zero()) out += r1 * l2;
    GradedPoly r2 = right_euler_lagrange_one(L2, zbar, ctx);
    GradedPoly l1 = euler_lagrange_one(L1, z, ctx);
    if (!r2.is_zero() && !l1.is_zero()) out += r2 * l1;
  }
  return out;
}

bool check_master_equation(const GradedPoly& L,
                           const std::vector<std::pair<VariableId, VariableId>>& pairing,
                           const JetContext& ctx) {
  return is_variationally_trivial(antibracket(L, L, pairing, ctx), ctx);
}

GradedPoly extend_lagrangian(const GradedPoly& L, const Derivation& b, const TheoryModel& m) {
  if (!b.is_odd() || !is_nilpotent(b, m.ctx))
    throw Error(Errc::NotNilpotent, "extension requires a nilpotent odd derivation");
  GradedPoly pairs;
  for (const auto& [z, zbar] : m.antibracket_pairing())
    pairs += GradedPoly::variable(z) * GradedPoly::variable(zbar);
  return L + b.apply(pairs, m.ctx);
}

std::vector<GradedPoly> noether_current(const Derivation& d, const GradedPoly& L,
                                        const JetContext& ctx) {
  GradedPoly drift = lie_derivative(d, L, ctx);
  std::optional<std::vector<GradedPoly>> sigma = divergence_certificate(drift, ctx);
  if (!sigma)
    throw Error(Errc::NotASymmetry, "the Lie derivative of the density is not a divergence");
  LepageData lep = lepage_decompose(L, ctx);
  std::vector<GradedPoly> J(static_cast<std::size_t>(ctx.dim));
  for (int axis = 0; axis < ctx.dim; ++axis)
    J[static_cast<std::size_t>(axis)] =
        (*sigma)[static_cast<std::size_t>(axis)] -
        boundary_contract(lep, d.components(), axis, ctx);
  return J;
}

}  // namespace jetvar

#include "jetvar/calculus.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

GradedPoly total_derivative(const GradedPoly& p, int axis, const JetContext& ctx) {
  GradedPoly out;
  for (const VariableId& v : p.variables()) {
    if (v.kind() == Kind::BaseCoordinate) {
      if (v.slot() == axis) out += p.left_partial(v);
      continue;
    }
    if (v.jet().order() + 1 > ctx.max_jet_order)
      throw Error(Errc::JetOrderExceeded,
                  "total derivative would raise " + v.to_string() + " past jet order " +
                      std::to_string(ctx.max_jet_order));
    out += GradedPoly::variable(v.prolong(axis)) * p.left_partial(v);
  }
  return out;
}

GradedPoly iterated_total(const GradedPoly& p, const MultiIndex& idx, const JetContext& ctx) {
  GradedPoly out = p;
  for (std::int32_t axis : idx.expand()) out = total_derivative(out, axis, ctx);
  return out;
}

GradedPoly euler_lagrange_one(const GradedPoly& L, const VariableId& generator,
                              const JetContext& ctx) {
  GradedPoly result;
  for (const VariableId& v : L.variables()) {
    if (!(v.base() == generator.base())) continue;
    GradedPoly piece = iterated_total(L.left_partial(v), v.jet(), ctx);
    if (v.jet().order() & 1)
      result -= piece;
    else
      result += piece;
  }
  return result;
}

EulerLagrangeResult euler_lagrange(const GradedPoly& L, const std::vector<VariableId>& over,
                                   const JetContext& ctx) {
  EulerLagrangeResult out;
  for (const VariableId& gen : over) out[gen.base()] = euler_lagrange_one(L, gen, ctx);
  return out;
}

std::vector<VariableId> dynamical_generators(const GradedPoly& p) {
  std::set<VariableId> bases;
  for (const VariableId& v : p.variables())
    if (v.kind() != Kind::BaseCoordinate) bases.insert(v.base());
  return {bases.begin(), bases.end()};
}

bool is_variationally_trivial(const GradedPoly& L, const JetContext& ctx) {
  for (const VariableId& gen : dynamical_generators(L))
    if (!euler_lagrange_one(L, gen, ctx).is_zero()) return false;
  return true;
}

namespace {

// Integrate all derivatives off one term of the variation: the coefficient f
// of d_idx(v^gen).  Peels the smallest axis each step; each peel moves one
// derivative onto f with a sign and records the boundary coefficient.
void peel(const VariableId& gen, MultiIndex idx, GradedPoly f, LepageData& out,
          const JetContext& ctx) {
  while (!f.is_zero() && !idx.empty()) {
    int axis = idx.axes().front();
    MultiIndex rest = idx.minus(axis);
    auto [it, inserted] = out.boundary.emplace(BoundaryKey{gen, rest, axis}, f);
    if (!inserted) it->second += f;
    f = -total_derivative(f, axis, ctx);
    idx = std::move(rest);
  }
  if (f.is_zero()) return;
  auto [it, inserted] = out.source.emplace(gen, f);
  if (!inserted) it->second += f;
}

}  // namespace

LepageData lepage_decompose(const GradedPoly& L, const JetContext& ctx) {
  LepageData out;
  for (const VariableId& v : L.variables()) {
    if (v.kind() == Kind::BaseCoordinate) continue;
    peel(v.base(), v.jet(), L.left_partial(v), out, ctx);
  }
  // normalize: drop zero entries so structural comparisons are meaningful
  for (auto it = out.source.begin(); it != out.source.end();)
    it = it->second.is_zero() ? out.source.erase(it) : std::next(it);
  for (auto it = out.boundary.begin(); it != out.boundary.end();)
    it = it->second.is_zero() ? out.boundary.erase(it) : std::next(it);
  return out;
}

GradedPoly boundary_contract(const LepageData& lep,
                             const std::map<VariableId, GradedPoly>& components, int axis,
                             const JetContext& ctx) {
  GradedPoly out;
  for (const auto& [key, f] : lep.boundary) {
    if (key.axis != axis) continue;
    auto it = components.find(key.gen);
    if (it == components.end() || it->second.is_zero()) continue;
    out += iterated_total(it->second, key.rest, ctx) * f;
  }
  return out;
}

GradedPoly eta_component(const std::map<MultiIndex, GradedPoly>& f, const MultiIndex& lambda,
                         int k, const JetContext& ctx) {
  GradedPoly out;
  int budget = k - lambda.order();
  if (budget < 0) return out;
  for (const MultiIndex& sigma : MultiIndex::all_up_to_order(ctx.dim, budget)) {
    MultiIndex total = sigma.plus(lambda);
    auto it = f.find(total);
    if (it == f.end() || it->second.is_zero()) continue;
    Rational weight = rat(1);
    for (std::int32_t axis : total.axes())
      weight *= binomial(total.multiplicity(axis), sigma.multiplicity(axis));
    if (total.order() & 1) weight = -weight;
    out += iterated_total(it->second, sigma, ctx) * weight;
  }
  return out;
}

namespace {

// Antiderivative along `axis` of a polynomial depending only on base
// coordinates: each monomial x^e... gains one power of x^axis and the
// coefficient divides by e+1, so d_axis of the result reproduces the input.
GradedPoly coordinate_antiderivative(const GradedPoly& p, int axis) {
  GradedPoly out;
  VariableId x = base_coordinate(axis);
  GradedMonomial xm = GradedMonomial::of(x);
  for (const auto& [m, c] : p.terms()) {
    GradedMonomial lifted;
    GradedMonomial::multiply(m, xm, lifted);
    out.add_term(lifted, c / rat(m.exponent(x) + 1));
  }
  return out;
}

}  // namespace

std::optional<std::vector<GradedPoly>> divergence_certificate(const GradedPoly& T,
                                                              const JetContext& ctx) {
  GradedPoly field_part = T.filter([](const GradedMonomial& m) { return m.field_degree() > 0; });
  GradedPoly coord_part = T - field_part;

  LepageData lep = lepage_decompose(field_part, ctx);
  if (!lep.source.empty()) return std::nullopt;  // not variationally trivial

  // Contract the boundary data with the identity components v^A = s^A; the
  // result of d_axis-summing that contraction is the field-degree operator
  // applied to T, so dividing each monomial by its field degree undoes it.
  std::map<VariableId, GradedPoly> identity_components;
  for (const VariableId& gen : dynamical_generators(field_part))
    identity_components[gen] = GradedPoly::variable(gen);

  std::vector<GradedPoly> sigma(static_cast<std::size_t>(ctx.dim));
  for (int axis = 0; axis < ctx.dim; ++axis) {
    GradedPoly c = boundary_contract(lep, identity_components, axis, ctx);
    for (const auto& [m, coeff] : c.terms())
      sigma[static_cast<std::size_t>(axis)].add_term(m, coeff / rat(m.field_degree()));
  }

  if (!coord_part.is_zero()) sigma[0] += coordinate_antiderivative(coord_part, 0);

  GradedPoly check;
  for (int axis = 0; axis < ctx.dim; ++axis)
    check += total_derivative(sigma[static_cast<std::size_t>(axis)], axis, ctx);
  if (!(check == T)) return std::nullopt;
  return sigma;
}

}  // namespace jetvar

#pragma once

#include "jetvar/theory.hpp"

namespace jetvar {

// Variational derivative with right partials: sum over jets of v of
// (-1)^{|idx|} d_idx(right-partial).  The left version is euler_lagrange_one.
GradedPoly right_euler_lagrange_one(const GradedPoly& L, const VariableId& generator,
                                    const JetContext& ctx);

// The Euler-Lagrange data of the model's density over its field generators.
EulerLagrangeResult field_euler_lagrange(const TheoryModel& m);

// Placeholder substitute for the above: each field generator maps to its
// placeholder symbol, for models that fix no density.
EulerLagrangeResult placeholder_euler_lagrange(const TheoryModel& m);

// Residual of one identity family against the supplied variational data:
//   sum_j ghost_j * sum_{(z, idx)} delta_j^{(z, idx)} * d_idx(el[z]).
// Zero certifies the family (the ghost contraction keeps members separated,
// since identity coefficients never contain ghosts of the same family).
GradedPoly verify_ni(const TheoryModel& m, const NoetherFamily& ni,
                     const EulerLagrangeResult& el);

// Odd differential on antifields: field antifields map to the variational
// derivatives, ghost antifields to their identity combinations contracted
// with field-antifield jets; fields and ghosts are annihilated.
// RosterMismatch when antifield partners or identity/ghost shapes disagree.
Derivation kt_differential(const TheoryModel& m);

bool check_kt_nilpotency(const Derivation& kt, const JetContext& ctx);

// Ascent operator built from the identity coefficients: for each family,
// component[z] += sum_idx ghost_jet(idx) * eta(delta^z)^idx.  Families of
// stage k >= 1 contribute components on stage k-1 ghosts.
Derivation gauge_operator(const TheoryModel& m);
// Same, restricted to a single identity family.
Derivation gauge_operator(const TheoryModel& m, const NoetherFamily& ni);

// True iff sum_A u^A E_A is variationally trivial against the model density.
bool check_gauge_condition(const TheoryModel& m, const Derivation& u);

// For models without a density: the ascent/identity transposition residual
//   sum_A u^A E_A(placeholders) - verify_ni(m, ni, placeholders),
// which must be variationally trivial when the encoded data are mutually
// consistent duals.
GradedPoly placeholder_ni_residual(const TheoryModel& m, const NoetherFamily& ni);

// Odd bracket pairing generators with their antifields through variational
// derivatives:
//   sum_pairs rvar(L1, zbar)*lvar(L2, z) + rvar(L2, zbar)*lvar(L1, z).
// UnpairedAntifield when either density contains an antifield generator the
// pairing does not cover.
GradedPoly antibracket(const GradedPoly& L1, const GradedPoly& L2,
                       const std::vector<std::pair<VariableId, VariableId>>& pairing,
                       const JetContext& ctx);

bool check_master_equation(const GradedPoly& L,
                           const std::vector<std::pair<VariableId, VariableId>>& pairing,
                           const JetContext& ctx);

// L + b(sum over paired field/ghost generators z of z * zbar); requires a
// nilpotent b (NotNilpotent otherwise).  The result satisfies the master
// equation whenever b is a consistent extension of the gauge operator.
GradedPoly extend_lagrangian(const GradedPoly& L, const Derivation& b, const TheoryModel& m);

// Conserved current of a variational symmetry: J^axis = sigma^axis -
// boundary_contract^axis, normalized so that sum_axis d_axis J^axis equals
// sum_A v^A E_A exactly.  NotASymmetry when the Lie derivative of L along d
// is not variationally trivial.
std::vector<GradedPoly> noether_current(const Derivation& d, const GradedPoly& L,
                                        const JetContext& ctx);

}  // namespace jetvar

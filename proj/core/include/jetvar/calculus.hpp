#pragma once

#include <map>
#include <optional>
#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/poly.hpp"

namespace jetvar {

// Variational-derivative component per base generator.
using EulerLagrangeResult = std::map<VariableId, GradedPoly>;

// d_axis: shifts every jet variable one step along `axis` and differentiates
// explicit base-coordinate dependence.  Raises JetOrderExceeded when a shift
// would pass the context cap.
GradedPoly total_derivative(const GradedPoly& p, int axis, const JetContext& ctx);

// Composition of total derivatives over a multi-index (order immaterial).
GradedPoly iterated_total(const GradedPoly& p, const MultiIndex& idx, const JetContext& ctx);

// E_A = sum over jets of (-1)^|idx| d_idx(dL/ds^A_idx) for one base generator.
GradedPoly euler_lagrange_one(const GradedPoly& L, const VariableId& generator,
                              const JetContext& ctx);

// E_A for each requested base generator.
EulerLagrangeResult euler_lagrange(const GradedPoly& L, const std::vector<VariableId>& over,
                                   const JetContext& ctx);

// Base generators (all kinds except base coordinates) occurring in p.
std::vector<VariableId> dynamical_generators(const GradedPoly& p);

// True iff the variational derivative with respect to every occurring
// generator vanishes identically, which certifies a total-divergence density
// in the polynomial sector.
bool is_variationally_trivial(const GradedPoly& L, const JetContext& ctx);

// Boundary coefficient produced by integrating one derivative (along `axis`)
// by parts off the jet variable `gen` prolonged by `rest` + axis.
struct BoundaryKey {
  VariableId gen;
  MultiIndex rest;
  int axis = 0;

  auto operator<=>(const BoundaryKey&) const = default;
};

// Splitting of the variation of a density into source (variational
// derivative) and boundary data: for every vertical derivation with
// components v^A,
//   apply(v, L) = sum_A v^A * source[A]
//               + sum_axis d_axis( boundary_contract(., components, axis) ).
struct LepageData {
  EulerLagrangeResult source;
  std::map<BoundaryKey, GradedPoly> boundary;
};

LepageData lepage_decompose(const GradedPoly& L, const JetContext& ctx);

// The axis-component of the boundary term for the given derivation
// components (map from base generator to generating polynomial).
GradedPoly boundary_contract(const LepageData& lep,
                             const std::map<VariableId, GradedPoly>& components, int axis,
                             const JetContext& ctx);

// Ascent transform of a coefficient family f (indexed by multi-index, orders
// <= k): the `lambda` component of the transformed family,
//   sum over S with |S| <= k - |lambda| of
//     (-1)^{|S+lambda|} * embed(S, S+lambda) * d_S f^{S+lambda},
// where embed counts multiset embeddings of S into S+lambda (a product of
// per-axis binomials).
GradedPoly eta_component(const std::map<MultiIndex, GradedPoly>& f, const MultiIndex& lambda,
                         int k, const JetContext& ctx);

// For a variationally trivial density T, produces sigma with
// sum_axis d_axis sigma[axis] == T exactly (scaling homotopy on the field
// sector, explicit antiderivative on the pure base-coordinate sector).
// Returns nullopt when T is not variationally trivial.
std::optional<std::vector<GradedPoly>> divergence_certificate(const GradedPoly& T,
                                                              const JetContext& ctx);

}  // namespace jetvar

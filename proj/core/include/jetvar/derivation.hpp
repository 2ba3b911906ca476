#pragma once

#include <map>

#include "jetvar/calculus.hpp"

namespace jetvar {

// A vertical derivation determined by generating components: one polynomial
// per base generator, extended to all jet variables by prolongation (the
// component of s^A_idx is d_idx of the component of s^A).  Components act by
// multiplication from the left.
class Derivation {
 public:
  Derivation() = default;

  // parity is 0 (even) or 1 (odd).  Every component must be keyed by a base
  // generator (no jet, not a base coordinate) and be parity-homogeneous of
  // parity generator-parity + derivation-parity; violations raise
  // GradingInconsistency.  Zero components are dropped.
  Derivation(int parity, std::map<VariableId, GradedPoly> components);

  int parity() const { return parity_; }
  bool is_odd() const { return parity_ == 1; }
  const std::map<VariableId, GradedPoly>& components() const { return components_; }
  GradedPoly component(const VariableId& base) const;

  // Prolonged action on a polynomial.
  GradedPoly apply(const GradedPoly& p, const JetContext& ctx) const;

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return a.parity_ == b.parity_ && a.components_ == b.components_;
  }

 private:
  int parity_ = 0;
  std::map<VariableId, GradedPoly> components_;
};

// Action on a density coefficient (identical to apply; named to mirror the
// geometric operation it implements).
GradedPoly lie_derivative(const Derivation& d, const GradedPoly& L, const JetContext& ctx);

// True iff the Lie derivative of L along d is variationally trivial.
bool is_variational_symmetry(const Derivation& d, const GradedPoly& L, const JetContext& ctx);

// Graded commutator: components [d1,d2]^A = d1(v2^A) - (-1)^{p1 p2} d2(v1^A);
// its action equals d1.apply(d2.apply(.)) - (-1)^{p1 p2} d2.apply(d1.apply(.)).
Derivation commutator(const Derivation& d1, const Derivation& d2, const JetContext& ctx);

// Residuals d(d(g)) per generator g in the component roster; all zero iff the
// odd derivation is nilpotent.
std::map<VariableId, GradedPoly> nilpotency_residuals(const Derivation& d, const JetContext& ctx);

// True iff d squares to zero on every generator (sufficient for nilpotency
// of the full prolonged action).  Raises EvenDerivation for even input.
bool is_nilpotent(const Derivation& d, const JetContext& ctx);

}  // namespace jetvar

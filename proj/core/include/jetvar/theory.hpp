#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetvar/derivation.hpp"

namespace jetvar {

// A named family of generators sharing kind, grading, and an index shape;
// members are flattened onto consecutive VariableId slots.  A rank-2 family
// may be marked symmetric, in which case only ordered index pairs (i <= j)
// own slots and accessors sort the pair.
struct GeneratorFamily {
  std::string name;
  Kind kind = Kind::Field;
  std::vector<int> shape;
  bool symmetric = false;
  Grading base;
  std::string partner;     // antifield kinds: name of the paired family
  bool placeholder = false;  // stands for a variational-derivative symbol
  int stage = 0;           // ghost tower stage (0 for ordinary ghosts)
  int base_slot = 0;       // assigned by TheoryModel::finalize

  int size() const;
  // Flattened slot offset for an index tuple; validates arity and ranges.
  int slot_of(const std::vector<int>& indices) const;
  std::vector<int> indices_of(int offset) const;
  VariableId var(const std::vector<int>& indices, MultiIndex jet = {}) const;
  VariableId var_at(int offset, MultiIndex jet = {}) const;
  bool owns(const VariableId& v) const;

  friend bool operator==(const GeneratorFamily&, const GeneratorFamily&) = default;
};

// Exact sparse rational tensor parameter (structure constants, metrics,
// alternating symbols).  Declared attributes are enforced: the symmetry
// attributes complete each given entry over its index orbit, and jacobi /
// invertible are validated; any conflict raises GradingInconsistency.
struct ParamTensor {
  std::string name;
  std::vector<int> shape;
  std::map<std::vector<int>, Rational> entries;
  bool attr_symmetric = false;             // rank 2: index swap
  bool attr_totally_antisymmetric = false;  // all permutations, with sign
  bool attr_jacobi = false;                 // rank 3 structure constants
  bool attr_invertible = false;             // rank 2: nonzero determinant

  Rational at(const std::vector<int>& indices) const;
  void set(const std::vector<int>& indices, const Rational& value);
  // Orbit completion + validation of all declared attributes.
  void finalize();

  friend bool operator==(const ParamTensor&, const ParamTensor&) = default;
};

// One family of Noether identities, paired with a ghost family of the same
// shape.  Member j stores coefficients delta[j][(A, idx)] meaning the
// combination sum_{A,idx} delta * d_idx(E_A); the stored orientation is the
// one whose ascent transform reproduces the model's gauge operator.
struct NoetherFamily {
  std::string name;
  std::string ghost_family;
  std::vector<std::map<std::pair<VariableId, MultiIndex>, GradedPoly>> delta;

  friend bool operator==(const NoetherFamily&, const NoetherFamily&) = default;
};

// A complete theory bundle: generators, parameters, density, Noether tower,
// named evolutionary derivations, and optional BRST data.
struct TheoryModel {
  std::string name;
  JetContext ctx;
  std::vector<GeneratorFamily> families;
  std::map<std::string, ParamTensor> params;
  GradedPoly lagrangian;
  bool has_lagrangian = false;
  std::vector<NoetherFamily> noether;
  std::map<std::string, Derivation> derivations;
  std::optional<Derivation> brst;
  std::optional<GradedPoly> extended;

  // Assigns slots (per kind, in declaration order) and appends one even
  // placeholder family per field family, mirroring its shape, to stand for
  // the variational derivative of an unspecified density.
  void finalize();

  const GeneratorFamily* family(const std::string& family_name) const;
  const GeneratorFamily* family_of(const VariableId& v) const;
  const GeneratorFamily* placeholder_of(const std::string& field_family_name) const;

  VariableId var(const std::string& family_name, const std::vector<int>& indices,
                 MultiIndex jet = {}) const;

  // Base generators of the given kind, placeholders excluded, family order.
  std::vector<VariableId> generators_of_kind(Kind k) const;
  // Field and ghost generators that have an antifield partner, paired up.
  std::vector<std::pair<VariableId, VariableId>> antibracket_pairing() const;

  Derivation derivation(const std::string& derivation_name) const;

  std::string display_name(const VariableId& v) const;

  friend bool operator==(const TheoryModel&, const TheoryModel&) = default;
};

// Grading helpers encoding the bookkeeping conventions.
Grading field_grading(bool odd);
Grading ghost_grading(bool odd, int stage);
Grading antifield_grading(const Grading& partner);

}  // namespace jetvar

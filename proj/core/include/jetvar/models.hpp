#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetvar/brst.hpp"
#include "jetvar/theory.hpp"

namespace jetvar {

// Names of the bundled theories, in canonical order.
std::vector<std::string> builtin_names();

// Constructs a bundled theory by name; raises UnknownModel otherwise.
// Available: free-scalar, maxwell, yang-mills-su2, chern-simons-3d,
// gravitation-gauge.
TheoryModel builtin(const std::string& name);

// The four-dimensional Yang-Mills theory with an arbitrary rank-3 structure
// tensor on a three-dimensional internal space.  When validate_structure is
// true the tensor's declared attributes (total antisymmetry and the Jacobi
// identity) are enforced; passing false admits deformed tensors, for probing
// how the verification checks respond to inconsistent structure data.
TheoryModel yang_mills_model(const ParamTensor& structure, bool validate_structure);

// Outcome of one named verification check.
struct CheckResult {
  std::string name;
  bool pass = false;
  // Printable residual witness for a failed polynomial identity, when one
  // is available.
  std::optional<std::string> residual;
  long long millis = 0;
};

// Aggregate verification report for one model.
struct ModelReport {
  std::string model;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

// Runs every check applicable to the model and collects the outcomes:
//   ni:<family>      Noether identity residual (against the density's
//                    variational derivatives, or placeholder symbols when
//                    the model fixes no density)
//   kt-nilpotency    the antifield differential squares to zero
//   gauge-condition  the ghost-built vertical derivation annihilates the
//                    density up to a total divergence
//   brst-nilpotency  the bundled BRST derivation squares to zero
//   master-equation  the extended density has vanishing self-bracket
//   symmetry:<name>  a named derivation is a variational symmetry
//   current:<name>   its conserved current balances the variational
//                    derivatives exactly
// jobs > 1 evaluates checks concurrently; the report order is fixed either
// way.
ModelReport verify_model(const TheoryModel& m, int jobs = 1);

}  // namespace jetvar

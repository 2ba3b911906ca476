#pragma once

#include <string>

#include "jetvar/poly.hpp"
#include "jetvar/theory.hpp"

namespace jetvar {

// Exact decimal-free rendering of a rational ("3", "-3", "3/2", "-3/2").
std::string print_rational(const Rational& q);

// Canonical expression text for a polynomial, using the model's display
// names.  The output is valid input for the theory-file expression grammar
// and is deterministic: equal polynomials print to equal bytes.
std::string print_poly(const GradedPoly& p, const TheoryModel& m);

// LaTeX rendering of a polynomial: family indices become superscripts, jet
// axes subscripts, rationals \tfrac, products thin-space separated.
std::string latex_poly(const GradedPoly& p, const TheoryModel& m);

// Serializes a model to the theory-file format.  Placeholder families are
// omitted (the parser's elaboration step regenerates them), everything else
// round-trips: parse_theory(print_theory(m)) == m.
std::string print_theory(const TheoryModel& m);

}  // namespace jetvar

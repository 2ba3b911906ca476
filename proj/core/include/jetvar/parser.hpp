#pragma once

#include <string>

#include "jetvar/poly.hpp"
#include "jetvar/theory.hpp"

namespace jetvar {

// Parses a theory-file document into a fully elaborated model: declarations
// build the generator roster and parameter tensors, expression blocks are
// elaborated to exact polynomials with implicit summation over repeated
// letter indices expanded.  Errors carry a byte offset and the message
// includes a line/column caret excerpt: SyntaxError for malformed input,
// UnknownIdentifier for undeclared names, IndexArityMismatch for index
// count/range problems, GradingInconsistency for declaration conflicts.
TheoryModel parse_theory(const std::string& text);

// Elaborates a single expression against an existing model's roster.
GradedPoly parse_expression(const std::string& text, const TheoryModel& m);

}  // namespace jetvar

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jetvar/rational.hpp"
#include "jetvar/variable.hpp"

namespace jetvar {

// One variable raised to a power.  Odd variables always carry exponent 1;
// a square of an odd variable is not representable because it vanishes.
struct Factor {
  VariableId var;
  std::int32_t exp = 1;

  friend std::strong_ordering operator<=>(const Factor&, const Factor&) = default;
  friend bool operator==(const Factor&, const Factor&) = default;
};

// A product of jet variables in canonical order (ascending VariableId).
// Reordering odd factors into canonical position introduces a sign, which is
// reported by `multiply` rather than stored: a monomial is always the
// positively-oriented canonical word, and coefficients live in the polynomial.
class GradedMonomial {
 public:
  GradedMonomial() = default;  // the unit monomial

  // Precondition: exp >= 1, and exp == 1 when v is odd.
  static GradedMonomial of(const VariableId& v, std::int32_t exp = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  int total_degree() const;
  // Sum of exponents of non-base-coordinate factors.
  int field_degree() const;
  Grading grading() const;
  std::int32_t exponent(const VariableId& v) const;
  // Highest jet order among the factors (0 for the unit monomial).
  int max_jet_order() const;

  // Canonical product.  Returns the reordering sign (+1 or -1), or 0 when the
  // product vanishes (an odd variable squared); `out` is valid only for +-1.
  static int multiply(const GradedMonomial& a, const GradedMonomial& b, GradedMonomial& out);

  struct PartialResult;
  // Derivative with respect to v acting from the left: the sign counts odd
  // factors standing before v.
  PartialResult left_partial(const VariableId& v) const;
  // Derivative acting from the right: the sign counts odd factors after v.
  PartialResult right_partial(const VariableId& v) const;

  std::strong_ordering operator<=>(const GradedMonomial&) const = default;
  bool operator==(const GradedMonomial&) const = default;

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
};

struct GradedMonomial::PartialResult {
  long multiplicity = 0;  // 0 means the variable does not occur
  int sign = 1;
  GradedMonomial reduced;
};

// A canonicalized product: the sign-corrected coefficient and the monomial.
// coeff == 0 means the product vanished (an odd variable repeated).
struct NormalizedTerm {
  Rational coeff;
  GradedMonomial monomial;
};

// Canonicalizes a raw factor list: sorts factors, folds the reordering sign
// into the coefficient, and detects vanishing odd squares.  Factors with
// exponent <= 0 are ignored.
NormalizedTerm normalize(const std::vector<std::pair<VariableId, std::int32_t>>& raw_product,
                         const Rational& coeff);

}  // namespace jetvar

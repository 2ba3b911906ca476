#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "jetvar/monomial.hpp"
#include "jetvar/rational.hpp"

namespace jetvar {

// A polynomial in graded jet variables with exact rational coefficients.
// The map is always normalized (no zero coefficients, monomials canonical),
// so structural equality is mathematical equality and the zero test is
// emptiness.
class GradedPoly {
 public:
  GradedPoly() = default;

  static GradedPoly constant(Rational c);
  static GradedPoly variable(const VariableId& v);
  static GradedPoly term(Rational c, const GradedMonomial& m);

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<GradedMonomial, Rational>& terms() const { return terms_; }

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly operator+(const GradedPoly& o) const;
  GradedPoly operator-(const GradedPoly& o) const;
  GradedPoly operator-() const;
  GradedPoly operator*(const GradedPoly& o) const;
  GradedPoly operator*(const Rational& c) const;
  friend GradedPoly operator*(const Rational& c, const GradedPoly& p) { return p * c; }

  bool operator==(const GradedPoly&) const = default;

  // Adds c * m, keeping the map normalized.
  void add_term(const GradedMonomial& m, const Rational& c);

  // The common grading of all terms, or nullopt when terms disagree.
  // The zero polynomial reports the trivial grading.
  std::optional<Grading> grading() const;
  // Parity shortcut: 0, 1, or nullopt when mixed.
  std::optional<int> parity() const;

  // Derivative with respect to the jet variable v, acting from the left
  // (signs count odd factors to the left of v) or from the right.
  GradedPoly left_partial(const VariableId& v) const;
  GradedPoly right_partial(const VariableId& v) const;

  // All jet variables occurring in some term.
  std::set<VariableId> variables() const;
  // Highest jet order over all factors of all terms.
  int max_jet_order() const;
  // Keeps only terms the predicate accepts.
  GradedPoly filter(const std::function<bool(const GradedMonomial&)>& keep) const;

  // Numerical evaluation; odd variables are not admissible here, so the
  // caller must ensure the polynomial is purely even or handle odd parts
  // separately.
  double evaluate(const std::function<double(const VariableId&)>& point) const;

  std::string to_string() const;

 private:
  std::map<GradedMonomial, Rational> terms_;
};

}  // namespace jetvar

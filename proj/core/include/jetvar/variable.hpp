#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "jetvar/multi_index.hpp"

namespace jetvar {

// What role a generator plays in the theory.  The enumerator order fixes the
// canonical variable order used to sort monomial factors.
enum class Kind : std::uint8_t {
  BaseCoordinate = 0,  // x^lambda — even, never carries a jet index
  Field = 1,           // dynamical field s^A and its jet prolongations
  Antifield = 2,       // conjugate variable paired with a field
  Ghost = 3,           // ghost associated with a gauge parameter
  GhostAntifield = 4,  // conjugate variable paired with a ghost
};

std::string kind_name(Kind k);

// Parity / ghost-number / antifield-number bookkeeping attached to a generator.
// Jet prolongation never changes any of the three numbers.
struct Grading {
  std::uint8_t parity = 0;      // 0 even, 1 odd
  std::int16_t ghost = 0;       // ghost number (can be negative)
  std::int16_t antifield = 0;   // antifield number (non-negative)

  friend bool operator==(const Grading&, const Grading&) = default;

  Grading operator+(const Grading& o) const {
    return Grading{static_cast<std::uint8_t>((parity + o.parity) & 1),
                   static_cast<std::int16_t>(ghost + o.ghost),
                   static_cast<std::int16_t>(antifield + o.antifield)};
  }

  bool is_even() const { return parity == 0; }
  bool is_odd() const { return parity == 1; }
};

// A jet variable: a generator (kind, slot) differentiated along the
// multi-index `jet`.  The base grading travels with the id so polynomial
// arithmetic needs no external symbol table, but it is excluded from
// identity and ordering — (kind, slot, jet) alone names the variable.
class VariableId {
 public:
  VariableId() = default;
  VariableId(Kind kind, std::int32_t slot, Grading base, MultiIndex jet = {})
      : kind_(kind), slot_(slot), base_(base), jet_(std::move(jet)) {}

  Kind kind() const { return kind_; }
  std::int32_t slot() const { return slot_; }
  const Grading& grading() const { return base_; }
  const MultiIndex& jet() const { return jet_; }

  bool is_odd() const { return base_.is_odd(); }
  bool is_even() const { return base_.is_even(); }

  // Same generator, differentiated once more along `axis`.
  VariableId prolong(std::int32_t axis) const {
    return VariableId(kind_, slot_, base_, jet_.plus(axis));
  }
  VariableId prolong(const MultiIndex& extra) const {
    return VariableId(kind_, slot_, base_, jet_.plus(extra));
  }
  // The undifferentiated generator this jet variable descends from.
  VariableId base() const { return VariableId(kind_, slot_, base_); }

  std::strong_ordering operator<=>(const VariableId& o) const {
    if (kind_ != o.kind_)
      return kind_ < o.kind_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (slot_ != o.slot_)
      return slot_ < o.slot_ ? std::strong_ordering::less : std::strong_ordering::greater;
    return jet_ <=> o.jet_;
  }
  bool operator==(const VariableId& o) const {
    return kind_ == o.kind_ && slot_ == o.slot_ && jet_ == o.jet_;
  }

  std::string to_string() const;

 private:
  Kind kind_ = Kind::BaseCoordinate;
  std::int32_t slot_ = 0;
  Grading base_;
  MultiIndex jet_;
};

// Convenience constructors with the grading conventions used throughout:
// base coordinates are even with all numbers zero; a plain field defaults to
// even unless marked odd; antifields flip parity and carry antifield number.
inline VariableId base_coordinate(std::int32_t axis) {
  return VariableId(Kind::BaseCoordinate, axis, Grading{});
}

inline VariableId field_var(std::int32_t slot, bool odd = false, MultiIndex jet = {}) {
  return VariableId(Kind::Field, slot, Grading{static_cast<std::uint8_t>(odd ? 1 : 0), 0, 0},
                    std::move(jet));
}

}  // namespace jetvar

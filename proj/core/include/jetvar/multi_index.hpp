#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace jetvar {

// Symmetric multi-index: a multiset of base-axis indices, stored as sorted
// (axis, multiplicity) pairs with no zero multiplicities. The order |Λ| is
// the total multiplicity. Comparison is graded-lexicographic: by order
// first, then lexicographically on the sorted entry list.
class MultiIndex {
 public:
  using Entry = std::pair<std::int32_t, std::int32_t>;  // (axis, multiplicity)

  MultiIndex() = default;
  MultiIndex(std::initializer_list<std::int32_t> axes);

  static MultiIndex single(std::int32_t axis) { return MultiIndex({axis}); }

  int order() const;
  bool empty() const { return entries_.empty(); }
  std::int32_t multiplicity(std::int32_t axis) const;
  const std::vector<Entry>& entries() const { return entries_; }

  MultiIndex plus(std::int32_t axis) const;
  MultiIndex plus(const MultiIndex& other) const;
  // Removes one occurrence of axis; axis must be present.
  MultiIndex minus(std::int32_t axis) const;
  bool contains(const MultiIndex& other) const;
  // The axes present, each listed once, ascending.
  std::vector<std::int32_t> axes() const;
  // The multiset expanded to a sorted list, e.g. {0:2,1:1} -> [0,0,1].
  std::vector<std::int32_t> expand() const;

  std::strong_ordering operator<=>(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

  std::string to_string() const;  // "(0,0,1)" style; "()" for empty

  // All multi-indexes over axes 0..n_axes-1 with order in [0, max_order].
  static std::vector<MultiIndex> all_up_to_order(int n_axes, int max_order);

 private:
  std::vector<Entry> entries_;
};

}  // namespace jetvar

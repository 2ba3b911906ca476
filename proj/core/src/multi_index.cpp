#include "jetvar/multi_index.hpp"

#include <algorithm>
#include <functional>

namespace jetvar {

MultiIndex::MultiIndex(std::initializer_list<std::int32_t> axes) {
  for (std::int32_t a : axes) *this = plus(a);
}

int MultiIndex::order() const {
  int total = 0;
  for (const auto& [axis, mult] : entries_) total += mult;
  return total;
}

std::int32_t MultiIndex::multiplicity(std::int32_t axis) const {
  for (const auto& [a, mult] : entries_)
    if (a == axis) return mult;
  return 0;
}

MultiIndex MultiIndex::plus(std::int32_t axis) const {
  MultiIndex result = *this;
  auto it = std::lower_bound(result.entries_.begin(), result.entries_.end(), axis,
                             [](const Entry& e, std::int32_t a) { return e.first < a; });
  if (it != result.entries_.end() && it->first == axis)
    it->second += 1;
  else
    result.entries_.insert(it, {axis, 1});
  return result;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  MultiIndex result = *this;
  for (const auto& [axis, mult] : other.entries_) {
    auto it = std::lower_bound(result.entries_.begin(), result.entries_.end(), axis,
                               [](const Entry& e, std::int32_t a) { return e.first < a; });
    if (it != result.entries_.end() && it->first == axis)
      it->second += mult;
    else
      result.entries_.insert(it, {axis, mult});
  }
  return result;
}

MultiIndex MultiIndex::minus(std::int32_t axis) const {
  MultiIndex result = *this;
  for (auto it = result.entries_.begin(); it != result.entries_.end(); ++it) {
    if (it->first == axis) {
      if (--it->second == 0) result.entries_.erase(it);
      return result;
    }
  }
  return result;  // axis absent: caller contract violated; returns unchanged
}

bool MultiIndex::contains(const MultiIndex& other) const {
  for (const auto& [axis, mult] : other.entries_)
    if (multiplicity(axis) < mult) return false;
  return true;
}

std::vector<std::int32_t> MultiIndex::axes() const {
  std::vector<std::int32_t> out;
  out.reserve(entries_.size());
  for (const auto& [axis, mult] : entries_) out.push_back(axis);
  return out;
}

std::vector<std::int32_t> MultiIndex::expand() const {
  std::vector<std::int32_t> out;
  out.reserve(order());
  for (const auto& [axis, mult] : entries_)
    for (int i = 0; i < mult; ++i) out.push_back(axis);
  return out;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (int cmp = order() - other.order(); cmp != 0)
    return cmp < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (entries_ < other.entries_) return std::strong_ordering::less;
  if (other.entries_ < entries_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string MultiIndex::to_string() const {
  std::string out = "(";
  bool first = true;
  for (std::int32_t axis : expand()) {
    if (!first) out += ",";
    out += std::to_string(axis);
    first = false;
  }
  out += ")";
  return out;
}

std::vector<MultiIndex> MultiIndex::all_up_to_order(int n_axes, int max_order) {
  std::vector<MultiIndex> out;
  out.emplace_back();
  std::size_t level_begin = 0;
  for (int ord = 1; ord <= max_order; ++ord) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      // Extend each index only by axes >= its largest axis, so every
      // multiset is produced exactly once.
      std::int32_t start = out[i].entries_.empty() ? 0 : out[i].entries_.back().first;
      for (std::int32_t axis = start; axis < n_axes; ++axis) out.push_back(out[i].plus(axis));
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace jetvar

#include "jetvar/theory.hpp"

#include <algorithm>
#include <numeric>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

int triangular_size(int n) { return n * (n + 1) / 2; }

// Rank of the ordered pair (i, j), i <= j < n, in row-major triangular order.
int triangular_rank(int i, int j, int n) {
  // pairs (0,0)..(0,n-1), (1,1)..(1,n-1), ...
  return i * n - i * (i - 1) / 2 + (j - i);
}

std::pair<int, int> triangular_unrank(int offset, int n) {
  for (int i = 0; i < n; ++i) {
    int row = n - i;
    if (offset < row) return {i, i + offset};
    offset -= row;
  }
  throw Error(Errc::RosterMismatch, "symmetric slot offset out of range");
}

}  // namespace

int GeneratorFamily::size() const {
  if (symmetric) return triangular_size(shape.at(0));
  int n = 1;
  for (int s : shape) n *= s;
  return n;
}

int GeneratorFamily::slot_of(const std::vector<int>& indices) const {
  if (indices.size() != shape.size())
    throw Error(Errc::IndexArityMismatch,
                name + " takes " + std::to_string(shape.size()) + " indices, got " +
                    std::to_string(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i] < 0 || indices[i] >= shape[i])
      throw Error(Errc::IndexArityMismatch,
                  "index " + std::to_string(indices[i]) + " out of range for " + name);
  if (symmetric) {
    int i = std::min(indices[0], indices[1]);
    int j = std::max(indices[0], indices[1]);
    return triangular_rank(i, j, shape[0]);
  }
  int offset = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) offset = offset * shape[i] + indices[i];
  return offset;
}

std::vector<int> GeneratorFamily::indices_of(int offset) const {
  if (symmetric) {
    auto [i, j] = triangular_unrank(offset, shape[0]);
    return {i, j};
  }
  std::vector<int> out(shape.size());
  for (std::size_t i = shape.size(); i-- > 0;) {
    out[i] = offset % shape[i];
    offset /= shape[i];
  }
  return out;
}

VariableId GeneratorFamily::var(const std::vector<int>& indices, MultiIndex jet) const {
  return VariableId(kind, base_slot + slot_of(indices), base, std::move(jet));
}

VariableId GeneratorFamily::var_at(int offset, MultiIndex jet) const {
  return VariableId(kind, base_slot + offset, base, std::move(jet));
}

bool GeneratorFamily::owns(const VariableId& v) const {
  return v.kind() == kind && v.slot() >= base_slot && v.slot() < base_slot + size();
}

Rational ParamTensor::at(const std::vector<int>& indices) const {
  auto it = entries.find(indices);
  return it == entries.end() ? Rational(0) : it->second;
}

void ParamTensor::set(const std::vector<int>& indices, const Rational& value) {
  if (indices.size() != shape.size())
    throw Error(Errc::IndexArityMismatch,
                name + " takes " + std::to_string(shape.size()) + " indices");
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i] < 0 || indices[i] >= shape[i])
      throw Error(Errc::IndexArityMismatch, "entry index out of range for " + name);
  if (is_zero_rat(value))
    entries.erase(indices);
  else
    entries[indices] = value;
}

namespace {

void orbit_fill(ParamTensor& t, const std::vector<int>& indices, const Rational& value,
                bool with_sign) {
  std::vector<int> perm(indices);
  std::sort(perm.begin(), perm.end());
  do {
    int sign = 1;
    if (with_sign) {
      // parity of the permutation taking sorted order to perm: count inversions
      int inv = 0;
      for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
          if (perm[i] > perm[j]) ++inv;
      // relate to the original entry's inversion count
      int inv0 = 0;
      for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = i + 1; j < indices.size(); ++j)
          if (indices[i] > indices[j]) ++inv0;
      sign = ((inv + inv0) & 1) ? -1 : 1;
    }
    Rational v = sign < 0 ? Rational(-value) : value;
    auto it = t.entries.find(perm);
    if (it != t.entries.end()) {
      if (!(it->second == v))
        throw Error(Errc::GradingInconsistency,
                    t.name + ": symmetry completion conflicts at an existing entry");
    } else if (!is_zero_rat(v)) {
      t.entries[perm] = v;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

Rational determinant(const ParamTensor& t) {
  int n = t.shape.at(0);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = t.at({i, j});
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (!is_zero_rat(m[row][col])) {
        pivot = row;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int row = col + 1; row < n; ++row) {
      if (is_zero_rat(m[row][col])) continue;
      Rational f = m[row][col] / m[col][col];
      for (int j = col; j < n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  return det;
}

}  // namespace

void ParamTensor::finalize() {
  if (attr_symmetric) {
    if (shape.size() != 2 || shape[0] != shape[1])
      throw Error(Errc::GradingInconsistency, name + ": symmetric requires square rank 2");
    auto snapshot = entries;
    for (const auto& [idx, v] : snapshot) {
      std::vector<int> swapped{idx[1], idx[0]};
      auto it = entries.find(swapped);
      if (it != entries.end()) {
        if (!(it->second == v))
          throw Error(Errc::GradingInconsistency, name + ": not symmetric");
      } else {
        entries[swapped] = v;
      }
    }
  }
  if (attr_totally_antisymmetric) {
    for (int s : shape)
      if (s != shape[0])
        throw Error(Errc::GradingInconsistency,
                    name + ": antisymmetry requires equal index ranges");
    auto snapshot = entries;
    for (const auto& [idx, v] : snapshot) {
      bool repeated = false;
      for (std::size_t i = 0; i < idx.size() && !repeated; ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
          if (idx[i] == idx[j]) {
            repeated = true;
            break;
          }
      if (repeated) {
        if (!is_zero_rat(v))
          throw Error(Errc::GradingInconsistency,
                      name + ": repeated-index entry must vanish under antisymmetry");
        continue;
      }
      orbit_fill(*this, idx, v, true);
    }
  }
  if (attr_jacobi) {
    if (shape.size() != 3)
      throw Error(Errc::GradingInconsistency, name + ": jacobi requires rank 3");
    int n = shape[0];
    for (int r = 0; r < n; ++r)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            Rational acc(0);
            for (int m = 0; m < n; ++m) {
              acc += at({m, i, j}) * at({r, m, k});
              acc += at({m, j, k}) * at({r, m, i});
              acc += at({m, k, i}) * at({r, m, j});
            }
            if (!is_zero_rat(acc))
              throw Error(Errc::GradingInconsistency, name + ": Jacobi identity fails");
          }
  }
  if (attr_invertible) {
    if (shape.size() != 2 || shape[0] != shape[1])
      throw Error(Errc::GradingInconsistency, name + ": invertible requires square rank 2");
    if (is_zero_rat(determinant(*this)))
      throw Error(Errc::GradingInconsistency, name + ": singular");
  }
}

Grading field_grading(bool odd) {
  return Grading{static_cast<std::uint8_t>(odd ? 1 : 0), 0, 0};
}

Grading ghost_grading(bool odd, int stage) {
  return Grading{static_cast<std::uint8_t>(odd ? 1 : 0), static_cast<std::int16_t>(stage + 1),
                 0};
}

Grading antifield_grading(const Grading& partner) {
  return Grading{static_cast<std::uint8_t>((partner.parity + 1) & 1),
                 static_cast<std::int16_t>(-partner.ghost - 1),
                 static_cast<std::int16_t>(partner.ghost + 1)};
}

void TheoryModel::finalize() {
  // Strip any previously appended placeholders so finalize is idempotent.
  families.erase(std::remove_if(families.begin(), families.end(),
                                [](const GeneratorFamily& f) { return f.placeholder; }),
                 families.end());
  std::vector<GeneratorFamily> placeholders;
  for (const GeneratorFamily& f : families) {
    if (f.kind != Kind::Field) continue;
    GeneratorFamily p;
    p.name = f.name;
    p.kind = Kind::Field;
    p.shape = f.shape;
    p.symmetric = f.symmetric;
    p.base = Grading{};
    p.placeholder = true;
    placeholders.push_back(std::move(p));
  }
  families.insert(families.end(), placeholders.begin(), placeholders.end());

  std::map<Kind, int> next_slot;
  for (GeneratorFamily& f : families) {
    f.base_slot = next_slot[f.kind];
    next_slot[f.kind] += f.size();
  }
}

const GeneratorFamily* TheoryModel::family(const std::string& family_name) const {
  for (const GeneratorFamily& f : families)
    if (!f.placeholder && f.name == family_name) return &f;
  return nullptr;
}

const GeneratorFamily* TheoryModel::family_of(const VariableId& v) const {
  for (const GeneratorFamily& f : families)
    if (f.owns(v)) return &f;
  return nullptr;
}

const GeneratorFamily* TheoryModel::placeholder_of(const std::string& field_family_name) const {
  for (const GeneratorFamily& f : families)
    if (f.placeholder && f.name == field_family_name) return &f;
  return nullptr;
}

VariableId TheoryModel::var(const std::string& family_name, const std::vector<int>& indices,
                            MultiIndex jet) const {
  const GeneratorFamily* f = family(family_name);
  if (!f) throw Error(Errc::UnknownIdentifier, "no generator family named " + family_name);
  return f->var(indices, std::move(jet));
}

std::vector<VariableId> TheoryModel::generators_of_kind(Kind k) const {
  std::vector<VariableId> out;
  for (const GeneratorFamily& f : families) {
    if (f.kind != k || f.placeholder) continue;
    for (int i = 0; i < f.size(); ++i) out.push_back(f.var_at(i));
  }
  return out;
}

std::vector<std::pair<VariableId, VariableId>> TheoryModel::antibracket_pairing() const {
  std::vector<std::pair<VariableId, VariableId>> out;
  for (const GeneratorFamily& f : families) {
    if (f.placeholder || (f.kind != Kind::Antifield && f.kind != Kind::GhostAntifield))
      continue;
    const GeneratorFamily* partner = family(f.partner);
    if (!partner || partner->size() != f.size())
      throw Error(Errc::RosterMismatch,
                  "antifield family " + f.name + " has no matching partner " + f.partner);
    for (int i = 0; i < f.size(); ++i) out.emplace_back(partner->var_at(i), f.var_at(i));
  }
  return out;
}

Derivation TheoryModel::derivation(const std::string& derivation_name) const {
  auto it = derivations.find(derivation_name);
  if (it == derivations.end())
    throw Error(Errc::UnknownIdentifier, "no derivation named " + derivation_name);
  return it->second;
}

std::string TheoryModel::display_name(const VariableId& v) const {
  const GeneratorFamily* f = family_of(v);
  if (!f) {
    if (v.kind() == Kind::BaseCoordinate) return "x[" + std::to_string(v.slot()) + "]";
    return v.to_string();
  }
  std::vector<int> idx = f->indices_of(v.slot() - f->base_slot);
  std::string inner;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) inner += ",";
    inner += std::to_string(idx[i]);
  }
  if (!v.jet().empty()) {
    inner += ";";
    auto axes = v.jet().expand();
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (i) inner += ",";
      inner += std::to_string(axes[i]);
    }
  }
  if (f->placeholder) return "E[" + f->name + (inner.empty() ? "" : ";" + inner) + "]";
  return inner.empty() ? f->name : f->name + "[" + inner + "]";
}

}  // namespace jetvar

#pragma once

// Shared helpers for the test suite: deterministic random generation of
// graded polynomials over small variable pools, and an independent dense
// exterior-algebra implementation used as an evaluation oracle.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "jetvar/poly.hpp"

namespace jetvar::testing {

using Rng = std::mt19937;

inline Rational random_rational(Rng& rng, int num_bound = 9, int den_bound = 4) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  return rat(num(rng), den(rng));
}

inline Rational random_nonzero_rational(Rng& rng, int num_bound = 9, int den_bound = 4) {
  Rational r;
  do {
    r = random_rational(rng, num_bound, den_bound);
  } while (is_zero_rat(r));
  return r;
}

// Pools of scalar base generators for randomized algebra tests.
inline std::vector<VariableId> even_pool(int n) {
  std::vector<VariableId> v;
  for (int i = 0; i < n; ++i) v.push_back(field_var(i, false));
  return v;
}

inline std::vector<VariableId> odd_pool(int n, int slot_offset = 100) {
  std::vector<VariableId> v;
  for (int i = 0; i < n; ++i) v.push_back(field_var(slot_offset + i, true));
  return v;
}

// A random monomial drawing at most `max_factors` factors from the pools.
inline GradedPoly random_monomial(Rng& rng, const std::vector<VariableId>& evens,
                                  const std::vector<VariableId>& odds, int max_factors = 3,
                                  int max_exp = 2) {
  std::uniform_int_distribution<int> nf(0, max_factors);
  std::uniform_int_distribution<int> which(0, static_cast<int>(evens.size() + odds.size()) - 1);
  std::uniform_int_distribution<int> exp(1, max_exp);
  GradedPoly p = GradedPoly::constant(random_nonzero_rational(rng));
  int count = nf(rng);
  for (int i = 0; i < count; ++i) {
    int w = which(rng);
    if (w < static_cast<int>(evens.size())) {
      GradedPoly f = GradedPoly::variable(evens[w]);
      int e = exp(rng);
      for (int j = 0; j < e; ++j) p = p * f;
    } else {
      p = p * GradedPoly::variable(odds[w - evens.size()]);
    }
  }
  return p;
}

inline GradedPoly random_poly(Rng& rng, const std::vector<VariableId>& evens,
                              const std::vector<VariableId>& odds, int max_terms = 4,
                              int max_factors = 3) {
  std::uniform_int_distribution<int> nt(1, max_terms);
  GradedPoly p;
  int count = nt(rng);
  for (int i = 0; i < count; ++i) p += random_monomial(rng, evens, odds, max_factors);
  return p;
}

// A random parity-homogeneous polynomial (retries monomials of wrong parity).
inline GradedPoly random_homogeneous(Rng& rng, const std::vector<VariableId>& evens,
                                     const std::vector<VariableId>& odds, int parity,
                                     int max_terms = 3) {
  std::uniform_int_distribution<int> nt(1, max_terms);
  GradedPoly p;
  int want = nt(rng);
  int guard = 0;
  while (want > 0 && guard < 500) {
    ++guard;
    GradedPoly mono = random_monomial(rng, evens, odds);
    auto g = mono.grading();
    if (!g || (g->parity % 2) != parity) continue;
    p += mono;
    --want;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Exterior-algebra oracle: a dense rational Grassmann algebra on up to 32
// anticommuting generators, represented by bitmask words.  Entirely
// independent of the engine's monomial code; products, sums, and one-sided
// derivatives are implemented directly on bitmasks.

struct ExtElem {
  // mask -> coefficient; mask bit i set means generator g_i present, and the
  // stored word is g_{i1} g_{i2} ... with i1 < i2 < ... (ascending).
  std::map<std::uint32_t, Rational> terms;

  bool is_zero() const { return terms.empty(); }

  void add(std::uint32_t mask, const Rational& c) {
    if (is_zero_rat(c)) return;
    auto [it, inserted] = terms.try_emplace(mask, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_rat(it->second)) terms.erase(it);
    }
  }

  friend bool operator==(const ExtElem&, const ExtElem&) = default;
};

inline ExtElem ext_constant(const Rational& c) {
  ExtElem e;
  e.add(0, c);
  return e;
}

inline ExtElem ext_generator(int i) {
  ExtElem e;
  e.add(std::uint32_t{1} << i, 1);
  return e;
}

inline ExtElem ext_add(const ExtElem& a, const ExtElem& b) {
  ExtElem r = a;
  for (const auto& [m, c] : b.terms) r.add(m, c);
  return r;
}

inline ExtElem ext_scale(const ExtElem& a, const Rational& c) {
  ExtElem r;
  for (const auto& [m, k] : a.terms) r.add(m, k * c);
  return r;
}

// Sign of merging disjoint ascending words a and b into one ascending word:
// parity of the number of pairs (i in a, j in b) with i > j.
inline int ext_merge_sign(std::uint32_t a, std::uint32_t b) {
  int crossings = 0;
  for (int j = 0; j < 32; ++j) {
    if (!(b >> j & 1u)) continue;
    for (int i = j + 1; i < 32; ++i)
      if (a >> i & 1u) ++crossings;
  }
  return (crossings % 2 == 0) ? 1 : -1;
}

inline ExtElem ext_mul(const ExtElem& a, const ExtElem& b) {
  ExtElem r;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      if (ma & mb) continue;  // repeated generator vanishes
      r.add(ma | mb, ca * cb * ext_merge_sign(ma, mb));
    }
  return r;
}

// Left derivative with respect to generator i: strike g_i from the front,
// signing by the generators that stand before it.
inline ExtElem ext_left_derive(const ExtElem& a, int i) {
  ExtElem r;
  for (const auto& [m, c] : a.terms) {
    if (!(m >> i & 1u)) continue;
    int before = __builtin_popcount(m & ((std::uint32_t{1} << i) - 1));
    r.add(m & ~(std::uint32_t{1} << i), (before % 2 == 0) ? c : -c);
  }
  return r;
}

// Right derivative: strike g_i from the back, signing by the generators
// standing after it.
inline ExtElem ext_right_derive(const ExtElem& a, int i) {
  ExtElem r;
  for (const auto& [m, c] : a.terms) {
    if (!(m >> i & 1u)) continue;
    int after = __builtin_popcount(m & ~((std::uint32_t{2} << i) - 1));
    r.add(m & ~(std::uint32_t{1} << i), (after % 2 == 0) ? c : -c);
  }
  return r;
}

// Evaluates an engine polynomial in the oracle algebra.  Every even variable
// must be assigned a rational, every odd variable an oracle element (odd
// assignments need not be single generators).
inline ExtElem ext_evaluate(const GradedPoly& p, const std::map<VariableId, Rational>& evens,
                            const std::map<VariableId, ExtElem>& odds) {
  ExtElem result;
  for (const auto& [mono, coeff] : p.terms()) {
    ExtElem acc = ext_constant(coeff);
    for (const auto& f : mono.factors()) {
      if (f.var.grading().is_odd()) {
        const ExtElem& val = odds.at(f.var);
        for (int e = 0; e < f.exp; ++e) acc = ext_mul(acc, val);
      } else {
        Rational v = evens.at(f.var);
        for (int e = 0; e < f.exp; ++e) acc = ext_scale(acc, v);
      }
    }
    result = ext_add(result, acc);
  }
  return result;
}

}  // namespace jetvar::testing

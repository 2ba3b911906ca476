#pragma once

#include <gmpxx.h>

#include <string>

namespace jetvar {

// Exact arbitrary-precision rational. mpq_class keeps values canonical
// (reduced, positive denominator), so operator== is structural equality.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero_rat(const Rational& q) { return sgn(q) == 0; }

inline std::string rat_to_string(const Rational& q) { return q.get_str(); }

// b!/(a!(b-a)!) as an exact integer-valued rational; 0 when a > b or a < 0.
inline Rational binomial(long b, long a) {
  if (a < 0 || a > b) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(a));
  return Rational(r);
}

}  // namespace jetvar

#pragma once

#include <gmpxx.h>

#include <string>

namespace tribkar {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r{Integer{num}, Integer{den}};
  r.canonicalize();
  return r;
}

// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer factorial(long k) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

inline Integer binomial(long top, long bottom) {
  if (bottom < 0 || bottom > top) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(top),
               static_cast<unsigned long>(bottom));
  return out;
}

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline Rational rpow(const Rational& base, unsigned long exp) {
  Rational out = 1;
  for (unsigned long k = 0; k < exp; ++k) out *= base;
  return out;
}

}  // namespace tribkar

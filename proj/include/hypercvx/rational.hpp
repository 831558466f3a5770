#pragma once

#include <gmpxx.h>

#include <string>

#include "hypercvx/errors.hpp"

namespace hypercvx {

// Exact arithmetic everywhere; conversion to double happens once,
// immediately before an eigenvalue computation.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational ratio(long num, long den) {
  if (den == 0) throw parameter_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational inverse_of(long v) { return ratio(1, v); }

inline double to_double(const Rational& r) { return r.get_d(); }

// Always "num/den", including unit denominators ("3/1").
inline std::string rational_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline BigInt factorial_of(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// 0 whenever the index pair is out of the Pascal triangle.
inline BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

}  // namespace hypercvx

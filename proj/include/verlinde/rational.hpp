#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "verlinde/errors.hpp"

namespace verlinde {

// Arbitrary precision integer and rational. mpq_class keeps values canonical
// (lowest terms, positive denominator) after every arithmetic operation.
using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigRational make_rational(long num, long den = 1) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt floor_of(const BigRational& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

/// Fractional part in [0, 1).
inline BigRational frac_of(const BigRational& q) { return q - BigRational(floor_of(q)); }

inline bool is_integer(const BigRational& q) { return q.get_den() == 1; }

inline std::string to_string(const BigRational& q) { return q.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline BigRational qpow(const BigRational& base, long e) {
  BigRational out;
  if (e >= 0) {
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  } else {
    if (base == 0) throw DivisionByZero("negative power of zero");
    mpz_pow_ui(out.get_num_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(-e));
    mpz_pow_ui(out.get_den_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(-e));
  }
  out.canonicalize();
  return out;
}

inline BigInt factorial(unsigned long m) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), m);
  return out;
}

inline BigInt binomial(unsigned long top, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), top, k);
  return out;
}

inline long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

}  // namespace verlinde

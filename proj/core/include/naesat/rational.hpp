#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace naesat {

// Exact rational scalar. All statistics and LP identities are kept exact;
// conversion to floating point happens only at the bound-evaluation boundary.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat_pow(const Rational& base, unsigned long exp) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  out.canonicalize();
  return out;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline long double to_long_double(const Rational& q) {
  // Split into quotient and remainder to keep precision for moderate values.
  mpz_class quot, rem;
  mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  long double frac = mpq_class(rem, q.get_den()).get_d();
  return static_cast<long double>(quot.get_d()) + frac;
}

// Accepts "p", "p/q", or a decimal literal such as "0.25".
Rational parse_rational(const std::string& text);

}  // namespace naesat

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "fusys/error.hpp"

namespace fusys {

using Integer = mpz_class;

// Coefficients are exact rationals. p-locality (denominator prime to p) is a
// property of the enclosing element, which knows p.
using Rational = mpq_class;
using PLocalRational = Rational;

inline bool is_p_local(const Rational& q, int p) {
  return mpz_divisible_ui_p(q.get_den_mpz_t(), static_cast<unsigned long>(p)) == 0;
}

inline Integer ipow(int base, unsigned exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return r;
}

inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Image of a p-local rational in Z/m, m a power of p.
inline Integer reduce_mod(const Rational& q, const Integer& m) {
  Integer inv;
  Integer den = q.get_den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("denominator not invertible modulo " + m.get_str());
  }
  return mod_floor(Integer(q.get_num()) * inv, m);
}

/// Balanced rational reconstruction: the unique n/d with |n|, d <= sqrt(m/2)
/// and n = a*d (mod m), if one exists.
inline std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
  Integer bound;
  Integer half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());

  Integer r0 = m;
  Integer r1 = mod_floor(a, m);
  Integer t0 = 0;
  Integer t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

inline bool fits_int64(const Integer& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 && sizeof(long) == sizeof(std::int64_t);
}

}  // namespace fusys

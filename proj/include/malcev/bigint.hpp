#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace malcev {

using Int = mpz_class;

/* floor division: q = floor(a/b), r = a - q*b, 0 <= r < |b| */
inline Int fdiv_q(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int fdiv_r(const Int &a, const Int &b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int gcd(const Int &a, const Int &b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/* g = u*a + v*b */
inline Int gcdext(const Int &a, const Int &b, Int &u, Int &v) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

/* binomial(n, k) for n >= 0 */
inline Int binom(const Int &n, unsigned long k) {
  if (n < 0)
    throw std::invalid_argument("binom: negative n");
  Int r = 1;
  for (unsigned long t = 0; t < k; ++t) {
    r *= n - static_cast<long>(t);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), t + 1);
  }
  return r;
}

inline long to_long(const Int &a, const char *what) {
  if (!a.fits_slong_p())
    throw std::overflow_error(std::string(what) + ": value out of range");
  return a.get_si();
}

} // namespace malcev

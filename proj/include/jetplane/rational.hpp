#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace jetplane {

// Exact rational scalar. GMP keeps values canonical (lowest terms, positive
// denominator); every constructor below re-canonicalizes explicitly because
// mpq_class(num, den) does not.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "-3/4" when den != 1, plain integer otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "num" or "num/den", optional leading '-'. Throws on malformed input
// or zero denominator.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw std::invalid_argument("zero denominator in rational literal: " + s);
  q.canonicalize();
  return q;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

inline long binomial_l(long n, long k) { return binomial(n, k).get_si(); }

// Raised when a computation contradicts an identity the library treats as
// established (e.g. a linear system that must be solvable has no solution).
// Callers are expected to surface these loudly, never to swallow them.
struct FalsificationError : std::runtime_error {
  explicit FalsificationError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace jetplane

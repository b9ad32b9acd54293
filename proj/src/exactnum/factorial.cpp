#include "gapcert/exactnum/factorial.hpp"

#include <string>

#include "gapcert/errors.hpp"

namespace gapcert {

BigInt factorial(unsigned long n, unsigned long cap) {
  if (n > cap) {
    throw CapError("exact factorial of " + std::to_string(n) + " exceeds cap " +
                   std::to_string(cap));
  }
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Magnitude factorial_mag(unsigned long n, Precision prec, unsigned long cap) {
  if (n <= cap) return Magnitude::from_integer(factorial(n, cap), prec);
  const Interval ln2 = ln2_bounds(prec);
  // log2 e = 1 / ln 2
  const Rational log2e_lo = Rational(1) / ln2.hi;
  const Rational log2e_hi = Rational(1) / ln2.lo;
  BigInt nb(std::to_string(n));
  Rational lo = Rational(nb) * log2_down(Rational(nb), prec) - Rational(nb - 1) * log2e_hi;
  Rational hi = Rational(nb + 1) * log2_up(Rational(nb + 1), prec) - Rational(nb) * log2e_lo;
  Interval body = round_outward({lo, hi}, prec.bits);
  return Magnitude::tower(false, 1, body.lo, body.hi, prec);
}

}  // namespace gapcert

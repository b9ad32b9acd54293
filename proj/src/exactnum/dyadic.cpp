#include "gapcert/exactnum/dyadic.hpp"

#include <stdexcept>

#include "gapcert/errors.hpp"

namespace gapcert {

namespace {

BigInt shift_left(const BigInt& x, long s) {
  BigInt r;
  if (s >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
  }
  return r;
}

// m * 2^s as a rational.
Rational scaled(const BigInt& m, long s) {
  if (s >= 0) return Rational(shift_left(m, s));
  return make_rational(m, shift_left(BigInt(1), -s));
}

// floor(x * 2^s) for x >= 0.
BigInt floor_scaled(const Rational& x, long s) {
  BigInt num = x.get_num();
  BigInt den = x.get_den();
  if (s >= 0) {
    num = shift_left(num, s);
  } else {
    den = shift_left(den, -s);
  }
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

BigInt ceil_scaled(const Rational& x, long s) {
  BigInt num = x.get_num();
  BigInt den = x.get_den();
  if (s >= 0) {
    num = shift_left(num, s);
  } else {
    den = shift_left(den, -s);
  }
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

BigInt isqrt_floor(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

BigInt isqrt_ceil(const BigInt& n) {
  BigInt r = isqrt_floor(n);
  if (r * r != n) r += 1;
  return r;
}

bool needs_rounding(const Rational& x, int bits) {
  const std::size_t limit = static_cast<std::size_t>(bits) + 64;
  return bit_length(x.get_num()) > limit || bit_length(x.get_den()) > limit;
}

}  // namespace

long floor_log2(const Rational& x) {
  if (x <= 0) throw DomainError("floor_log2 of non-positive value");
  long e = static_cast<long>(bit_length(x.get_num())) -
           static_cast<long>(bit_length(x.get_den()));
  // 2^(e-1) < x < 2^(e+1)
  if (x >= pow2(e)) return e;
  return e - 1;
}

Rational round_down(const Rational& x, int bits) {
  if (x == 0) return x;
  if (x < 0) return -round_up(-x, bits);
  long s = bits - 1 - floor_log2(x);
  return scaled(floor_scaled(x, s), -s);
}

Rational round_up(const Rational& x, int bits) {
  if (x == 0) return x;
  if (x < 0) return -round_down(-x, bits);
  long s = bits - 1 - floor_log2(x);
  return scaled(ceil_scaled(x, s), -s);
}

Interval round_outward(Interval iv, int bits) {
  if (needs_rounding(iv.lo, bits)) iv.lo = round_down(iv.lo, bits);
  if (needs_rounding(iv.hi, bits)) iv.hi = round_up(iv.hi, bits);
  return iv;
}

Interval log2_bounds(const Rational& x, Precision prec) {
  if (x <= 0) throw DomainError("log2 of non-positive value");
  long exact = 0;
  if (is_power_of_two(x, &exact)) return {Rational(exact), Rational(exact)};

  const long e = floor_log2(x);
  const long frac_bits = prec.bits + 16;
  const long work = frac_bits + 64;
  const Rational y = x / pow2(e);  // in [1, 2)

  const BigInt two = shift_left(BigInt(1), work + 1);

  // Lower chain: every rounding is downward, so the extracted digits never
  // overshoot log2(y).
  BigInt w = floor_scaled(y, work);
  BigInt low_digits = 0;
  for (long i = 0; i < frac_bits; ++i) {
    w = shift_left(w * w, -work);
    low_digits <<= 1;
    if (w >= two) {
      w >>= 1;
      low_digits += 1;
    }
  }

  // Upper chain: rounding upward; the remainder log2(w)/2^F is at most 2^-F.
  BigInt v = ceil_scaled(y, work);
  BigInt high_digits = 0;
  for (long i = 0; i < frac_bits; ++i) {
    BigInt sq = v * v;
    mpz_cdiv_q_2exp(v.get_mpz_t(), sq.get_mpz_t(), static_cast<mp_bitcnt_t>(work));
    high_digits <<= 1;
    if (v >= two) {
      mpz_cdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
      high_digits += 1;
    }
  }

  Interval iv{Rational(e) + scaled(low_digits, -frac_bits),
              Rational(e) + scaled(high_digits + 1, -frac_bits)};
  iv.lo = round_down(iv.lo, prec.bits);
  iv.hi = round_up(iv.hi, prec.bits);
  return iv;
}

Rational log2_down(const Rational& x, Precision prec) { return log2_bounds(x, prec).lo; }
Rational log2_up(const Rational& x, Precision prec) { return log2_bounds(x, prec).hi; }

namespace {

enum class Side { Down, Up };

Rational exp2_directed(const Rational& a, Precision prec, Side side) {
  const BigInt m_big = floor(a);
  if (!m_big.fits_slong_p()) throw PrecisionExhausted("exp2 exponent out of range");
  const long m = m_big.get_si();
  const Rational f = a - Rational(m_big);
  if (f == 0) return pow2(m);

  const long frac_bits = prec.bits + 16;
  const long work = prec.bits + 80;

  BigInt digits = floor_scaled(f, frac_bits);
  if (side == Side::Up && Rational(digits) != f * pow2(frac_bits)) {
    digits += 1;
    if (digits == shift_left(BigInt(1), frac_bits)) return pow2(m + 1);
  }

  const BigInt unit = shift_left(BigInt(1), work);
  BigInt root = shift_left(BigInt(2), work);  // 2^(2^0) in fixed point
  BigInt acc = unit;
  for (long i = 1; i <= frac_bits; ++i) {
    BigInt radicand = shift_left(root, work);
    root = side == Side::Down ? isqrt_floor(radicand) : isqrt_ceil(radicand);
    if (mpz_tstbit(digits.get_mpz_t(), static_cast<mp_bitcnt_t>(frac_bits - i))) {
      BigInt prod = acc * root;
      if (side == Side::Down) {
        acc = shift_left(prod, -work);
      } else {
        mpz_cdiv_q_2exp(acc.get_mpz_t(), prod.get_mpz_t(), static_cast<mp_bitcnt_t>(work));
      }
    }
  }
  Rational r = scaled(acc, m - work);
  return side == Side::Down ? round_down(r, prec.bits) : round_up(r, prec.bits);
}

}  // namespace

Rational exp2_down(const Rational& a, Precision prec) {
  return exp2_directed(a, prec, Side::Down);
}

Rational exp2_up(const Rational& a, Precision prec) {
  return exp2_directed(a, prec, Side::Up);
}

Interval ln2_bounds(Precision prec) {
  const long terms = prec.bits + 8;
  Rational sum = 0;
  for (long k = 1; k <= terms; ++k) sum += Rational(1) / (Rational(k) * pow2(k));
  Rational tail = Rational(1) / (Rational(terms + 1) * pow2(terms));
  return {round_down(sum, prec.bits), round_up(sum + tail, prec.bits)};
}

Interval log2_of_10(Precision prec) { return log2_bounds(Rational(10), prec); }

}  // namespace gapcert

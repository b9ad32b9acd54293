#include "gapcert/exactnum/magnitude.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "gapcert/errors.hpp"

namespace gapcert {

struct MagnitudeAccess {
  static Magnitude raw(bool reciprocal, unsigned level, Interval body) {
    return Magnitude(reciprocal, level, std::move(body));
  }
  static Magnitude make(bool reciprocal, unsigned level, Interval body, Precision prec) {
    Magnitude m(reciprocal, level, std::move(body));
    m.normalize(prec);
    return m;
  }
};

namespace {

// Largest body we are willing to exponentiate back into a positional value.
constexpr long kDemoteLimit = 4096;
// Values at levels >= 1 below which the additive-slack route is not used.
constexpr long kPlainShiftLimit = 512;

long tiny_cap(Precision prec) { return 4L * prec.bits + 256; }

const Rational& promote_threshold() {
  static const Rational t = pow2(64);
  return t;
}

Interval negated(const Interval& iv) { return {-iv.hi, -iv.lo}; }

CompareOutcome compare_intervals(const Interval& x, const Interval& y) {
  if (x.hi < y.lo) return CompareOutcome::LT;
  if (x.lo > y.hi) return CompareOutcome::GT;
  if (x.degenerate() && y.degenerate() && x.lo == y.lo) return CompareOutcome::EQ;
  return CompareOutcome::Inconclusive;
}

// A real number in the log domain: either a moderate signed interval or
// +-(tower) with |value| >= 2.
struct Signed {
  bool big = false;
  Interval plain;
  bool negative = false;
  Magnitude mag;
};

Signed plain_value(Interval iv) {
  Signed s;
  s.plain = std::move(iv);
  return s;
}

Signed big_value(bool negative, Magnitude m) {
  Signed s;
  s.big = true;
  s.negative = negative;
  s.mag = std::move(m);
  return s;
}

Signed negate(Signed s) {
  if (s.big) {
    s.negative = !s.negative;
  } else {
    s.plain = negated(s.plain);
  }
  return s;
}

// Integer K <= cap with log2(T) >= K, T the tower at (level, body).
long floor_lower_log2(unsigned level, const Interval& body, long cap) {
  if (level == 0) return std::min(floor_log2(body.lo), cap);
  if (level == 1) {
    BigInt f = floor(body.lo);
    if (f > cap) return cap;
    return f.get_si();
  }
  // log2(T) is the tower at level - 1, which is >= 2^inner.
  long inner = floor_lower_log2(level - 1, body, 62);
  if (inner >= 62) return cap;
  long v = 1L << inner;
  return std::min(v, cap);
}

// Integer N <= cap with T >= N for a tower T at level >= 1.
long floor_lower_value(const Magnitude& m, long cap) {
  long k = floor_lower_log2(m.level(), m.body(), 62);
  if (k >= 62) return cap;
  if (k < 0) return 0;
  return std::min(1L << k, cap);
}

// Positional enclosure of the tower, when small enough to materialize.
std::optional<Interval> tower_as_plain(unsigned level, Interval iv, Precision prec) {
  for (unsigned i = 0; i < level; ++i) {
    if (iv.hi > kDemoteLimit || iv.lo < -kDemoteLimit) return std::nullopt;
    iv = {exp2_down(iv.lo, prec), exp2_up(iv.hi, prec)};
  }
  return iv;
}

std::optional<Interval> value_as_plain(const Magnitude& m, Precision prec) {
  auto t = tower_as_plain(m.level(), m.body(), prec);
  if (!t) return std::nullopt;
  if (!m.reciprocal()) return t;
  return Interval{Rational(1) / t->hi, Rational(1) / t->lo};
}

Signed log2_signed(const Magnitude& m, Precision prec) {
  if (m.level() == 0) {
    Interval iv{log2_down(m.lo(), prec), log2_up(m.hi(), prec)};
    return plain_value(m.reciprocal() ? negated(iv) : iv);
  }
  if (m.level() == 1) return plain_value(m.reciprocal() ? negated(m.body()) : m.body());
  return big_value(m.reciprocal(), MagnitudeAccess::raw(false, m.level() - 1, m.body()));
}

Magnitude exp2_signed(const Signed& s, Precision prec) {
  if (s.big) return MagnitudeAccess::make(s.negative, s.mag.level() + 1, s.mag.body(), prec);
  const Interval& iv = s.plain;
  if (iv.lo >= 1) return MagnitudeAccess::make(false, 1, iv, prec);
  if (iv.hi <= -1) return MagnitudeAccess::make(true, 1, negated(iv), prec);
  if (iv.lo < -kDemoteLimit || iv.hi > kDemoteLimit) {
    throw PrecisionExhausted("exponent enclosure too wide to exponentiate");
  }
  return Magnitude::from_interval(exp2_down(iv.lo, prec), exp2_up(iv.hi, prec), prec);
}

// Signed value for +-m, m a positive magnitude.
Signed to_signed(bool negative, const Magnitude& m, Precision prec) {
  if (!m.reciprocal() && m.level() >= 1) return big_value(negative, m);
  if (m.level() == 0) {
    Interval iv = m.value_interval();
    return plain_value(negative ? negated(iv) : iv);
  }
  long k = floor_lower_log2(m.level(), m.body(), tiny_cap(prec));
  Interval iv{Rational(0), pow2(-k)};
  return plain_value(negative ? negated(iv) : iv);
}

bool at_most_minus_one(const Signed& d) {
  if (d.big) return d.negative;
  return d.plain.hi <= -1;
}

bool at_least_one(const Signed& d) {
  if (d.big) return !d.negative;
  return d.plain.lo >= 1;
}

bool certainly_positive(const Signed& d) {
  if (d.big) return !d.negative;
  return d.plain.lo > 0;
}

Signed add_signed(const Signed& x, const Signed& y, Precision prec);
Magnitude add_positive(const Magnitude& a, const Magnitude& b, Precision prec);

// m + delta for a non-reciprocal tower m at level >= 1.
Magnitude shift(const Magnitude& m, const Interval& delta, Precision prec) {
  if (delta.lo == 0 && delta.hi == 0) return m;
  auto plain_route = [&]() -> std::optional<Magnitude> {
    auto v = tower_as_plain(m.level(), m.body(), prec);
    if (!v) return std::nullopt;
    Interval r{v->lo + delta.lo, v->hi + delta.hi};
    if (r.lo <= 0) throw DomainError("shift produced a non-positive value");
    r = round_outward(r, prec.bits);
    return Magnitude::from_interval(r.lo, r.hi, prec);
  };
  if (m.level() == 1 && m.hi() <= kPlainShiftLimit) {
    if (auto r = plain_route()) return *r;
  }
  const long k = floor_lower_log2(m.level(), m.body(), tiny_cap(prec));
  const Rational bound = std::max(abs(delta.lo), abs(delta.hi));
  if (bound * 2 > pow2(k)) {
    if (auto r = plain_route()) return *r;
    throw PrecisionExhausted("additive shift too large relative to the magnitude");
  }
  // |delta/m| <= 1/2: log2(1+u) in [u, 2u] for u >= 0 and in [3u, u] for u < 0.
  const Rational inv = pow2(-k);
  Interval t{delta.lo >= 0 ? Rational(0) : Rational(3 * delta.lo * inv),
             delta.hi >= 0 ? Rational(2 * delta.hi * inv) : Rational(0)};
  return exp2_signed(add_signed(log2_signed(m, prec), plain_value(t), prec), prec);
}

// a - b for towers with b <= a/2, given d enclosing log2(b/a) <= -1.
Magnitude subtract_positive(const Magnitude& a, const Signed& d, Precision prec) {
  const long cap = tiny_cap(prec);
  Interval t;
  if (d.big) {
    long n = floor_lower_value(d.mag, cap);
    t = {Rational(-3) * pow2(-n), Rational(0)};
  } else {
    const Interval& iv = d.plain;
    const bool tiny_hi = iv.hi < -cap;
    Rational u_hi = tiny_hi ? pow2(-cap) : exp2_up(iv.hi, prec);
    Rational u_lo = iv.lo < -cap ? Rational(0) : exp2_down(iv.lo, prec);
    if (u_hi >= 1) throw PrecisionExhausted("subtraction operands too close");
    // log2(1-u) >= -3u for u <= 1/2.
    t.lo = tiny_hi ? Rational(-3 * u_hi) : log2_down(Rational(1) - u_hi, prec);
    t.hi = u_lo == 0 ? Rational(0) : std::min(Rational(0), log2_up(Rational(1) - u_lo, prec));
  }
  return exp2_signed(add_signed(log2_signed(a, prec), plain_value(t), prec), prec);
}

Signed add_signed(const Signed& x, const Signed& y, Precision prec) {
  if (!x.big && !y.big) {
    Interval iv{x.plain.lo + y.plain.lo, x.plain.hi + y.plain.hi};
    return plain_value(round_outward(iv, prec.bits));
  }
  if (!x.big) return add_signed(y, x, prec);
  if (!y.big) {
    Interval delta = x.negative ? negated(y.plain) : y.plain;
    const Rational bound = std::max(abs(delta.lo), abs(delta.hi));
    const long k = floor_lower_log2(x.mag.level(), x.mag.body(), tiny_cap(prec));
    if ((x.mag.level() == 1 && x.mag.hi() <= kPlainShiftLimit) || bound * 2 > pow2(k)) {
      // The sum may be small or change sign, so work positionally when possible.
      if (auto v = tower_as_plain(x.mag.level(), x.mag.body(), prec)) {
        Interval ax = x.negative ? negated(*v) : *v;
        return plain_value(round_outward({ax.lo + y.plain.lo, ax.hi + y.plain.hi}, prec.bits));
      }
    }
    return to_signed(x.negative, shift(x.mag, delta, prec), prec);
  }
  if (x.negative == y.negative) return to_signed(x.negative, add_positive(x.mag, y.mag, prec), prec);

  // Opposite signs: x + y = sign(x) * (|x| - |y|).
  Signed ratio = add_signed(log2_signed(y.mag, prec), negate(log2_signed(x.mag, prec)), prec);
  if (at_most_minus_one(ratio)) {
    return to_signed(x.negative, subtract_positive(x.mag, ratio, prec), prec);
  }
  if (at_least_one(ratio)) {
    return to_signed(y.negative, subtract_positive(y.mag, negate(ratio), prec), prec);
  }
  auto px = value_as_plain(x.mag, prec);
  auto py = value_as_plain(y.mag, prec);
  if (px && py) {
    Interval ax = x.negative ? negated(*px) : *px;
    Interval ay = y.negative ? negated(*py) : *py;
    return plain_value(round_outward({ax.lo + ay.lo, ax.hi + ay.hi}, prec.bits));
  }
  throw PrecisionExhausted("cannot separate nearly equal towers of opposite sign");
}

Magnitude add_positive(const Magnitude& a_in, const Magnitude& b_in, Precision prec) {
  if (a_in.level() == 0 && b_in.level() == 0) {
    Interval x = a_in.value_interval();
    Interval y = b_in.value_interval();
    Interval s = round_outward({x.lo + y.lo, x.hi + y.hi}, prec.bits);
    return Magnitude::from_interval(s.lo, s.hi, prec);
  }
  const Magnitude* a = &a_in;
  const Magnitude* b = &b_in;
  Signed la = log2_signed(*a, prec);
  Signed d;
  try {
    d = add_signed(log2_signed(*b, prec), negate(la), prec);  // log2(b/a)
  } catch (const PrecisionExhausted&) {
    // Operands too close to separate: max(a, b) <= a + b <= 2 max(a, b).
    if (a->level() != b->level() || a->reciprocal() != b->reciprocal()) throw;
    Interval h{std::min(a->lo(), b->lo()), std::max(a->hi(), b->hi())};
    Magnitude hull = MagnitudeAccess::raw(a->reciprocal(), a->level(), h);
    return exp2_signed(add_signed(log2_signed(hull, prec), plain_value({Rational(0), Rational(1)}),
                                  prec),
                       prec);
  }
  if (certainly_positive(d)) {
    std::swap(a, b);
    la = log2_signed(*a, prec);
    d = negate(d);
  }
  // a + b = a * (1 + 2^d)
  const long cap = tiny_cap(prec);
  Interval t;
  if (d.big) {
    long n = floor_lower_value(d.mag, cap);
    t = {Rational(0), pow2(1 - n)};
  } else {
    const Interval& iv = d.plain;
    if (iv.lo < -cap) {
      t.lo = 0;
    } else if (iv.lo > kDemoteLimit) {
      t.lo = iv.lo;
    } else {
      t.lo = log2_down(Rational(1) + exp2_down(iv.lo, prec), prec);
    }
    if (iv.hi < -cap) {
      t.hi = pow2(1 - cap);
    } else if (iv.hi > kDemoteLimit) {
      t.hi = iv.hi + 1;
    } else {
      t.hi = log2_up(Rational(1) + exp2_up(iv.hi, prec), prec);
    }
  }
  return exp2_signed(add_signed(la, plain_value(t), prec), prec);
}

CompareOutcome compare_signed(const Signed& x, const Signed& y, Precision prec) {
  if (!x.big && !y.big) return compare_intervals(x.plain, y.plain);
  if (x.big && y.big) {
    if (x.negative != y.negative) return x.negative ? CompareOutcome::LT : CompareOutcome::GT;
    CompareOutcome c = mag_compare(x.mag, y.mag, prec);
    return x.negative ? reversed(c) : c;
  }
  if (!x.big) return reversed(compare_signed(y, x, prec));
  const Interval& v = y.plain;
  if (!x.negative) {
    if (v.hi < 2) return CompareOutcome::GT;
    if (v.lo > 0) return mag_compare(x.mag, Magnitude::from_interval(v.lo, v.hi, prec), prec);
    return mag_compare(x.mag, Magnitude::from_rational(v.hi, prec), prec) == CompareOutcome::GT
               ? CompareOutcome::GT
               : CompareOutcome::Inconclusive;
  }
  if (v.lo > -2) return CompareOutcome::LT;
  if (v.hi < 0) {
    return reversed(mag_compare(x.mag, Magnitude::from_interval(-v.hi, -v.lo, prec), prec));
  }
  return mag_compare(x.mag, Magnitude::from_rational(-v.lo, prec), prec) == CompareOutcome::GT
             ? CompareOutcome::LT
             : CompareOutcome::Inconclusive;
}

// Exact integer power when the result stays cheap.
std::optional<Magnitude> exact_power(const Magnitude& base, const Magnitude& exponent,
                                     Precision prec) {
  if (base.level() != 0 || !base.exact() || !exponent.exact()) return std::nullopt;
  BigInt e;
  if (exponent.level() == 0 && !exponent.reciprocal() && exponent.lo().get_den() == 1) {
    e = exponent.lo().get_num();
  } else if (exponent.level() == 1 && !exponent.reciprocal() && exponent.lo().get_den() == 1 &&
             exponent.lo() <= 24) {
    e = BigInt(1) << static_cast<mp_bitcnt_t>(exponent.lo().get_num().get_ui());
  } else {
    return std::nullopt;
  }
  const Rational v = base.value_interval().lo;
  const std::size_t size = bit_length(v.get_num()) + bit_length(v.get_den());
  if (!e.fits_ulong_p() || e.get_ui() * size > (1UL << 16)) return std::nullopt;
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), v.get_num_mpz_t(), e.get_ui());
  mpz_pow_ui(den.get_mpz_t(), v.get_den_mpz_t(), e.get_ui());
  return Magnitude::from_rational(make_rational(num, den), prec);
}

}  // namespace

std::string to_string(CompareOutcome c) {
  switch (c) {
    case CompareOutcome::LT: return "LT";
    case CompareOutcome::GT: return "GT";
    case CompareOutcome::EQ: return "EQ";
    case CompareOutcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

CompareOutcome reversed(CompareOutcome c) {
  if (c == CompareOutcome::LT) return CompareOutcome::GT;
  if (c == CompareOutcome::GT) return CompareOutcome::LT;
  return c;
}

Magnitude::Magnitude(const Rational& exact, Precision prec) : body_{exact, exact} {
  if (exact <= 0) throw DomainError("magnitude of non-positive value " + gapcert::to_string(exact));
  normalize(prec);
}

Magnitude Magnitude::from_rational(const Rational& x, Precision prec) { return Magnitude(x, prec); }

Magnitude Magnitude::from_integer(const BigInt& x, Precision prec) {
  return Magnitude(Rational(x), prec);
}

Magnitude Magnitude::from_interval(const Rational& lo, const Rational& hi, Precision prec) {
  if (lo <= 0) throw DomainError("magnitude interval must be positive");
  if (lo > hi) throw DomainError("empty magnitude interval");
  return MagnitudeAccess::make(false, 0, {lo, hi}, prec);
}

Magnitude Magnitude::tower(bool reciprocal, unsigned level, const Rational& lo, const Rational& hi,
                           Precision prec) {
  if (lo > hi) throw DomainError("empty magnitude body");
  if (level == 0 && lo <= 0) throw DomainError("magnitude interval must be positive");
  return MagnitudeAccess::make(reciprocal, level, {lo, hi}, prec);
}

Interval Magnitude::value_interval() const {
  if (level_ != 0) throw PrecisionExhausted("value interval requested above level 0");
  if (!reciprocal_) return body_;
  return {Rational(1) / body_.hi, Rational(1) / body_.lo};
}

void Magnitude::normalize(Precision prec) {
  for (;;) {
    if (level_ == 0) {
      Interval v = reciprocal_ ? Interval{Rational(1) / body_.hi, Rational(1) / body_.lo} : body_;
      if (v.lo <= 0) throw DomainError("magnitude must be positive");
      v = round_outward(v, prec.bits);
      if (v.hi < 1) {
        reciprocal_ = true;
        body_ = round_outward({Rational(1) / v.hi, Rational(1) / v.lo}, prec.bits);
      } else {
        reciprocal_ = false;
        body_ = v;
      }
    } else if (body_.lo < 1) {
      if (body_.hi > kDemoteLimit) throw PrecisionExhausted("cannot demote wide tower body");
      body_ = {exp2_down(body_.lo, prec), exp2_up(body_.hi, prec)};
      --level_;
      continue;
    }
    long k = 0;
    if (body_.degenerate() && is_power_of_two(body_.lo, &k) && k >= 2) {
      body_ = {Rational(k), Rational(k)};
      ++level_;
      continue;
    }
    if (body_.hi > promote_threshold() && body_.lo >= 2) {
      body_ = {log2_down(body_.lo, prec), log2_up(body_.hi, prec)};
      ++level_;
      continue;
    }
    break;
  }
}

Magnitude mag_from_rational(const Rational& x, Precision prec) {
  return Magnitude::from_rational(x, prec);
}

Magnitude mag_mul(const Magnitude& a, const Magnitude& b, Precision prec) {
  if (a.level() == 0 && b.level() == 0) {
    Interval x = a.value_interval();
    Interval y = b.value_interval();
    Interval p = round_outward({x.lo * y.lo, x.hi * y.hi}, prec.bits);
    return Magnitude::from_interval(p.lo, p.hi, prec);
  }
  return exp2_signed(add_signed(log2_signed(a, prec), log2_signed(b, prec), prec), prec);
}

Magnitude mag_pow(const Magnitude& base, const Magnitude& exponent, Precision prec) {
  if (base.reciprocal()) throw DomainError("mag_pow requires base >= 1");
  if (base.level() == 0 && base.lo() < 1) throw DomainError("mag_pow requires base >= 1");
  if (base.level() == 0 && base.exact() && base.lo() == 1) return Magnitude(Rational(1));
  if (auto exact = exact_power(base, exponent, prec)) return *exact;

  Signed log_base = log2_signed(base, prec);
  Magnitude log_mag;
  if (log_base.big) {
    log_mag = log_base.mag;
  } else {
    if (log_base.plain.lo <= 0) throw PrecisionExhausted("base enclosure touches 1");
    log_mag = Magnitude::from_interval(log_base.plain.lo, log_base.plain.hi, prec);
  }
  Magnitude log_result = mag_mul(exponent, log_mag, prec);
  return exp2_signed(to_signed(false, log_result, prec), prec);
}

Magnitude mag_add(const Magnitude& a, const Magnitude& b, Precision prec) {
  return add_positive(a, b, prec);
}

Magnitude mag_add_one(const Magnitude& a, Precision prec) {
  if (a.reciprocal()) throw DomainError("mag_add_one requires a >= 1");
  if (a.level() == 0) {
    if (a.lo() < 1) throw DomainError("mag_add_one requires a >= 1");
    return Magnitude::from_interval(a.lo() + 1, a.hi() + 1, prec);
  }
  return add_positive(a, Magnitude(Rational(1)), prec);
}

Magnitude mag_reciprocal(const Magnitude& a, Precision prec) {
  return MagnitudeAccess::make(!a.reciprocal(), a.level(), a.body(), prec);
}

CompareOutcome mag_compare(const Magnitude& a, const Magnitude& b, Precision prec) {
  if (a == b && a.exact()) return CompareOutcome::EQ;
  if (a.level() == 0 && b.level() == 0) {
    return compare_intervals(a.value_interval(), b.value_interval());
  }
  return compare_signed(log2_signed(a, prec), log2_signed(b, prec), prec);
}

Interval lift_body(const Magnitude& a, unsigned level, Precision prec) {
  if (a.reciprocal()) throw DomainError("lift_body requires a non-reciprocal magnitude");
  if (level < a.level()) throw DomainError("lift_body cannot lower the level");
  Interval iv = a.body();
  for (unsigned l = a.level(); l < level; ++l) {
    if (iv.lo <= 0) throw PrecisionExhausted("value too small to lift another level");
    iv = {log2_down(iv.lo, prec), log2_up(iv.hi, prec)};
  }
  return iv;
}

Interval log2_value(const Magnitude& a, Precision prec) {
  if (a.level() > 1) throw PrecisionExhausted("log2 of a level >= 2 magnitude is not positional");
  Signed s = log2_signed(a, prec);
  return s.plain;
}

Magnitude knuth_tower(unsigned long p, unsigned n, const Magnitude& r, Precision prec) {
  if (p < 2) throw DomainError("knuth_tower requires p >= 2");
  if (n < 1) throw DomainError("knuth_tower requires n >= 1");
  const Magnitude base = Magnitude::from_integer(BigInt(p), prec);
  Magnitude x = r;
  for (unsigned i = 0; i < n; ++i) x = mag_pow(base, x, prec);
  return x;
}

Magnitude knuth_tower(unsigned long p, unsigned n, const Rational& r, Precision prec) {
  if (r < 1) throw DomainError("knuth_tower requires r >= 1");
  return knuth_tower(p, n, Magnitude::from_rational(r, prec), prec);
}

std::string describe(const Magnitude& m) {
  std::ostringstream out;
  out << (m.reciprocal() ? "1/" : "") << "tower(level=" << m.level() << ", ["
      << m.lo().get_d() << ", " << m.hi().get_d() << "])";
  return out.str();
}

}  // namespace gapcert

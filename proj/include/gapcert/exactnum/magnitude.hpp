#pragma once

#include <string>

#include "gapcert/exactnum/dyadic.hpp"
#include "gapcert/exactnum/rational.hpp"

namespace gapcert {

enum class CompareOutcome { LT, GT, EQ, Inconclusive };

std::string to_string(CompareOutcome c);
CompareOutcome reversed(CompareOutcome c);

/// Certified enclosure of a positive real x too large (or too small) for
/// positional representation.
///
/// With tower T := x (or T := 1/x when `reciprocal()`), the invariant is
///   log2 applied level() times to T lies in [lo(), hi()].
/// At level 0 the body is simply an interval containing T. For level > 0 the
/// body satisfies lo >= 1, so every level wraps a value >= 2.
///
/// Normal form:
///   - level 0: the reciprocal flag is set iff the whole enclosure lies
///     below 1;
///   - an exact body 2^k with integer k >= 2 is promoted to body k one level
///     up (lossless);
///   - a body with hi > 2^64 and lo >= 2 is promoted one level up with
///     outward-rounded log2 endpoints;
///   - a body at level > 0 whose lo dropped below 1 is demoted.
///
/// All operations return enclosures of the exact result. When a sound
/// enclosure cannot be formed at the requested precision they throw
/// PrecisionExhausted rather than return a wrong interval.
class Magnitude {
 public:
  Magnitude() : Magnitude(Rational(1)) {}
  explicit Magnitude(const Rational& exact, Precision prec = {});

  static Magnitude from_rational(const Rational& x, Precision prec = {});
  static Magnitude from_integer(const BigInt& x, Precision prec = {});
  /// Positive value known to lie in [lo, hi], 0 < lo <= hi.
  static Magnitude from_interval(const Rational& lo, const Rational& hi, Precision prec = {});
  /// Raw tower constructor followed by normalization.
  static Magnitude tower(bool reciprocal, unsigned level, const Rational& lo, const Rational& hi,
                         Precision prec = {});

  bool reciprocal() const { return reciprocal_; }
  unsigned level() const { return level_; }
  const Rational& lo() const { return body_.lo; }
  const Rational& hi() const { return body_.hi; }
  const Interval& body() const { return body_; }

  /// Enclosure of the value itself when level() == 0.
  Interval value_interval() const;

  /// True when the enclosure pins down a single real.
  bool exact() const { return body_.lo == body_.hi; }

  bool operator==(const Magnitude& other) const = default;

 private:
  Magnitude(bool reciprocal, unsigned level, Interval body)
      : reciprocal_(reciprocal), level_(level), body_(std::move(body)) {}

  void normalize(Precision prec);

  bool reciprocal_ = false;
  unsigned level_ = 0;
  Interval body_;

  friend struct MagnitudeAccess;
};

Magnitude mag_from_rational(const Rational& x, Precision prec = {});
Magnitude mag_mul(const Magnitude& a, const Magnitude& b, Precision prec = {});
/// base^exponent for base >= 1.
Magnitude mag_pow(const Magnitude& base, const Magnitude& exponent, Precision prec = {});
Magnitude mag_add(const Magnitude& a, const Magnitude& b, Precision prec = {});
Magnitude mag_add_one(const Magnitude& a, Precision prec = {});
Magnitude mag_reciprocal(const Magnitude& a, Precision prec = {});
CompareOutcome mag_compare(const Magnitude& a, const Magnitude& b, Precision prec = {});

/// Enclosure of log2 applied `level` times to the tower of a non-reciprocal
/// magnitude, for level >= a.level(). Throws PrecisionExhausted when an
/// intermediate value is too small to take another logarithm.
Interval lift_body(const Magnitude& a, unsigned level, Precision prec = {});

/// Enclosure of log2(x) for magnitudes at level <= 1 (signed for
/// reciprocals). Throws PrecisionExhausted for higher levels.
Interval log2_value(const Magnitude& a, Precision prec = {});

/// (p up-arrow)^n r: p^p^...^r with n exponentiations. p >= 2, n >= 1,
/// r >= 1.
Magnitude knuth_tower(unsigned long p, unsigned n, const Rational& r, Precision prec = {});
Magnitude knuth_tower(unsigned long p, unsigned n, const Magnitude& r, Precision prec = {});

std::string describe(const Magnitude& m);

}  // namespace gapcert

#pragma once

#include "gapcert/exactnum/rational.hpp"

namespace gapcert {

/// Working precision for certified transcendental bounds, in significant
/// bits of the rounded endpoints.
struct Precision {
  int bits = 96;
};

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool degenerate() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

/// floor(log2 x) for x > 0.
long floor_log2(const Rational& x);

/// Largest (smallest) dyadic with at most `bits` significant bits that is
/// <= x (>= x). Zero is returned unchanged.
Rational round_down(const Rational& x, int bits);
Rational round_up(const Rational& x, int bits);

/// Rounds [lo, hi] outward, but only when an endpoint has grown beyond a
/// size where exact storage stops being cheap. Small exact rationals stay
/// exact.
Interval round_outward(Interval iv, int bits);

/// Certified enclosure of log2(x), x > 0, by binary digit extraction on
/// fixed-point lower/upper chains (repeated squaring). Exact (degenerate)
/// when x is a power of two.
Interval log2_bounds(const Rational& x, Precision prec = {});
Rational log2_down(const Rational& x, Precision prec = {});
Rational log2_up(const Rational& x, Precision prec = {});

/// Certified lower/upper bounds on 2^a via repeated integer square roots.
/// Exact when a is an integer.
Rational exp2_down(const Rational& a, Precision prec = {});
Rational exp2_up(const Rational& a, Precision prec = {});

/// ln 2 enclosed by the truncated series sum 1/(k 2^k) plus its tail bound.
Interval ln2_bounds(Precision prec = {});

/// log2(10), for base-10 reporting.
Interval log2_of_10(Precision prec = {});

}  // namespace gapcert

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <mpfr.h>

#include "gapcert/exactnum/magnitude.hpp"
#include "gapcert/exactnum/rational.hpp"

namespace oracle {

using gapcert::BigInt;
using gapcert::Rational;

/// Closed interval of MPFR floats with directed rounding at 640 bits.
class MpInterval {
 public:
  MpInterval();
  explicit MpInterval(const Rational& x);
  MpInterval(const MpInterval& o);
  MpInterval& operator=(const MpInterval& o);
  ~MpInterval();

  MpInterval mul(const MpInterval& o) const;
  MpInterval add(const MpInterval& o) const;
  MpInterval reciprocal() const;
  /// x^e for x >= 1 and an exponent exactly representable in binary.
  MpInterval pow(const Rational& e) const;

  /// log2 of the value; NaN-free only for positive intervals.
  double log2_mid() const;
  bool below_one() const;  // hi < 1
  bool at_least_one() const;

  /// Could the value lie inside the magnitude's enclosure?
  bool overlaps(const gapcert::Magnitude& m) const;
  /// Definitely smaller / larger than the other interval.
  bool certainly_less(const MpInterval& o) const;

 private:
  mpfr_t lo_, hi_;
};

struct ChainStats {
  long chains = 0;
  long operations = 0;
  long violations = 0;
  long inconclusive = 0;
  long exact_checks = 0;
  long compare_checks = 0;
  long compare_violations = 0;
  long order_checks = 0;
  long order_violations = 0;
  long idempotence_violations = 0;
  long precision_flips = 0;
};

/// Random operation chains over mul, add, pow, add_one, reciprocal and
/// compare. Every intermediate Magnitude is checked against the MPFR
/// enclosure of the exact result.
ChainStats run_magnitude_chains(long count, std::uint64_t seed);

/// Brute force over multisets of nonzero elements 1 - j/(p n) with n <= max_n:
/// the smallest sum strictly above q, with its lexicographically smallest
/// sorted (n, k) witness.
struct BruteResult {
  Rational gap;
  std::vector<std::pair<BigInt, BigInt>> witness;
};
std::optional<BruteResult> brute_min_sum_above(unsigned long p, unsigned long q,
                                               unsigned long max_n, unsigned max_terms);

/// epsilon_1 for p in {1, 2} through unit fractions: min over r of
/// r - (largest sum of q + r unit fractions below r).
Rational egyptian_epsilon1(unsigned long q);

/// Largest sum of k unit fractions 1/m (2 <= m <= max_den) below r.
Rational brute_unit_sum_under(const Rational& r, unsigned k, unsigned long max_den);

}  // namespace oracle

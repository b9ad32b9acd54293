#pragma once

#include <optional>
#include <vector>

#include "gapcert/exactnum/magnitude.hpp"
#include "gapcert/exactnum/rational.hpp"

namespace gapcert {

constexpr unsigned kSylvesterExactCap = 20;
constexpr unsigned kCurtissBudget = 5;

struct SylvesterEntry {
  unsigned n = 1;
  std::optional<BigInt> exact;  // present when n <= cap
  Magnitude bound;              // 2^(2^n) >= S_n
};

/// S_1 = 2, S_n = S_{n-1}^2 - S_{n-1} + 1.
SylvesterEntry sylvester(unsigned n, unsigned cap = kSylvesterExactCap);

/// Exact S_n; throws CapError above the cap.
BigInt sylvester_exact(unsigned n, unsigned cap = kSylvesterExactCap);

struct UnitSumResult {
  Rational best;                   // largest sum of k unit fractions < r
  std::vector<BigInt> witness;     // denominators, nondecreasing
  bool capped = false;             // some branch exceeded max_den
};

/// Largest sum 1/m_1 + ... + 1/m_k < r with every m_i >= 2 (repeats
/// allowed). Exhaustive branch-and-bound; ties are broken towards the
/// lexicographically smallest denominator list. max_den = 0 means no cap.
UnitSumResult max_unit_sum_under(const Rational& r, unsigned k, const BigInt& max_den = 0);

struct CurtissResult {
  Rational gap;
  std::vector<BigInt> witness;
};

/// min over m_i of 1 - sum_{i<=n} 1/m_i restricted to (0, 1). n <= 5.
CurtissResult curtiss_min_gap(unsigned n);

}  // namespace gapcert

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapcert/exactnum/magnitude.hpp"
#include "gapcert/exactnum/rational.hpp"
#include "gapcert/hyperstd/hyperstd.hpp"

namespace gapcert {

struct SearchCaps {
  unsigned depth = 64;
  BigInt den = BigInt(1) << 32;  // bound on p*n for every deficit
};

/// "depth=D,den=N"; either key may be omitted.
SearchCaps parse_caps(const std::string& text);
std::string to_string(const SearchCaps& caps);

enum class SearchStatus { Proven, ProvenWithinCaps };
std::string to_string(SearchStatus s);

/// Smallest sum of nonzero Phi_p elements strictly above a target.
struct MinSumResult {
  Rational gap;                   // sum - target > 0
  std::vector<HyperElem> witness; // sorted by (n, k)
  SearchStatus status = SearchStatus::Proven;
};

/// Exhaustive branch-and-bound over deficits. Optimal witnesses are tie-broken
/// towards the lexicographically smallest sorted (n, k) list, so the result
/// does not depend on `workers` (0 = hardware concurrency).
MinSumResult min_sum_above(unsigned long p, const Rational& target, const SearchCaps& caps = {},
                           unsigned workers = 0);

struct GapCertificate {
  unsigned long p = 1;
  unsigned long q = 0;
  Rational value;
  std::vector<HyperElem> witness;
  SearchStatus status = SearchStatus::Proven;
  SearchCaps caps;
  unsigned long floor_index = 0;          // (pq+1)p+1
  std::optional<Rational> sylvester_floor; // 1/(S_index - 1) when computable
  CompareOutcome floor_check = CompareOutcome::Inconclusive;  // value vs floor
  bool tight = false;                     // value equals the floor
};

/// epsilon_1(p, q); q = 0 yields the smallest nonzero element.
GapCertificate min_sum_exceeding(unsigned long p, unsigned long q, const SearchCaps& caps = {},
                                 unsigned workers = 0);

struct Epsilon2 {
  Rational lo;
  Rational hi;
  bool exact = false;
  GapCertificate eps1;
};

/// epsilon_2(p, q) = e/(q+e) with e = epsilon_1(p, q). Exact when the search
/// is Proven; otherwise [floor-based, search-based] bounds.
Epsilon2 epsilon2(unsigned long p, unsigned long q, const SearchCaps& caps = {},
                  unsigned workers = 0);

}  // namespace gapcert

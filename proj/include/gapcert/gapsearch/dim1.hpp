#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapcert/gapsearch/gapsearch.hpp"
#include "gapcert/hyperstd/hyperstd.hpp"

namespace gapcert {

enum class GapKind { LCT, GLCT, MLD };
std::string to_string(GapKind k);

/// Gap on the projective line together with coefficients reproducing it.
///   LCT:  gamma + t*multiplicity = 1, gap = 1 - t
///   GLCT: sum(gammas) + t*multiplicity = 2, gap = 1 - t
///   MLD:  gammas (all < 1) sum to 2 and include the boundary value t
struct Dim1GapReport {
  GapKind kind = GapKind::LCT;
  unsigned long p = 1;
  Rational gap;
  std::vector<Rational> gammas;
  Rational t;
  unsigned long multiplicity = 1;
};

Dim1GapReport lct_gap_dim1(unsigned long p);
Dim1GapReport glct_max_dim1(unsigned long p, const SearchCaps& caps = {});
Dim1GapReport mld_gap_dim1(unsigned long p, const SearchCaps& caps = {});

/// Solution of 2 = sum gamma_i + sum_{j<=m} b_j with gamma_i nonzero in
/// Phi_p and b_j in (1 - delta, 1), m >= 1.
struct EquationTwoResult {
  bool sat = false;
  std::vector<Rational> gammas;
  std::vector<Rational> bs;
};

EquationTwoResult equation_two_solver(unsigned long p, const Rational& delta,
                                      const SearchCaps& caps = {});

/// Least I with p*I*b integral, for b in Phi_p and b <= 1 - 1/(p(p+1)) or
/// b = 1. Throws PreconditionError outside that range.
BigInt curve_complement_index(unsigned long p, const Rational& b);

/// Coefficients in (0, 1] summing exactly to target.
bool cy_witness_check(const Rational& target, const std::vector<Rational>& coeffs);

}  // namespace gapcert

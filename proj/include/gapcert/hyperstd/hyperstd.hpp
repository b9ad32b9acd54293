#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapcert/exactnum/rational.hpp"

namespace gapcert {

/// Element 1 - k/(p n) of the hyperstandard set Phi_p, 0 <= k <= p.
/// Stored canonically: n is the smallest denominator that represents the
/// value (k is then forced).
struct HyperElem {
  unsigned long p = 1;
  BigInt n = 1;
  BigInt k = 0;

  Rational value() const;
  Rational deficit() const;  // k/(p n)
  bool operator==(const HyperElem&) const = default;
};

/// Canonical element with the given value; throws DomainError when the
/// value is not in Phi_p.
HyperElem canonical_elem(unsigned long p, const Rational& value);
/// Re-canonicalizes an arbitrary (n, k) representation.
HyperElem canonical_elem(unsigned long p, const BigInt& n, const BigInt& k);

/// Deficit j/(p n) with 1 <= j <= p, value in (0, 1), canonical minimal n.
struct Deficit {
  unsigned long p = 1;
  BigInt j = 1;
  BigInt n = 1;

  Rational value() const;
  bool operator==(const Deficit&) const = default;
};

/// Canonical witness iff x lies in Phi_p.
std::optional<HyperElem> membership(unsigned long p, const Rational& x);

/// Sum of elements of Phi_p, which is again in Phi_p when it is <= 1.
/// Throws PreconditionError when the sum leaves [0, 1].
HyperElem sum_in_phi(unsigned long p, const std::vector<HyperElem>& elems);

/// (n - 1 + gamma)/n, witnessed by (n l, k) for gamma = 1 - k/(p l).
HyperElem adjunct(unsigned long p, const HyperElem& gamma, const BigInt& n);

/// Deficits j/(p n) < upper with n <= max_n, strictly decreasing.
std::vector<Deficit> enumerate_deficits(unsigned long p, const Rational& upper,
                                        unsigned long max_n);

/// N b+ >= floor((N+1) frac(b)) + N floor(b).
bool complement_coeff_check(const BigInt& N, const Rational& b, const Rational& b_plus);

/// Smallest nonzero element of Phi_p: 1/2 for p = 1, 1/p otherwise.
Rational min_nonzero_element(unsigned long p);

/// Largest deficit below 1: 1/2 for p = 1, (p-1)/p otherwise.
Rational max_deficit(unsigned long p);

std::string to_string(const HyperElem& e);

}  // namespace gapcert

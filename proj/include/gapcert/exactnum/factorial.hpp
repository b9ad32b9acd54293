#pragma once

#include "gapcert/exactnum/dyadic.hpp"
#include "gapcert/exactnum/magnitude.hpp"
#include "gapcert/exactnum/rational.hpp"

namespace gapcert {

constexpr unsigned long kDefaultFactorialCap = 100000;

/// n! exactly. Throws CapError when n exceeds `cap`.
BigInt factorial(unsigned long n, unsigned long cap = kDefaultFactorialCap);

/// Enclosure of n! for any n. Below the cap the exact value is used;
/// above it, n log2 n - (n-1) log2 e <= log2 n! <= (n+1) log2(n+1) - n log2 e.
Magnitude factorial_mag(unsigned long n, Precision prec = {},
                        unsigned long cap = kDefaultFactorialCap);

}  // namespace gapcert

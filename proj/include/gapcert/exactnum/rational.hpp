#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace gapcert {

using BigInt = mpz_class;

/// Reduced fraction with positive denominator. gmpxx keeps mpq_class
/// canonical through arithmetic; the helpers below canonicalize on every
/// construction path that could bypass that.
using Rational = mpq_class;

Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(long num, long den = 1);

/// Parses "a/b" or "a" (no decimals). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);

BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);
/// x - floor(x), in [0, 1).
Rational frac(const Rational& x);

/// Number of bits of |x|; 0 for x == 0.
std::size_t bit_length(const BigInt& x);

/// True when x = 2^k for some integer k (k may be negative).
bool is_power_of_two(const Rational& x, long* exponent = nullptr);

Rational pow2(long exponent);

}  // namespace gapcert

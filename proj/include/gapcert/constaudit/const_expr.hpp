#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "gapcert/exactnum/magnitude.hpp"
#include "gapcert/exactnum/rational.hpp"

namespace gapcert {

/// Expression over integer literals, n!, powers with an exact integer
/// exponent, products, quotients and sums. Values are positive.
struct ConstExpr;
using ConstExprPtr = std::shared_ptr<const ConstExpr>;

struct ConstExpr {
  enum class Kind { Int, Factorial, Pow, Product, Reciprocal, Sum };
  Kind kind = Kind::Int;
  BigInt integer;          // Int literal, or n for Factorial
  ConstExprPtr lhs, rhs;   // Pow: base, exponent; Product/Sum: operands; Reciprocal: lhs

  static ConstExprPtr make_int(const BigInt& v);
  static ConstExprPtr make_factorial(const BigInt& n);
  static ConstExprPtr make_pow(ConstExprPtr base, ConstExprPtr exponent);
  static ConstExprPtr make_product(ConstExprPtr a, ConstExprPtr b);
  static ConstExprPtr make_reciprocal(ConstExprPtr a);
  static ConstExprPtr make_sum(ConstExprPtr a, ConstExprPtr b);
};

/// Grammar: sum := prod ('+' prod)*; prod := power (('*'|'/') power)*;
/// power := postfix ('^' power)?; postfix := atom '!'*; atom := INT | '(' sum ')'.
/// Throws std::invalid_argument on malformed input.
ConstExprPtr parse_const_expr(std::string_view text);

std::string to_string(const ConstExpr& e);

/// Exact value when every intermediate stays within `bit_budget` bits.
std::optional<Rational> exact_value(const ConstExpr& e, std::size_t bit_budget = 1 << 20);

/// prime -> exponent, zero exponents dropped. A Sum has a normal form only
/// when its exact value is small enough to factor.
using PrimeMap = std::map<BigInt, BigInt>;
std::optional<PrimeMap> prime_map(const ConstExpr& e);
std::string to_string(const PrimeMap& m);

/// Prime factorization of a positive integer by trial division.
PrimeMap factor_integer(const BigInt& n);
/// Legendre: exponent of each prime in n!.
PrimeMap factorial_prime_map(unsigned long n);

Magnitude magnitude_of(const ConstExpr& e, Precision prec = {});

}  // namespace gapcert

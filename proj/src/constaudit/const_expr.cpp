#include "gapcert/constaudit/const_expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gapcert/errors.hpp"
#include "gapcert/exactnum/factorial.hpp"

namespace gapcert {

ConstExprPtr ConstExpr::make_int(const BigInt& v) {
  auto e = std::make_shared<ConstExpr>();
  e->kind = Kind::Int;
  e->integer = v;
  return e;
}

ConstExprPtr ConstExpr::make_factorial(const BigInt& n) {
  auto e = std::make_shared<ConstExpr>();
  e->kind = Kind::Factorial;
  e->integer = n;
  return e;
}

ConstExprPtr ConstExpr::make_pow(ConstExprPtr base, ConstExprPtr exponent) {
  auto e = std::make_shared<ConstExpr>();
  e->kind = Kind::Pow;
  e->lhs = std::move(base);
  e->rhs = std::move(exponent);
  return e;
}

ConstExprPtr ConstExpr::make_product(ConstExprPtr a, ConstExprPtr b) {
  auto e = std::make_shared<ConstExpr>();
  e->kind = Kind::Product;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ConstExprPtr ConstExpr::make_reciprocal(ConstExprPtr a) {
  auto e = std::make_shared<ConstExpr>();
  e->kind = Kind::Reciprocal;
  e->lhs = std::move(a);
  return e;
}

ConstExprPtr ConstExpr::make_sum(ConstExprPtr a, ConstExprPtr b) {
  auto e = std::make_shared<ConstExpr>();
  e->kind = Kind::Sum;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ConstExprPtr parse() {
    ConstExprPtr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("constant expression '" + std::string(s_) + "': " + why +
                                " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ConstExprPtr sum() {
    ConstExprPtr e = product();
    while (eat('+')) e = ConstExpr::make_sum(e, product());
    return e;
  }

  ConstExprPtr product() {
    ConstExprPtr e = power();
    for (;;) {
      if (eat('*')) {
        e = ConstExpr::make_product(e, power());
      } else if (eat('/')) {
        e = ConstExpr::make_product(e, ConstExpr::make_reciprocal(power()));
      } else {
        return e;
      }
    }
  }

  ConstExprPtr power() {
    ConstExprPtr base = postfix();
    if (eat('^')) return ConstExpr::make_pow(base, power());
    return base;
  }

  ConstExprPtr postfix() {
    ConstExprPtr e = atom();
    while (eat('!')) {
      if (e->kind != ConstExpr::Kind::Int) fail("factorial of a non-literal");
      e = ConstExpr::make_factorial(e->integer);
    }
    return e;
  }

  ConstExprPtr atom() {
    skip();
    if (eat('(')) {
      ConstExprPtr e = sum();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return ConstExpr::make_int(BigInt(std::string(s_.substr(start, pos_ - start))));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool needs_parens(const ConstExpr& e) { return e.kind == ConstExpr::Kind::Sum; }

std::string wrap(const ConstExpr& e, bool always = false) {
  if (always && e.kind != ConstExpr::Kind::Int && e.kind != ConstExpr::Kind::Factorial) {
    return "(" + to_string(e) + ")";
  }
  return needs_parens(e) ? "(" + to_string(e) + ")" : to_string(e);
}

BigInt exact_integer_exponent(const ConstExpr& e) {
  auto v = exact_value(e, 4096);
  if (!v || v->get_den() != 1) throw DomainError("exponent must be an exact integer: " + to_string(e));
  return v->get_num();
}

void add_into(PrimeMap& acc, const PrimeMap& m, const BigInt& scale) {
  for (const auto& [prime, exp] : m) {
    BigInt& slot = acc[prime];
    slot += exp * scale;
    if (slot == 0) acc.erase(prime);
  }
}

}  // namespace

ConstExprPtr parse_const_expr(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const ConstExpr& e) {
  switch (e.kind) {
    case ConstExpr::Kind::Int: return to_string(e.integer);
    case ConstExpr::Kind::Factorial: return to_string(e.integer) + "!";
    case ConstExpr::Kind::Pow: return wrap(*e.lhs, true) + "^" + wrap(*e.rhs, true);
    case ConstExpr::Kind::Product: return wrap(*e.lhs) + "*" + wrap(*e.rhs);
    case ConstExpr::Kind::Reciprocal: return "1/" + wrap(*e.lhs, true);
    case ConstExpr::Kind::Sum: return to_string(*e.lhs) + "+" + to_string(*e.rhs);
  }
  return "";
}

std::optional<Rational> exact_value(const ConstExpr& e, std::size_t bit_budget) {
  auto fits = [&](const Rational& r) {
    return bit_length(r.get_num()) + bit_length(r.get_den()) <= bit_budget;
  };
  switch (e.kind) {
    case ConstExpr::Kind::Int:
      return Rational(e.integer);
    case ConstExpr::Kind::Factorial: {
      if (!e.integer.fits_ulong_p()) return std::nullopt;
      const unsigned long n = e.integer.get_ui();
      // log2 n! <= n log2 n
      if (n > 1 && static_cast<double>(n) * std::log2(static_cast<double>(n)) > bit_budget) {
        return std::nullopt;
      }
      return Rational(factorial(n));
    }
    case ConstExpr::Kind::Pow: {
      auto base = exact_value(*e.lhs, bit_budget);
      auto exp = exact_value(*e.rhs, bit_budget);
      if (!base || !exp || exp->get_den() != 1) return std::nullopt;
      const BigInt& k = exp->get_num();
      const BigInt mag = abs(k);
      if (*base == 1) return Rational(1);
      const std::size_t size = bit_length(base->get_num()) + bit_length(base->get_den());
      if (!mag.fits_ulong_p() || mag.get_ui() * size > bit_budget) return std::nullopt;
      if (*base == 0 && k < 0) throw DomainError("zero to a negative power");
      BigInt num, den;
      mpz_pow_ui(num.get_mpz_t(), base->get_num_mpz_t(), mag.get_ui());
      mpz_pow_ui(den.get_mpz_t(), base->get_den_mpz_t(), mag.get_ui());
      Rational r = make_rational(num, den);
      if (k < 0) r = Rational(1) / r;
      return r;
    }
    case ConstExpr::Kind::Product: {
      auto a = exact_value(*e.lhs, bit_budget);
      auto b = exact_value(*e.rhs, bit_budget);
      if (!a || !b) return std::nullopt;
      Rational r = *a * *b;
      if (!fits(r)) return std::nullopt;
      return r;
    }
    case ConstExpr::Kind::Reciprocal: {
      auto a = exact_value(*e.lhs, bit_budget);
      if (!a) return std::nullopt;
      if (*a == 0) throw DomainError("reciprocal of zero");
      return Rational(1) / *a;
    }
    case ConstExpr::Kind::Sum: {
      auto a = exact_value(*e.lhs, bit_budget);
      auto b = exact_value(*e.rhs, bit_budget);
      if (!a || !b) return std::nullopt;
      Rational r = *a + *b;
      if (!fits(r)) return std::nullopt;
      return r;
    }
  }
  return std::nullopt;
}

PrimeMap factor_integer(const BigInt& n_in) {
  if (n_in <= 0) throw DomainError("factor_integer needs a positive integer");
  PrimeMap out;
  BigInt n = n_in;
  for (BigInt d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      out[d] += 1;
      n /= d;
    }
  }
  if (n > 1) out[n] += 1;
  return out;
}

PrimeMap factorial_prime_map(unsigned long n) {
  PrimeMap out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (unsigned long p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (unsigned long m = p * p; m <= n; m += p) composite[m] = true;
    unsigned long e = 0;
    for (unsigned long pk = p; pk <= n; pk *= p) {
      e += n / pk;
      if (pk > n / p) break;
    }
    out[BigInt(p)] = BigInt(e);
  }
  return out;
}

std::optional<PrimeMap> prime_map(const ConstExpr& e) {
  switch (e.kind) {
    case ConstExpr::Kind::Int:
      if (e.integer <= 0) return std::nullopt;
      if (bit_length(e.integer) > 80) return std::nullopt;
      return factor_integer(e.integer);
    case ConstExpr::Kind::Factorial:
      if (!e.integer.fits_ulong_p()) return std::nullopt;
      return factorial_prime_map(e.integer.get_ui());
    case ConstExpr::Kind::Pow: {
      auto base = prime_map(*e.lhs);
      if (!base) return std::nullopt;
      const BigInt k = exact_integer_exponent(*e.rhs);
      PrimeMap out;
      add_into(out, *base, k);
      return out;
    }
    case ConstExpr::Kind::Product: {
      auto a = prime_map(*e.lhs);
      auto b = prime_map(*e.rhs);
      if (!a || !b) return std::nullopt;
      add_into(*a, *b, BigInt(1));
      return a;
    }
    case ConstExpr::Kind::Reciprocal: {
      auto a = prime_map(*e.lhs);
      if (!a) return std::nullopt;
      PrimeMap out;
      add_into(out, *a, BigInt(-1));
      return out;
    }
    case ConstExpr::Kind::Sum: {
      auto v = exact_value(e, 80);
      if (!v || *v <= 0) return std::nullopt;
      PrimeMap out = factor_integer(v->get_num());
      add_into(out, factor_integer(v->get_den()), BigInt(-1));
      return out;
    }
  }
  return std::nullopt;
}

std::string to_string(const PrimeMap& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [prime, exp] : m) {
    if (!first) out += ", ";
    first = false;
    out += to_string(prime) + ": " + to_string(exp);
  }
  return out + "}";
}

Magnitude magnitude_of(const ConstExpr& e, Precision prec) {
  switch (e.kind) {
    case ConstExpr::Kind::Int:
      return Magnitude::from_integer(e.integer, prec);
    case ConstExpr::Kind::Factorial:
      if (!e.integer.fits_ulong_p()) throw CapError("factorial argument too large");
      return factorial_mag(e.integer.get_ui(), prec);
    case ConstExpr::Kind::Pow: {
      const BigInt k = exact_integer_exponent(*e.rhs);
      if (k == 0) return Magnitude(Rational(1));
      Magnitude base = magnitude_of(*e.lhs, prec);
      const bool flip = base.reciprocal();
      if (flip) base = mag_reciprocal(base, prec);
      Magnitude r = mag_pow(base, Magnitude::from_integer(abs(k), prec), prec);
      if (flip != (k < 0)) r = mag_reciprocal(r, prec);
      return r;
    }
    case ConstExpr::Kind::Product:
      return mag_mul(magnitude_of(*e.lhs, prec), magnitude_of(*e.rhs, prec), prec);
    case ConstExpr::Kind::Reciprocal:
      return mag_reciprocal(magnitude_of(*e.lhs, prec), prec);
    case ConstExpr::Kind::Sum:
      return mag_add(magnitude_of(*e.lhs, prec), magnitude_of(*e.rhs, prec), prec);
  }
  return Magnitude();
}

}  // namespace gapcert

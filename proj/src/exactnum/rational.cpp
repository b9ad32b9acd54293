#include "gapcert/exactnum/rational.hpp"

#include <stdexcept>

namespace gapcert {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(long num, long den) {
  return make_rational(BigInt(num), BigInt(den));
}

namespace {

BigInt parse_integer(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("empty integer");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw std::invalid_argument("not a rational literal: " + std::string(text));
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw std::invalid_argument("denominator must be unsigned: " + std::string(text));
  }
  BigInt den = parse_integer(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return make_rational(num, den);
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const BigInt& x) { return x.get_str(); }

BigInt floor(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

BigInt ceil(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& x) { return x - Rational(floor(x)); }

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

bool is_power_of_two(const Rational& x, long* exponent) {
  if (x <= 0) return false;
  const BigInt& n = x.get_num();
  const BigInt& d = x.get_den();
  if (d == 1) {
    if (mpz_popcount(n.get_mpz_t()) != 1) return false;
    if (exponent) *exponent = static_cast<long>(bit_length(n)) - 1;
    return true;
  }
  if (n != 1 || mpz_popcount(d.get_mpz_t()) != 1) return false;
  if (exponent) *exponent = -(static_cast<long>(bit_length(d)) - 1);
  return true;
}

Rational pow2(long exponent) {
  BigInt one(1);
  BigInt p;
  if (exponent >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    return Rational(p);
  }
  mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent));
  return Rational(BigInt(1), p);
}

}  // namespace gapcert

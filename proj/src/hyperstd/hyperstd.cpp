#include "gapcert/hyperstd/hyperstd.hpp"

#include <algorithm>

#include "gapcert/errors.hpp"

namespace gapcert {

namespace {

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

void require_p(unsigned long p) {
  if (p == 0) throw DomainError("p must be a positive integer");
}

}  // namespace

Rational HyperElem::value() const { return Rational(1) - deficit(); }

Rational HyperElem::deficit() const { return make_rational(k, BigInt(p) * n); }

Rational Deficit::value() const { return make_rational(j, BigInt(p) * n); }

std::optional<HyperElem> membership(unsigned long p, const Rational& x) {
  require_p(p);
  if (x < 0 || x > 1) return std::nullopt;
  const Rational d = Rational(1) - x;
  const BigInt& a = d.get_num();
  const BigInt& b = d.get_den();
  // p n d is integral iff b / gcd(b, p) divides n; the smallest such n gives
  // k = a p / gcd(b, p), which must not exceed p.
  const BigInt g = gcd(b, BigInt(p));
  if (a > g) return std::nullopt;
  HyperElem e;
  e.p = p;
  e.n = b / g;
  e.k = a * BigInt(p) / g;
  return e;
}

HyperElem canonical_elem(unsigned long p, const Rational& value) {
  auto e = membership(p, value);
  if (!e) throw DomainError(to_string(value) + " is not in Phi_" + std::to_string(p));
  return *e;
}

HyperElem canonical_elem(unsigned long p, const BigInt& n, const BigInt& k) {
  require_p(p);
  if (n <= 0 || k < 0 || k > BigInt(p)) throw DomainError("invalid (n, k) for Phi_p");
  return canonical_elem(p, Rational(1) - make_rational(k, BigInt(p) * n));
}

HyperElem sum_in_phi(unsigned long p, const std::vector<HyperElem>& elems) {
  require_p(p);
  Rational sum = 0;
  for (const auto& e : elems) {
    if (e.p != p || !membership(p, e.value())) {
      throw PreconditionError("summand " + to_string(e) + " is not in Phi_" + std::to_string(p));
    }
    sum += e.value();
  }
  if (sum < 0 || sum > 1) {
    throw PreconditionError("sum " + to_string(sum) +
                            " lies outside [0, 1]; closure under sums needs sum <= 1");
  }
  auto r = membership(p, sum);
  if (!r) throw std::logic_error("sum of Phi_p elements left Phi_p: " + to_string(sum));
  return *r;
}

HyperElem adjunct(unsigned long p, const HyperElem& gamma, const BigInt& n) {
  require_p(p);
  if (n <= 0) throw DomainError("adjunct needs n >= 1");
  if (!membership(p, gamma.value())) {
    throw PreconditionError(to_string(gamma) + " is not in Phi_" + std::to_string(p));
  }
  return canonical_elem(p, n * gamma.n, gamma.k);
}

std::vector<Deficit> enumerate_deficits(unsigned long p, const Rational& upper,
                                        unsigned long max_n) {
  require_p(p);
  std::vector<Rational> values;
  for (unsigned long n = 1; n <= max_n; ++n) {
    for (unsigned long j = 1; j <= p; ++j) {
      Rational v = make_rational(static_cast<long>(j), static_cast<long>(p * n));
      if (v < 1 && v < upper) values.push_back(v);
    }
  }
  std::sort(values.begin(), values.end(), [](const Rational& a, const Rational& b) { return a > b; });
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Deficit> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    HyperElem e = canonical_elem(p, Rational(1) - v);
    out.push_back(Deficit{p, e.k, e.n});
  }
  return out;
}

bool complement_coeff_check(const BigInt& N, const Rational& b, const Rational& b_plus) {
  if (b < 0 || b_plus < 0) throw DomainError("coefficients must be non-negative");
  const Rational lhs = Rational(N) * b_plus;
  const Rational rhs = Rational(floor(Rational(N + 1) * frac(b))) + Rational(N * floor(b));
  return lhs >= rhs;
}

Rational min_nonzero_element(unsigned long p) {
  require_p(p);
  return p == 1 ? make_rational(1, 2) : make_rational(1, static_cast<long>(p));
}

Rational max_deficit(unsigned long p) {
  require_p(p);
  return p == 1 ? make_rational(1, 2) : make_rational(static_cast<long>(p - 1), static_cast<long>(p));
}

std::string to_string(const HyperElem& e) {
  return to_string(e.value()) + " (n=" + to_string(e.n) + ", k=" + to_string(e.k) + ")";
}

}  // namespace gapcert

#include "gapcert/egyptian/egyptian.hpp"

#include <string>

#include "gapcert/errors.hpp"

namespace gapcert {

BigInt sylvester_exact(unsigned n, unsigned cap) {
  if (n < 1) throw DomainError("Sylvester index starts at 1");
  if (n > cap) {
    throw CapError("exact Sylvester number S_" + std::to_string(n) + " exceeds cap " +
                   std::to_string(cap));
  }
  BigInt s = 2;
  for (unsigned i = 2; i <= n; ++i) s = s * s - s + 1;
  return s;
}

SylvesterEntry sylvester(unsigned n, unsigned cap) {
  if (n < 1) throw DomainError("Sylvester index starts at 1");
  SylvesterEntry e;
  e.n = n;
  if (n <= cap) e.exact = sylvester_exact(n, cap);
  e.bound = Magnitude::tower(false, 2, Rational(n), Rational(n));
  return e;
}

namespace {

struct UnitSearch {
  const BigInt& max_den;
  Rational incumbent_gap;
  std::vector<BigInt> incumbent;
  bool have = false;
  bool capped = false;
  std::vector<BigInt> path;

  void offer(const Rational& gap, std::vector<BigInt> witness) {
    if (!have || gap < incumbent_gap || (gap == incumbent_gap && witness < incumbent)) {
      have = true;
      incumbent_gap = gap;
      incumbent = std::move(witness);
    }
  }

  static BigInt smallest_below(const Rational& rho, const BigInt& prev) {
    // least m >= prev with 1/m < rho
    BigInt m = floor(Rational(1) / rho) + 1;
    return m < prev ? prev : m;
  }

  void greedy(Rational rho, unsigned s, BigInt prev) {
    std::vector<BigInt> w = path;
    for (unsigned i = 0; i < s; ++i) {
      prev = smallest_below(rho, prev);
      rho -= make_rational(BigInt(1), prev);
      w.push_back(prev);
    }
    offer(rho, std::move(w));
  }

  void dfs(const Rational& rho, unsigned s, const BigInt& prev) {
    if (s == 0) {
      offer(rho, path);
      return;
    }
    greedy(rho, s, prev);
    // Choosing 1/m leaves at best rho - s/m, so ties or improvements need
    // m <= s / (rho - g).
    for (BigInt m = smallest_below(rho, prev);; ++m) {
      const Rational slack = rho - incumbent_gap;
      if (slack > 0 && Rational(m) * slack > s) break;
      if (max_den != 0 && m > max_den) {
        capped = true;
        break;
      }
      path.push_back(m);
      dfs(rho - make_rational(BigInt(1), m), s - 1, m);
      path.pop_back();
    }
  }
};

}  // namespace

UnitSumResult max_unit_sum_under(const Rational& r, unsigned k, const BigInt& max_den) {
  if (r <= 0) throw DomainError("target must be positive");
  if (k == 0) throw DomainError("need at least one unit fraction");
  UnitSearch search{max_den, Rational(0), {}, false, false, {}};
  search.dfs(r, k, BigInt(2));
  UnitSumResult out;
  out.best = r - search.incumbent_gap;
  out.witness = search.incumbent;
  out.capped = search.capped;
  return out;
}

CurtissResult curtiss_min_gap(unsigned n) {
  if (n == 0) throw DomainError("Curtiss gap needs n >= 1");
  if (n > kCurtissBudget) {
    throw CapError("curtiss_min_gap search budget is n <= " + std::to_string(kCurtissBudget));
  }
  UnitSumResult r = max_unit_sum_under(Rational(1), n);
  return {Rational(1) - r.best, r.witness};
}

}  // namespace gapcert

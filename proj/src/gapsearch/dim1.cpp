#include "gapcert/gapsearch/dim1.hpp"

#include "gapcert/errors.hpp"

namespace gapcert {

std::string to_string(GapKind k) {
  switch (k) {
    case GapKind::LCT: return "lct";
    case GapKind::GLCT: return "glct";
    case GapKind::MLD: return "mld";
  }
  return "lct";
}

Dim1GapReport lct_gap_dim1(unsigned long p) {
  if (p == 0) throw DomainError("p must be a positive integer");
  // (1 - gamma)/m < 1 is largest at m = 1 with the largest deficit below 1,
  // or at gamma = 0, m = 2, which gives 1/2.
  Rational sup = max_deficit(p);
  Dim1GapReport r;
  r.kind = GapKind::LCT;
  r.p = p;
  r.t = sup;
  r.multiplicity = 1;
  r.gammas = {Rational(1) - sup};
  r.gap = Rational(1) - sup;
  return r;
}

namespace {

std::vector<Rational> values_of(const std::vector<HyperElem>& w) {
  std::vector<Rational> out;
  for (const auto& e : w) out.push_back(e.value());
  return out;
}

}  // namespace

Dim1GapReport glct_max_dim1(unsigned long p, const SearchCaps& caps) {
  if (p == 0) throw DomainError("p must be a positive integer");
  Dim1GapReport r;
  r.kind = GapKind::GLCT;
  r.p = p;

  // s = 1: t = 2 - (smallest sum above 1).
  GapCertificate one = min_sum_exceeding(p, 1, caps);
  r.t = Rational(1) - one.value;
  r.gammas = values_of(one.witness);
  r.multiplicity = 1;

  // s = 2: t = (2 - smallest nonzero element)/2.
  const Rational m0 = min_nonzero_element(p);
  const Rational t2 = Rational(1) - m0 / 2;
  if (t2 > r.t) {
    r.t = t2;
    r.gammas = {m0};
    r.multiplicity = 2;
  }
  // s >= 3: t <= 2/3.
  const Rational t3(2, 3);
  if (t3 > r.t) {
    r.t = t3;
    r.gammas = {};
    r.multiplicity = 3;
  }
  r.gap = Rational(1) - r.t;
  return r;
}

Dim1GapReport mld_gap_dim1(unsigned long p, const SearchCaps& caps) {
  Dim1GapReport g = glct_max_dim1(p, caps);
  Dim1GapReport r = g;
  r.kind = GapKind::MLD;
  r.gammas = g.gammas;
  for (unsigned long i = 0; i < g.multiplicity; ++i) r.gammas.push_back(g.t);
  return r;
}

EquationTwoResult equation_two_solver(unsigned long p, const Rational& delta,
                                      const SearchCaps& caps) {
  if (p == 0) throw DomainError("p must be a positive integer");
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0, 1)");
  EquationTwoResult out;
  // With m boundary terms the gamma sum must lie in (2 - m, 2 - m(1 - delta)),
  // and every value in that open interval is reachable by equal b_j.
  for (unsigned long m = 1; Rational(BigInt(m)) * (Rational(1) - delta) < 2; ++m) {
    const Rational lo = Rational(2) - Rational(BigInt(m));
    const Rational hi = Rational(2) - Rational(BigInt(m)) * (Rational(1) - delta);
    Rational sum;
    std::vector<Rational> gammas;
    if (lo < 0) {
      sum = 0;
    } else {
      MinSumResult r = min_sum_above(p, lo, caps);
      sum = lo + r.gap;
      gammas = values_of(r.witness);
    }
    if (sum < hi) {
      out.sat = true;
      out.gammas = gammas;
      const Rational b = (Rational(2) - sum) / Rational(BigInt(m));
      out.bs.assign(m, b);
      return out;
    }
  }
  return out;
}

BigInt curve_complement_index(unsigned long p, const Rational& b) {
  if (p == 0) throw DomainError("p must be a positive integer");
  const Rational pp(BigInt(p * (p + 1)));
  const bool in_range = b >= 0 && (b <= Rational(1) - Rational(1) / pp || b == 1);
  if (!in_range || !membership(p, b)) {
    throw PreconditionError("b = " + to_string(b) + " must lie in Phi_" + std::to_string(p) +
                            " intersected with [0, 1 - 1/(p(p+1))] or {1}");
  }
  const BigInt& v = b.get_den();
  BigInt g;
  mpz_gcd_ui(g.get_mpz_t(), v.get_mpz_t(), p);
  BigInt index = v / g;
  if (index > BigInt(p * (p + 1))) {
    throw std::logic_error("complement index " + to_string(index) + " exceeds p(p+1)");
  }
  return index;
}

bool cy_witness_check(const Rational& target, const std::vector<Rational>& coeffs) {
  Rational sum = 0;
  for (const auto& c : coeffs) {
    if (c <= 0 || c > 1) return false;
    sum += c;
  }
  return sum == target;
}

}  // namespace gapcert

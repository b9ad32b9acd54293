#include "gapcert/boundchain/boundchain.hpp"

#include <algorithm>

#include "gapcert/egyptian/egyptian.hpp"
#include "gapcert/errors.hpp"

namespace gapcert {

namespace {

Magnitude mag(unsigned long x, Precision prec) { return Magnitude::from_integer(BigInt(x), prec); }

Magnitude fifth_power(const Magnitude& x, Precision prec) {
  Magnitude sq = mag_mul(x, x, prec);
  return mag_mul(mag_mul(sq, sq, prec), x, prec);
}

// 2^(2^n) >= S_n, as an upper bound for the Sylvester number at a real index.
Magnitude sylvester_bound(const Magnitude& index, Precision prec) {
  const Magnitude two = mag(2, prec);
  return mag_pow(two, mag_pow(two, index, prec), prec);
}

// (p M + 1) p + 2
Magnitude sylvester_index(unsigned long p, const Magnitude& m, Precision prec) {
  const Magnitude pm = mag(p, prec);
  Magnitude inner = mag_add(mag_mul(pm, m, prec), mag(1, prec), prec);
  return mag_add(mag_mul(inner, pm, prec), mag(2, prec), prec);
}

std::string describe_outcome(const std::string& what, CompareOutcome c) {
  return what + ": " + to_string(c);
}

}  // namespace

std::string to_string(Direction d) {
  switch (d) {
    case Direction::LowerBound: return "lower_bound";
    case Direction::UpperBound: return "upper_bound";
    case Direction::Exact: return "exact";
  }
  return "exact";
}

bool BoundReport::all_certified() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.certified(); });
}

bool BoundReport::any_inconclusive() const {
  return std::any_of(checks.begin(), checks.end(), [](const BoundCheck& c) {
    return c.outcome == CompareOutcome::Inconclusive;
  });
}

MValue m_of_epsilon(const Rational& eps, Precision prec) {
  if (eps <= 0 || eps > 2) throw DomainError("M_eps needs eps in (0, 2]");
  const BigInt f = floor(Rational(2) / eps);
  const Rational e5 = eps * eps * eps * eps * eps;
  const BigInt e = floor(Rational(128) / e5);
  MValue out;
  if (e.fits_ulong_p() && e.get_ui() * bit_length(f) <= (1UL << 20)) {
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), f.get_mpz_t(), e.get_ui());
    out.exact = power * (f + 2);
    out.enclosure = Magnitude::from_integer(*out.exact, prec);
  } else {
    Magnitude power = mag_pow(Magnitude::from_integer(f, prec), Magnitude::from_integer(e, prec), prec);
    out.enclosure = mag_mul(power, Magnitude::from_integer(f + 2, prec), prec);
  }
  return out;
}

Upper m_upper(const Lower& eps_lower, Precision prec) {
  const Magnitude t = mag_reciprocal(eps_lower.value, prec);
  const Magnitude two_t = mag_mul(mag(2, prec), t, prec);
  const Magnitude e = mag_mul(mag(128, prec), fifth_power(t, prec), prec);
  Upper out;
  out.value = mag_mul(mag_pow(two_t, e, prec), mag_add(two_t, mag(2, prec), prec), prec);
  out.trace = eps_lower.trace;
  out.trace.push_back("M upper bound (2T)^(128 T^5) (2T+2), T = 1/eps_lower: " + describe(out.value));
  return out;
}

BoundReport alpha_exact_first(unsigned long p, unsigned long budget, Precision prec) {
  if (p == 0) throw DomainError("p must be a positive integer");
  BoundReport r;
  r.quantity = "alpha(p,2)";
  r.p = p;
  MValue m2 = m_of_epsilon(Rational(2), prec);
  const BigInt m = *m2.exact;
  r.trace.push_back("M_2 = " + to_string(m) + " by direct evaluation");
  const unsigned long q = m.get_ui();
  const unsigned long index = (p * q + 1) * p + 2;

  Magnitude floor_bound;
  if (index <= kSylvesterExactCap) {
    floor_bound = Magnitude::from_rational(
        make_rational(BigInt(1), sylvester_exact(static_cast<unsigned>(index))), prec);
  } else {
    floor_bound = mag_reciprocal(sylvester_bound(mag(index, prec), prec), prec);
  }

  if (p <= budget) {
    Epsilon2 e = epsilon2(p, q);
    if (e.exact) {
      r.direction = Direction::Exact;
      r.exact_value = e.lo;
      r.value = Magnitude::from_rational(e.lo, prec);
      r.trace.push_back("epsilon_1(p,3) = " + to_string(e.eps1.value) + " by proven search");
      r.trace.push_back("alpha(p,2) = epsilon_2(p,3) = " + to_string(e.lo));
      BoundCheck c;
      c.claim = "alpha(p,2) > 1/S_" + std::to_string(index);
      c.expected = CompareOutcome::GT;
      c.outcome = mag_compare(r.value, floor_bound, prec);
      r.checks.push_back(c);
      return r;
    }
    r.trace.push_back("search closed only within caps; using the Sylvester estimate");
  }
  if (p < 2) throw PreconditionError("for p = 1 only the exact search value is available");
  r.direction = Direction::LowerBound;
  r.value = floor_bound;
  r.trace.push_back("alpha(p,2) > 1/S_" + std::to_string(index) + " >= " + describe(r.value));
  return r;
}

Lower alpha_lower(unsigned long p, const Lower& eps_lower, Precision prec) {
  if (p < 2) throw PreconditionError("the Sylvester estimate for alpha needs p >= 2");
  Lower out;
  out.trace = eps_lower.trace;
  const Magnitude& l = eps_lower.value;
  if (mag_compare(l, mag(2, prec), prec) == CompareOutcome::GT) {
    throw DomainError("eps lower bound must be <= 2");
  }

  Magnitude m_bound;
  if (l.level() == 0 && l.exact()) {
    const Rational eps = l.value_interval().lo;
    MValue m = m_of_epsilon(eps, prec);
    if (m.exact) {
      const BigInt index = (BigInt(p) * *m.exact + 1) * BigInt(p) + 2;
      if (index <= kSylvesterExactCap) {
        const unsigned n = static_cast<unsigned>(index.get_ui());
        out.value = Magnitude::from_rational(make_rational(BigInt(1), sylvester_exact(n)), prec);
        out.trace.push_back("alpha >= 1/S_" + std::to_string(n) + " with M = " + to_string(*m.exact));
        return out;
      }
    }
    m_bound = m.enclosure;
    out.trace.push_back("M_eps at eps = " + to_string(eps) + ": " + describe(m_bound));
  } else {
    Upper mu = m_upper(eps_lower, prec);
    m_bound = mu.value;
    out.trace.push_back("M upper bound: " + describe(m_bound));
  }
  const Magnitude index = sylvester_index(p, m_bound, prec);
  out.value = mag_reciprocal(sylvester_bound(index, prec), prec);
  out.trace.push_back("alpha >= 2^(-2^N), N = (pM+1)p+2: " + describe(out.value));
  return out;
}

Upper l_upper_from(unsigned long p, const Lower& beta, Precision prec) {
  Upper out;
  out.trace = beta.trace;
  Magnitude ratio = mag_mul(mag(p, prec), mag_reciprocal(beta.value, prec), prec);
  out.value = mag_add(ratio, mag(1, prec), prec);
  out.trace.push_back("l <= p/beta_lower + 1: " + describe(out.value));
  return out;
}

Lower upsilon_lower_from(const Upper& l, Precision prec) {
  Lower out;
  out.trace = l.trace;
  const Magnitude& lv = l.value;
  Magnitude exponent = mag_add(mag_mul(mag(128, prec), fifth_power(lv, prec), prec),
                               mag_mul(mag(4, prec), lv, prec), prec);
  Magnitude base = mag_mul(mag(2, prec), lv, prec);
  out.value = mag_reciprocal(mag_mul(lv, mag_pow(base, exponent, prec), prec), prec);
  out.trace.push_back("upsilon >= 1/(l (2l)^(128 l^5 + 4 l)) at l upper bound: " + describe(out.value));
  return out;
}

BigInt l_of_exact_beta(unsigned long p, const Rational& beta) {
  if (beta <= 0) throw DomainError("beta must be positive");
  return ceil(Rational(BigInt(p)) / beta);
}

namespace {

BetaSuite beta_suite_at(unsigned long p, Precision prec) {
  if (p < 2) throw PreconditionError("the bound chain needs p >= 2");
  BetaSuite s;
  BoundReport first = alpha_exact_first(p, kAlphaExactBudget, prec);
  Lower a{first.value, first.trace};
  for (int step = 2; step <= 4; ++step) {
    a = alpha_lower(p, a, prec);
    a.trace.push_back("step " + std::to_string(step) + " of beta = alpha(p, alpha(p, alpha(p, alpha(p, 2))))");
  }

  s.beta.quantity = "beta";
  s.beta.p = p;
  s.beta.direction = Direction::LowerBound;
  s.beta.value = a.value;
  s.beta.trace = a.trace;
  {
    const Magnitude t1 = mag_reciprocal(knuth_tower(2, 14, Rational(BigInt(12 * p * p)), prec), prec);
    const Magnitude t2 = mag_reciprocal(knuth_tower(2, 17, Rational(BigInt(p)), prec), prec);
    const Rational cap = std::min(Rational(1, 6), make_rational(BigInt(1), BigInt(p * (p + 1))));
    s.beta.checks.push_back({"beta > 1/((2^)^14 (12 p^2))", CompareOutcome::GT,
                             mag_compare(a.value, t1, prec)});
    s.beta.checks.push_back({"beta > 1/((2^)^17 p)", CompareOutcome::GT,
                             mag_compare(a.value, t2, prec)});
    s.beta.checks.push_back({"beta <= min{1/6, 1/(p(p+1))}", CompareOutcome::LT,
                             mag_compare(a.value, Magnitude::from_rational(cap, prec), prec)});
  }

  Upper l = l_upper_from(p, a, prec);
  s.l.quantity = "l";
  s.l.p = p;
  s.l.direction = Direction::UpperBound;
  s.l.value = l.value;
  s.l.trace = l.trace;
  s.l.checks.push_back({"l < (2^)^17 p", CompareOutcome::LT,
                        mag_compare(l.value, knuth_tower(2, 17, Rational(BigInt(p)), prec), prec)});

  Lower u = upsilon_lower_from(l, prec);
  s.upsilon.quantity = "upsilon";
  s.upsilon.p = p;
  s.upsilon.direction = Direction::LowerBound;
  s.upsilon.value = u.value;
  s.upsilon.trace = u.trace;
  s.upsilon.checks.push_back(
      {"upsilon > 1/((2^)^19 p)", CompareOutcome::GT,
       mag_compare(u.value, mag_reciprocal(knuth_tower(2, 19, Rational(BigInt(p)), prec), prec), prec)});
  for (BoundReport* r : {&s.beta, &s.l, &s.upsilon}) {
    for (const auto& c : r->checks) r->trace.push_back(describe_outcome(c.claim, c.outcome));
  }
  return s;
}

}  // namespace

BetaSuite beta_suite(unsigned long p, Precision prec) {
  // Inconclusive comparisons are retried at higher precision; certified
  // outcomes never change under refinement.
  BetaSuite s;
  for (int bits = prec.bits; bits <= 4 * prec.bits; bits *= 2) {
    s = beta_suite_at(p, Precision{bits});
    if (!s.beta.any_inconclusive() && !s.l.any_inconclusive() && !s.upsilon.any_inconclusive()) break;
  }
  return s;
}

BoundReport beta_lower(unsigned long p, Precision prec) { return beta_suite(p, prec).beta; }
BoundReport l_upper(unsigned long p, Precision prec) { return beta_suite(p, prec).l; }
BoundReport upsilon_lower(unsigned long p, Precision prec) { return beta_suite(p, prec).upsilon; }

bool EstimationInstance::passed() const {
  return status == InstanceStatus::Checked && m_vs_power == CompareOutcome::LT &&
         alpha_vs_tower == CompareOutcome::GT;
}

std::vector<EstimationInstance> estimation_lemma_audit(unsigned long p,
                                                       const std::vector<Magnitude>& qs,
                                                       Precision prec) {
  if (p < 2) throw PreconditionError("the estimation lemma needs p >= 2");
  const Rational h(BigInt(12 * p * p));
  const Magnitude hypothesis = Magnitude::tower(false, 2, h, h, prec);
  std::vector<EstimationInstance> out;
  for (const Magnitude& q : qs) {
    EstimationInstance inst;
    const CompareOutcome hyp = mag_compare(q, hypothesis, prec);
    if (hyp != CompareOutcome::GT && hyp != CompareOutcome::EQ) {
      out.push_back(inst);
      continue;
    }
    inst.status = InstanceStatus::Checked;
    const Magnitude two_q = mag_mul(mag(2, prec), q, prec);
    const Magnitude m_q = mag_mul(
        mag_pow(two_q, mag_mul(mag(128, prec), fifth_power(q, prec), prec), prec),
        mag_add(two_q, mag(2, prec), prec), prec);
    const Magnitude q6 = mag_mul(fifth_power(q, prec), q, prec);
    inst.m_vs_power = mag_compare(m_q, mag_pow(q, q6, prec), prec);

    Lower eps{mag_reciprocal(q, prec), {}};
    Lower a = alpha_lower(p, eps, prec);
    inst.alpha_vs_tower =
        mag_compare(a.value, mag_reciprocal(knuth_tower(2, 4, q, prec), prec), prec);
    out.push_back(inst);
  }
  return out;
}

}  // namespace gapcert

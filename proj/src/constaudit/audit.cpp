#include "gapcert/constaudit/audit.hpp"

#include <algorithm>

#include "gapcert/constaudit/registry.hpp"
#include "gapcert/errors.hpp"
#include "gapcert/exactnum/factorial.hpp"

namespace gapcert {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Falsified: return "falsified";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(AuditMethod m) {
  return m == AuditMethod::ExactNormalForm ? "exact_normal_form" : "magnitude_compare";
}

namespace {

// Dense univariate polynomial with rational coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static Poly x() { return Poly({Rational(0), Rational(1)}); }
  static Poly constant(const Rational& v) { return Poly({v}); }

  Poly operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + o * constant(Rational(-1)); }
  Poly operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
  }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

Magnitude constant_mag(std::string_view id, Precision prec) {
  return magnitude_of(*find_constant(id).expr, prec);
}

Magnitude mag(unsigned long v, Precision prec) { return Magnitude::from_integer(BigInt(v), prec); }

AuditResult compare_claim(const std::string& claim, const Magnitude& a, const Magnitude& b,
                          CompareOutcome wanted) {
  AuditResult r;
  r.claim = claim;
  r.method = AuditMethod::MagnitudeCompare;
  const CompareOutcome c = mag_compare(a, b);
  r.evidence = "compare: " + to_string(c) + "; lhs " + describe(a) + ", rhs " + describe(b);
  if (c == wanted) {
    r.verdict = Verdict::Verified;
  } else if (c == CompareOutcome::Inconclusive) {
    r.verdict = Verdict::Inconclusive;
  } else {
    r.verdict = Verdict::Falsified;
  }
  return r;
}

}  // namespace

AuditResult verify_normal_form_identity(const std::string& claim, const std::string& lhs,
                                        const std::string& rhs) {
  AuditResult r;
  r.claim = claim;
  r.method = AuditMethod::ExactNormalForm;
  auto a = prime_map(*parse_const_expr(lhs));
  auto b = prime_map(*parse_const_expr(rhs));
  if (!a || !b) {
    r.verdict = Verdict::Inconclusive;
    r.evidence = "no prime-exponent normal form";
    return r;
  }
  r.verdict = *a == *b ? Verdict::Verified : Verdict::Falsified;
  r.evidence = "lhs " + to_string(*a) + "; rhs " + to_string(*b);
  return r;
}

AuditResult verify_identity_I0_main() {
  return verify_normal_form_identity("2*84^(256*42^5+338) = 8*(42*84^(128*42^5+168))^2",
                                     "2*84^(256*42^5+338)", "8*(42*84^(128*42^5+168))^2");
}

std::vector<AuditResult> verify_identity_I0() {
  std::vector<AuditResult> out;
  out.push_back(verify_identity_I0_main());
  out.push_back(verify_normal_form_identity("2*84^2 = 8*42^2", "2*84^2", "8*42^2"));
  AuditResult control = verify_normal_form_identity(
      "control: 2*84^(256*42^5+339) = 8*(42*84^(128*42^5+168))^2", "2*84^(256*42^5+339)",
      "8*(42*84^(128*42^5+168))^2");
  control.expected = Verdict::Falsified;
  out.push_back(control);
  return out;
}

std::vector<AuditResult> verify_volume_decomposition() {
  std::vector<AuditResult> out;
  out.push_back(verify_normal_form_identity("84^(384*42^5+507) = I0*I1", "84^(384*42^5+507)",
                                            "2*84^(256*42^5+338)*42*84^(128*42^5+168)"));
  AuditResult control = verify_normal_form_identity(
      "control: 84^(384*42^5+508) = I0*I1", "84^(384*42^5+508)",
      "2*84^(256*42^5+338)*42*84^(128*42^5+168)");
  control.expected = Verdict::Falsified;
  out.push_back(control);
  return out;
}

std::vector<LcmRow> lcm_table() {
  std::vector<LcmRow> rows;
  for (unsigned long q = 1; q <= 6; ++q) {
    LcmRow row;
    row.q = q;
    BigInt candidate = BigInt(q) * factorial(q * (q + 1));
    row.ng_bound = std::max(BigInt(6), candidate);
    mpz_lcm(row.lcm.get_mpz_t(), BigInt(q).get_mpz_t(), row.ng_bound.get_mpz_t());
    rows.push_back(row);
  }
  return rows;
}

std::vector<AuditResult> verify_orderings(Precision prec) {
  static const char* chain[] = {"I(2,1)", "lcm-bound-fibration", "lcm-bound-doubled",
                                "nonplt-index-bound", "N(2,1)-bound", "nonexc-complement-bound"};
  std::vector<AuditResult> out;
  for (std::size_t i = 0; i + 1 < std::size(chain); ++i) {
    const NamedConstant& a = find_constant(chain[i]);
    const NamedConstant& b = find_constant(chain[i + 1]);
    out.push_back(compare_claim(a.expression + " < " + b.expression, magnitude_of(*a.expr, prec),
                                magnitude_of(*b.expr, prec), CompareOutcome::LT));
  }

  AuditResult lcm;
  lcm.claim = "max_{1<=q<=6} lcm(q, max{6, q*(q(q+1))!}) = 6*42! < 36*42!";
  lcm.method = AuditMethod::ExactNormalForm;
  BigInt best = 0;
  std::string evidence;
  for (const auto& row : lcm_table()) {
    best = std::max(best, row.lcm);
    evidence += "q=" + std::to_string(row.q) + ": " + std::to_string(bit_length(row.lcm)) + " bits; ";
  }
  const BigInt six_42 = BigInt(6) * factorial(42);
  const bool ok = best == six_42 && best < BigInt(36) * factorial(42);
  lcm.verdict = ok ? Verdict::Verified : Verdict::Falsified;
  lcm.evidence = evidence + "max = " + to_string(best);
  out.push_back(lcm);
  return out;
}

Interval log10_log10(const Magnitude& x, Precision prec) {
  const Interval l2 = lift_body(x, 1, prec);  // log2 x
  const Interval l10 = log2_of_10(prec);
  const Rational lo = l2.lo / l10.hi;  // log10 x
  const Rational hi = l2.hi / l10.lo;
  if (lo <= 0) throw DomainError("log10 log10 needs x > 10");
  return {log2_down(lo, prec) / l10.hi, log2_up(hi, prec) / l10.lo};
}

std::vector<AuditResult> verify_V0_approximation(Precision prec) {
  const Rational lo_win(1140, 100), hi_win(1142, 100), max_width(1, 100);
  auto window = [&](const std::string& claim, const Magnitude& m) {
    AuditResult r;
    r.claim = claim;
    r.method = AuditMethod::MagnitudeCompare;
    const Interval iv = log10_log10(m, prec);
    r.evidence = "log10 log10 in [" + std::to_string(iv.lo.get_d()) + ", " +
                 std::to_string(iv.hi.get_d()) + "], width " + std::to_string(iv.width().get_d());
    const bool inside = iv.lo > lo_win && iv.hi < hi_win && iv.width() < max_width;
    const bool outside = iv.hi <= lo_win || iv.lo >= hi_win;
    r.verdict = inside ? Verdict::Verified : outside ? Verdict::Falsified : Verdict::Inconclusive;
    return r;
  };
  std::vector<AuditResult> out;
  out.push_back(window("log10 log10 V0 in (11.40, 11.42)", constant_mag("V0", prec)));
  AuditResult control = window("control: log10 log10 of the non-exceptional bound in (11.40, 11.42)",
                               constant_mag("nonexc-complement-bound", prec));
  control.expected = Verdict::Falsified;
  out.push_back(control);
  return out;
}

ConstExprPtr surface_index_bound(const Rational& eps) {
  if (eps <= 0 || Rational(3) * eps * eps >= 1) {
    throw DomainError("surface index bound needs 0 < eps and 3 eps^2 < 1, got eps = " +
                      to_string(eps));
  }
  const Rational base = Rational(2) / eps;
  const BigInt e = floor(Rational(128) / (eps * eps * eps * eps * eps));
  ConstExprPtr b = ConstExpr::make_int(base.get_num());
  if (base.get_den() != 1) {
    b = ConstExpr::make_product(b, ConstExpr::make_reciprocal(ConstExpr::make_int(base.get_den())));
  }
  return ConstExpr::make_pow(b, ConstExpr::make_int(e));
}

std::vector<AuditResult> verify_threefold_delta_chain(Precision prec) {
  std::vector<AuditResult> out;
  const Magnitude i0 = constant_mag("I1", prec);  // 42*84^(128*42^5+168)
  const Magnitude a = mag_add_one(i0, prec);

  {
    // (a - x)/(x (a - 1)) = 1/x^2 at a = x + 1, as polynomials in x.
    const Poly x = Poly::x();
    const Poly av = x + Poly::constant(Rational(1));
    const Poly num = av - x;
    const Poly den = x * (av - Poly::constant(Rational(1)));
    AuditResult r;
    r.claim = "(a - I0)/(I0 (a - 1)) = 1/I0^2 at a = I0 + 1";
    r.method = AuditMethod::ExactNormalForm;
    r.verdict = num * x * x == den ? Verdict::Verified : Verdict::Falsified;
    r.evidence = "polynomial identity (a - x) x^2 = x (a - 1) with a = x + 1";
    out.push_back(r);
  }
  {
    const Magnitude a3 = mag_mul(mag_mul(a, a, prec), a, prec);
    const Magnitude lhs = mag_mul(mag_mul(mag(54, prec), a3, prec), i0, prec);
    const Magnitude i4 = mag_mul(mag_mul(i0, i0, prec), mag_mul(i0, i0, prec), prec);
    const Magnitude rhs = mag_mul(mag(64, prec), i4, prec);
    out.push_back(compare_claim("1/(8 I0^2) <= sqrt(1/(54 a^3 I0)): 54 a^3 I0 < 64 I0^4", lhs, rhs,
                                CompareOutcome::LT));
  }
  {
    const Magnitude two_i = mag_mul(mag(2, prec), i0, prec);
    out.push_back(compare_claim("sqrt(1/(2 I0 M)) < 1/42 at M = 2: 2 I0 M > 42^2",
                                mag_mul(two_i, mag(2, prec), prec), mag(1764, prec),
                                CompareOutcome::GT));
    const Magnitude m = mag_mul(mag(27, prec), mag_mul(mag_mul(a, a, prec), a, prec), prec);
    out.push_back(compare_claim("sqrt(1/(2 I0 M)) < 1/42 at M = 27 a^3: 2 I0 M > 42^2",
                                mag_mul(two_i, m, prec), mag(1764, prec), CompareOutcome::GT));
  }
  {
    struct Sample {
      Rational a, x1, x2;
    };
    const Sample samples[] = {
        {Rational(10), Rational(2), Rational(3)},
        {Rational(10), Rational(1, 2), Rational(9)},
        {Rational(100), Rational(1), Rational(50)},
        {Rational(3, 2), Rational(1, 3), Rational(1)},
        {Rational(1000), Rational(999), Rational(1000)},
    };
    AuditResult r;
    r.claim = "f_a(x) = (a - x)/(x (a - 1)) strictly decreasing on samples";
    r.method = AuditMethod::ExactNormalForm;
    r.verdict = Verdict::Verified;
    for (const auto& s : samples) {
      auto f = [&](const Rational& x) -> Rational { return (s.a - x) / (x * (s.a - 1)); };
      const Rational f1 = f(s.x1), f2 = f(s.x2);
      r.evidence += "a=" + to_string(s.a) + ": f(" + to_string(s.x1) + ")=" + to_string(f1) +
                    " > f(" + to_string(s.x2) + ")=" + to_string(f2) + "; ";
      if (!(f1 > f2)) r.verdict = Verdict::Falsified;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<AuditResult> audit_constants(Precision prec) {
  std::vector<AuditResult> out;
  for (auto& r : verify_identity_I0()) out.push_back(r);
  for (auto& r : verify_volume_decomposition()) out.push_back(r);
  for (auto& r : verify_orderings(prec)) out.push_back(r);
  for (auto& r : verify_V0_approximation(prec)) out.push_back(r);
  for (auto& r : verify_threefold_delta_chain(prec)) out.push_back(r);
  return out;
}

}  // namespace gapcert

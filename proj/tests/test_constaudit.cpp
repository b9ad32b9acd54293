#include <doctest.h>

#include <random>
#include <set>

#include "gapcert/constaudit/audit.hpp"
#include "gapcert/constaudit/const_expr.hpp"
#include "gapcert/constaudit/registry.hpp"
#include "gapcert/errors.hpp"
#include "gapcert/exactnum/factorial.hpp"
#include "oracles.hpp"

using namespace gapcert;

namespace {

BigInt euclid_gcd(BigInt a, BigInt b) {
  while (b != 0) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Rational from_prime_map(const PrimeMap& m) {
  Rational v(1);
  for (const auto& [p, e] : m) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), BigInt(abs(e)).get_ui());
    v *= e > 0 ? Rational(pe) : Rational(BigInt(1), pe);
  }
  v.canonicalize();
  return v;
}

std::string random_expr(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    const long v = 1 + static_cast<long>(rng() % 12);
    if (rng() % 6 == 0) return std::to_string(1 + rng() % 7) + "!";
    return std::to_string(v);
  }
  switch (rng() % 4) {
    case 0: return "(" + random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1) + ")";
    case 1: return "(" + random_expr(rng, depth - 1) + "/" + random_expr(rng, depth - 1) + ")";
    case 2: return "(" + random_expr(rng, depth - 1) + "+" + random_expr(rng, depth - 1) + ")";
    default: return "(" + random_expr(rng, depth - 1) + ")^" + std::to_string(rng() % 5);
  }
}

}  // namespace

TEST_CASE("expression grammar") {
  auto e = parse_const_expr("2*84^(256*42^5+338)");
  CHECK(parse_const_expr(to_string(*e))->kind == e->kind);
  CHECK(*exact_value(*parse_const_expr("2^3^2")) == 512);
  CHECK(*exact_value(*parse_const_expr("3!")) == 6);
  CHECK_THROWS_AS(parse_const_expr("3!!"), std::invalid_argument);
  CHECK(*exact_value(*parse_const_expr("1/(42*2)")) == Rational(1, 84));
  CHECK(*exact_value(*parse_const_expr("6/4")) == Rational(3, 2));
  CHECK(*exact_value(*parse_const_expr(" 2 + 3 * 4 ")) == 14);
  CHECK_THROWS_AS(parse_const_expr("2*"), std::invalid_argument);
  CHECK_THROWS_AS(parse_const_expr("(2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_const_expr("2 3"), std::invalid_argument);
  CHECK_FALSE(exact_value(*parse_const_expr("84^(128*42^5)")).has_value());
}

TEST_CASE("prime maps and Legendre") {
  PrimeMap m = factor_integer(BigInt(5419));
  CHECK(m == PrimeMap{{BigInt(5419), BigInt(1)}});
  CHECK(factor_integer(BigInt(84)) == PrimeMap{{2, 2}, {3, 1}, {7, 1}});
  for (unsigned long n = 1; n <= 30; ++n) {
    PrimeMap f = factorial_prime_map(n);
    CHECK(from_prime_map(f) == Rational(factorial(n)));
  }
  // v_2(42!) = 21 + 10 + 5 + 2 + 1 = 39
  CHECK(factorial_prime_map(42).at(BigInt(2)) == 39);
  auto big = prime_map(*parse_const_expr("84^(128*42^5)"));
  REQUIRE(big.has_value());
  CHECK(big->at(BigInt(2)) == BigInt(2) * 16728477696);
  CHECK(big->at(BigInt(7)) == BigInt(16728477696));
}

TEST_CASE("manifest matches the registry") {
  auto rows = read_manifest(default_manifest_path());
  const auto& reg = constant_registry();
  REQUIRE(rows.size() == reg.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].id == reg[i].id);
    CHECK(rows[i].location == reg[i].location);
    CHECK(rows[i].expression == reg[i].expression);
  }
  std::set<std::string> ids;
  for (const auto& r : reg) ids.insert(r.id);
  for (const char* id :
       {"I0", "I1", "V0", "I(2,1)", "N(2,1)-bound", "nonexc-complement-bound", "surface-vol-floor",
        "threefold-vol-floor", "lcm-bound-fibration", "lcm-bound-doubled", "nonplt-index-bound",
        "surface-cartier-bound", "exc-surface-index", "complement-set-1", "complement-set-2",
        "complement-set-3", "complement-set-4", "complement-set-6"}) {
    CHECK(ids.count(id) == 1);
  }
  CHECK_THROWS_AS(find_constant("nope"), DomainError);
  CHECK(parse_manifest("# c\n a | b | 1+1 \n").at(0).expression == "1+1");
  CHECK_THROWS_AS(parse_manifest("a | b\n"), std::invalid_argument);
}

TEST_CASE("every audit matches its expected verdict") {
  auto all = audit_constants();
  CHECK(all.size() >= 12);
  int controls = 0;
  for (const auto& r : all) {
    CAPTURE(r.claim);
    CAPTURE(r.evidence);
    CHECK(r.as_expected());
    if (r.expected == Verdict::Falsified) ++controls;
  }
  CHECK(controls >= 3);
}

TEST_CASE("identity audits") {
  auto i0 = verify_identity_I0();
  REQUIRE(i0.size() == 3);
  CHECK(i0[0].verdict == Verdict::Verified);
  CHECK(i0[0].method == AuditMethod::ExactNormalForm);
  CHECK(i0[2].verdict == Verdict::Falsified);
  auto vol = verify_volume_decomposition();
  CHECK(vol.front().verdict == Verdict::Verified);
  CHECK(vol.back().verdict == Verdict::Falsified);
}

TEST_CASE("lcm table against an independent gcd") {
  BigInt best = 0;
  for (const auto& row : lcm_table()) {
    BigInt fact = 1;
    for (unsigned long i = 2; i <= row.q * (row.q + 1); ++i) fact *= i;
    BigInt ng = std::max(BigInt(6), BigInt(BigInt(row.q) * fact));
    CHECK(row.ng_bound == ng);
    BigInt l = BigInt(row.q) * ng / euclid_gcd(BigInt(row.q), ng);
    CHECK(row.lcm == l);
    best = std::max(best, l);
  }
  CHECK(best == BigInt(6) * factorial(42));
}

TEST_CASE("V0 window") {
  Interval w = log10_log10(eval_constant("V0").enclosure);
  CHECK(w.lo > make_rational(1140, 100));
  CHECK(w.hi < make_rational(1142, 100));
  CHECK(w.width() < make_rational(1, 100));
  // 11.41081451793... by an independent 40-digit evaluation.
  CHECK(w.lo > make_rational(BigInt("114108145179350"), BigInt("10000000000000")));
  CHECK(w.hi < make_rational(BigInt("114108145179351"), BigInt("10000000000000")));
}

TEST_CASE("surface index bound") {
  auto at42 = surface_index_bound(Rational(1, 42));
  auto target = parse_const_expr("84^16728477696");
  CHECK(*prime_map(*at42) == *prime_map(*target));
  CHECK(BigInt(128) * 42 * 42 * 42 * 42 * 42 == BigInt(16728477696));
  auto at2 = surface_index_bound(Rational(1, 2));
  CHECK(*exact_value(*at2) == *exact_value(*parse_const_expr("4^4096")));
  CHECK_THROWS_AS(surface_index_bound(Rational(1)), DomainError);
  CHECK_THROWS_AS(surface_index_bound(Rational(0)), DomainError);
}

TEST_CASE("exact value, prime map and magnitude agree on random expressions") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::string text = random_expr(rng, 3);
    CAPTURE(text);
    auto e = parse_const_expr(text);
    auto v = exact_value(*e);
    REQUIRE(v.has_value());
    auto pm = prime_map(*e);
    if (pm) CHECK(from_prime_map(*pm) == *v);
    Magnitude m = magnitude_of(*e);
    CHECK(oracle::MpInterval(*v).overlaps(m));
    CHECK(mag_compare(m, Magnitude::from_rational(*v)) != CompareOutcome::LT);
    CHECK(mag_compare(m, Magnitude::from_rational(*v)) != CompareOutcome::GT);
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("verdicts are stable under higher precision") {
  auto a = audit_constants(Precision{128});
  auto b = audit_constants(Precision{512});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CAPTURE(a[i].claim);
    if (a[i].verdict != Verdict::Inconclusive) CHECK(a[i].verdict == b[i].verdict);
  }
}

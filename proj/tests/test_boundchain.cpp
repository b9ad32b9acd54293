#include <doctest.h>

#include <chrono>
#include <type_traits>

#include "gapcert/boundchain/boundchain.hpp"
#include "gapcert/errors.hpp"
#include "oracles.hpp"

using namespace gapcert;

static_assert(std::is_invocable_v<decltype(&l_upper_from), unsigned long, const Lower&, Precision>);
static_assert(!std::is_invocable_v<decltype(&l_upper_from), unsigned long, const Upper&, Precision>);
static_assert(std::is_invocable_v<decltype(&upsilon_lower_from), const Upper&, Precision>);
static_assert(!std::is_invocable_v<decltype(&upsilon_lower_from), const Lower&, Precision>);
static_assert(!std::is_invocable_v<decltype(&alpha_lower), unsigned long, const Upper&, Precision>);

TEST_CASE("M_eps by direct evaluation") {
  MValue two = m_of_epsilon(Rational(2));
  REQUIRE(two.exact.has_value());
  CHECK(*two.exact == 3);
  // floor(2/1) = 2, floor(128/1) = 128: 2^128 * 4.
  MValue one = m_of_epsilon(Rational(1));
  REQUIRE(one.exact.has_value());
  CHECK(*one.exact == BigInt(1) << 130);
  // eps = 1/2: 4^4096 * 6.
  MValue half = m_of_epsilon(Rational(1, 2));
  BigInt expected;
  mpz_pow_ui(expected.get_mpz_t(), BigInt(4).get_mpz_t(), 4096);
  expected *= 6;
  REQUIRE(half.exact.has_value());
  CHECK(*half.exact == expected);
  CHECK(half.enclosure == Magnitude::from_integer(expected));
  MValue tiny = m_of_epsilon(Rational(1, 42));
  CHECK_FALSE(tiny.exact.has_value());
  CHECK(tiny.enclosure.level() >= 1);
  CHECK_THROWS_AS(m_of_epsilon(Rational(0)), DomainError);
  CHECK_THROWS_AS(m_of_epsilon(Rational(3)), DomainError);
}

TEST_CASE("alpha(p, 2) exact for small p against the unit-fraction oracle") {
  // Phi_2 = Phi_1, so the oracle through unit fractions serves both.
  const Rational e = oracle::egyptian_epsilon1(3);
  const Rational alpha = e / (3 + e);
  CHECK(alpha == Rational(1, 5419));
  for (unsigned long p = 1; p <= 2; ++p) {
    BoundReport r = alpha_exact_first(p);
    CHECK(r.direction == Direction::Exact);
    REQUIRE(r.exact_value.has_value());
    CHECK(*r.exact_value == alpha);
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].certified());
  }
  BoundReport three = alpha_exact_first(3);
  REQUIRE(three.exact_value.has_value());
  CHECK(*three.exact_value == Rational(1, 73477));
}

TEST_CASE("the Sylvester fallback stays below the exact value") {
  for (unsigned long p = 2; p <= 3; ++p) {
    BoundReport exact = alpha_exact_first(p);
    BoundReport fallback = alpha_exact_first(p, 0);
    CHECK(fallback.direction == Direction::LowerBound);
    CHECK_FALSE(fallback.exact_value.has_value());
    CHECK(mag_compare(fallback.value, exact.value) == CompareOutcome::LT);
  }
  CHECK_THROWS_AS(alpha_exact_first(1, 0), PreconditionError);
  CHECK_THROWS_AS(alpha_exact_first(0), DomainError);
}

TEST_CASE("alpha_lower is a lower bound on the exact first step") {
  Lower eps{Magnitude::from_rational(2), {}};
  Lower a = alpha_lower(2, eps);
  CHECK(mag_compare(a.value, Magnitude::from_rational(Rational(1, 5419))) == CompareOutcome::LT);
  CHECK_THROWS_AS(alpha_lower(1, eps), PreconditionError);
  Lower too_big{Magnitude::from_rational(3), {}};
  CHECK_THROWS_AS(alpha_lower(2, too_big), DomainError);
}

TEST_CASE("beta, l and upsilon certified for p = 2..10") {
  const auto start = std::chrono::steady_clock::now();
  for (unsigned long p = 2; p <= 10; ++p) {
    CAPTURE(p);
    BetaSuite s = beta_suite(p);
    CHECK(s.beta.direction == Direction::LowerBound);
    CHECK(s.l.direction == Direction::UpperBound);
    CHECK(s.upsilon.direction == Direction::LowerBound);
    CHECK(s.beta.checks.size() == 3);
    CHECK(s.beta.all_certified());
    CHECK(s.l.all_certified());
    CHECK(s.upsilon.all_certified());
    CHECK_FALSE(s.beta.trace.empty());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("beta suite p = 2..10 in " << secs << " s");
  CHECK(secs < 60);
  CHECK_THROWS_AS(beta_suite(1), PreconditionError);
}

TEST_CASE("reports replay identically") {
  BetaSuite a = beta_suite(4);
  BetaSuite b = beta_suite(4);
  CHECK(a.beta.value == b.beta.value);
  CHECK(a.beta.trace == b.beta.trace);
  CHECK(a.upsilon.value == b.upsilon.value);
}

TEST_CASE("l from an exact beta") {
  CHECK(l_of_exact_beta(2, Rational(1, 5419)) == 10838);
  CHECK(l_of_exact_beta(3, Rational(2, 7)) == 11);
  CHECK_THROWS_AS(l_of_exact_beta(2, Rational(0)), DomainError);
  // The generic bound p/beta + 1 is never below the exact ceiling.
  Lower beta{Magnitude::from_rational(Rational(2, 7)), {}};
  Upper l = l_upper_from(3, beta);
  CHECK(mag_compare(l.value, Magnitude::from_integer(11)) != CompareOutcome::LT);
}

TEST_CASE("estimation lemma instances") {
  std::vector<Magnitude> qs = {Magnitude::tower(false, 2, 48, 48), knuth_tower(2, 3, Rational(48)),
                               Magnitude::from_rational(1000)};
  auto res = estimation_lemma_audit(2, qs);
  REQUIRE(res.size() == 3);
  CHECK(res[0].passed());
  CHECK(res[1].passed());
  CHECK(res[2].status == InstanceStatus::Skipped);
  CHECK_THROWS_AS(estimation_lemma_audit(1, qs), PreconditionError);
}

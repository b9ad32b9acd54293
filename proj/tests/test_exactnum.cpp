#include <doctest.h>

#include "gapcert/errors.hpp"
#include "gapcert/exactnum/dyadic.hpp"
#include "gapcert/exactnum/factorial.hpp"
#include "gapcert/exactnum/magnitude.hpp"
#include "gapcert/exactnum/rational.hpp"
#include "oracles.hpp"

using namespace gapcert;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(make_rational(84, 2)) == "42");
  CHECK(to_string(Rational(-1, 42)) == "-1/42");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK(floor(Rational(-1, 2)) == -1);
  CHECK(ceil(Rational(-1, 2)) == 0);
  CHECK(frac(Rational(7, 3)) == Rational(1, 3));
  long k = 0;
  CHECK(is_power_of_two(Rational(1, 8), &k));
  CHECK(k == -3);
  CHECK_FALSE(is_power_of_two(Rational(12)));
}

TEST_CASE("dyadic logarithms enclose the MPFR value") {
  for (const char* text : {"3", "10", "1/3", "84", "5419", "123456789/1000"}) {
    Rational x = parse_rational(text);
    Interval iv = log2_bounds(x);
    CHECK(iv.lo <= iv.hi);
    CHECK(iv.width() < pow2(-80));
    mpfr_t v;
    mpfr_init2(v, 300);
    mpfr_set_q(v, x.get_mpq_t(), MPFR_RNDN);
    mpfr_log2(v, v, MPFR_RNDN);
    mpq_t lo, hi;
    mpq_inits(lo, hi, nullptr);
    mpq_set(lo, iv.lo.get_mpq_t());
    mpq_set(hi, iv.hi.get_mpq_t());
    CHECK(mpfr_cmp_q(v, lo) >= 0);
    CHECK(mpfr_cmp_q(v, hi) <= 0);
    mpq_clears(lo, hi, nullptr);
    mpfr_clear(v);
  }
  CHECK(log2_bounds(Rational(8)).degenerate());
  CHECK(exp2_down(Rational(1, 2)) < exp2_up(Rational(1, 2)));
  Interval l10 = log2_of_10();
  CHECK(l10.lo < Rational(332193, 100000));
  CHECK(l10.hi > Rational(332192, 100000));
}

TEST_CASE("magnitude normal form") {
  Magnitude eight = Magnitude::from_rational(8);
  CHECK(eight.level() == 1);
  CHECK(eight.lo() == 3);
  Magnitude half = Magnitude::from_rational(Rational(1, 2));
  CHECK(half.reciprocal());
  CHECK(half.level() == 0);
  CHECK(half.lo() == 2);
  Magnitude three = Magnitude::from_rational(3);
  CHECK(three.level() == 0);
  CHECK_FALSE(three.reciprocal());
  Magnitude big = Magnitude::from_integer(BigInt(3) << 100);
  CHECK(big.level() == 1);
  CHECK(big.body().contains(Rational(100)) == false);
  CHECK(big.lo() > 101);
  CHECK(big.hi() < 102);
  CHECK_THROWS_AS(Magnitude::from_rational(0), DomainError);
  CHECK_THROWS_AS(Magnitude::from_interval(2, 1), DomainError);

  Magnitude t = knuth_tower(2, 3, Rational(1));
  CHECK(t == Magnitude::tower(false, 2, 2, 2));
  CHECK(knuth_tower(2, 4, Rational(5419)).level() == 4);
  CHECK(describe(half) == "1/tower(level=0, [2, 2])");
}

TEST_CASE("magnitude arithmetic on exact values") {
  Magnitude a = Magnitude::from_rational(6);
  Magnitude b = Magnitude::from_rational(7);
  CHECK(mag_mul(a, b).value_interval().contains(Rational(42)));
  CHECK(mag_add(a, b).value_interval().contains(Rational(13)));
  CHECK(mag_pow(a, Magnitude::from_rational(2)) == Magnitude::from_rational(36));
  CHECK(mag_reciprocal(mag_reciprocal(a)) == a);
  CHECK(mag_compare(a, b) == CompareOutcome::LT);
  CHECK(mag_compare(a, a) == CompareOutcome::EQ);

  // 84^(128*42^5) against 2^(2^40): log2 of the first is about 1.07e11 < 2^40.
  Magnitude e = Magnitude::from_integer(BigInt(128) * 130691232);
  Magnitude x = mag_pow(Magnitude::from_rational(84), e);
  CHECK(x.level() == 1);
  CHECK(mag_compare(x, Magnitude::tower(false, 2, 40, 40)) == CompareOutcome::LT);
  CHECK(mag_compare(x, Magnitude::tower(false, 2, 36, 36)) == CompareOutcome::GT);

  // Adding one to a huge value keeps it strictly above the original.
  Magnitude y = mag_add_one(x);
  CHECK(mag_compare(y, mag_reciprocal(x)) == CompareOutcome::GT);
  CHECK_THROWS_AS(mag_pow(mag_reciprocal(a), a), DomainError);
}

TEST_CASE("lift_body and log2_value") {
  Magnitude x = Magnitude::from_rational(1024);
  Interval one = lift_body(x, 1);
  CHECK(one.contains(Rational(10)));
  Interval l = log2_value(Magnitude::from_rational(Rational(1, 1024)));
  CHECK(l.contains(Rational(-10)));
}

TEST_CASE("factorials") {
  CHECK(factorial(10) == 3628800);
  CHECK_THROWS_AS(factorial(10, 5), CapError);
  Magnitude f = factorial_mag(42);
  CHECK(f.level() == 1);
  // log2(42!) = 169.9089...
  CHECK(f.lo() > make_rational(1699089, 10000));
  CHECK(f.hi() < make_rational(1699090, 10000));
  Magnitude g = factorial_mag(200000, {}, 1000);
  CHECK(g.level() == 1);
  CHECK(g.lo() < g.hi());
  // log2(200000!) = 3233399.2172...
  CHECK(g.lo() < make_rational(32333992172, 10000));
  CHECK(g.hi() > make_rational(32333992173, 10000));
  CHECK(g.hi() - g.lo() < 20);
}

TEST_CASE("random magnitude chains against MPFR") {
  oracle::ChainStats st = oracle::run_magnitude_chains(10000, 20240611);
  MESSAGE("operations " << st.operations << ", exact checks " << st.exact_checks
                        << ", compares " << st.compare_checks << ", inconclusive chains "
                        << st.inconclusive);
  CHECK(st.chains == 10000);
  CHECK(st.violations == 0);
  CHECK(st.compare_violations == 0);
  CHECK(st.order_violations == 0);
  CHECK(st.idempotence_violations == 0);
  CHECK(st.precision_flips == 0);
  CHECK(st.order_checks > 0);
  CHECK(st.exact_checks > 1000);
  CHECK(st.inconclusive * 100 < st.chains);
}

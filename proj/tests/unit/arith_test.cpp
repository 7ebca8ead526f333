#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tamagawa/arith.hpp"

using namespace tamagawa;

TEST(Valuation, MatchesRepeatedDivision) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Integer x = Integer(static_cast<unsigned long>(rng() % 1000000)) * Integer(static_cast<unsigned long>(rng() % 1000)) + 1;
    if (rng() % 2) x = -x;
    for (long p : {2L, 3L, 5L, 7L, 11L, 101L}) EXPECT_EQ(ord(x, p), oracle::valuation(x, p)) << x << " at " << p;
  }
}

TEST(Valuation, ZeroIsInfinite) {
  EXPECT_TRUE(valuation(Integer(0), Integer(3)).is_infinite());
  EXPECT_THROW(valuation(Integer(0), Integer(3)).value(), ArgumentError);
  EXPECT_LT(Valuation(1000), Valuation::infinity());
}

TEST(Valuation, Rational) {
  EXPECT_EQ(valuation(parse_rational("-9/40"), Integer(2)).value(), -3);
  EXPECT_EQ(valuation(parse_rational("-9/40"), Integer(3)).value(), 2);
  EXPECT_EQ(valuation(parse_rational("-9/40"), Integer(7)).value(), 0);
}

TEST(Primality, AgreesWithTrialDivision) {
  for (long n = -5; n < 5000; ++n) {
    bool naive = n >= 2;
    for (long d = 2; d * d <= n && naive; ++d) naive = n % d != 0;
    EXPECT_EQ(is_prime(Integer(n)), naive) << n;
  }
}

TEST(Primality, LargeKnownValues) {
  EXPECT_TRUE(is_prime(Integer("170141183460469231731687303715884105727")));  // 2^127 - 1
  EXPECT_FALSE(is_prime(Integer("3825123056546413051")));                     // strong pseudoprime to bases 2..23
  EXPECT_FALSE(is_prime(Integer("340282366920938463463374607431768211457")));  // 2^128 + 1
}

TEST(Factor, ProductOfFactorsIsInput) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Integer n = Integer(static_cast<unsigned long>(rng() >> 4)) * Integer(static_cast<unsigned long>(rng() % 100000 + 1));
    if (i % 3 == 0) n = -n;
    Factorization f = factor(n);
    EXPECT_EQ(f.value(), n);
    Integer prev = 1;
    for (const auto& pp : f.factors) {
      EXPECT_GT(pp.prime, prev);
      EXPECT_TRUE(is_prime(pp.prime));
      prev = pp.prime;
    }
  }
}

TEST(Factor, SemiprimeNeedsRho) {
  Integer p("1000000000039"), q("1000000000061");
  Factorization f = factor(p * q);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].prime, p);
  EXPECT_EQ(f.factors[1].prime, q);
}

TEST(Factor, BudgetExhaustionIsReported) {
  Integer p("1000000000000000003"), q("1000000000000000009");
  FactorBudget tiny{100, 10};
  try {
    factor(Integer(12) * p * q, tiny);
    FAIL() << "expected IncompleteFactorization";
  } catch (const IncompleteFactorization& e) {
    EXPECT_EQ(e.partial.value() * e.remaining.at(0), Integer(12) * p * q);
  }
}

TEST(Factor, ZeroRejected) { EXPECT_THROW(factor(Integer(0)), ArgumentError); }

TEST(Factor, Multiply) {
  Factorization f = multiply(factor(Integer(-12)), factor(Integer(90)));
  EXPECT_EQ(f.value(), Integer(-1080));
  EXPECT_EQ(f.exponent_of(Integer(2)), 3u);
  EXPECT_EQ(f.exponent_of(Integer(3)), 3u);
  EXPECT_EQ(f.exponent_of(Integer(7)), 0u);
}

TEST(Parse, IntegersAndRationals) {
  EXPECT_EQ(parse_integer("-123456789012345678901234567890"), Integer("-123456789012345678901234567890"));
  EXPECT_EQ(parse_rational("14/6"), Rational(7, 3));
  EXPECT_EQ(to_string(parse_rational("-4/2")), "-2");
  EXPECT_THROW(parse_integer("12a"), ArgumentError);
  EXPECT_THROW(parse_integer(""), ArgumentError);
  EXPECT_THROW(parse_rational("1/0"), ArgumentError);
  EXPECT_THROW(make_rational(1, 0), ArgumentError);
}

TEST(Residues, SquaresAndFloor) {
  for (long p : {3L, 5L, 7L, 13L}) {
    std::vector<bool> sq(p, false);
    for (long y = 0; y < p; ++y) sq[y * y % p] = true;
    for (long a = -20; a < 20; ++a) EXPECT_EQ(is_square_mod(a, p), sq[((a % p) + p) % p]) << a << " mod " << p;
  }
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, -2), -4);
  EXPECT_EQ(mod_positive(-7, 5), 3);
}

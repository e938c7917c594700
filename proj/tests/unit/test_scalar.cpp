#include <gtest/gtest.h>

#include <random>

#include "slopegap/error.hpp"
#include "slopegap/rational.hpp"
#include "slopegap/scalar.hpp"

using namespace slopegap;

namespace {

std::int64_t brute_inverse(std::int64_t a, std::int64_t m) {
  for (std::int64_t k = 1; k < m; ++k)
    if ((a * k) % m == 1) return k;
  return 0;
}

std::int64_t brute_teichmuller(std::int64_t t, int p, std::int64_t m) {
  for (std::int64_t z = t; z < m; z += p) {
    std::int64_t acc = 1;
    for (int k = 0; k < p - 1; ++k) acc = acc * z % m;
    if (acc == 1) return z;
  }
  return -1;
}

std::int64_t to_residue(const PadicScalar& s, std::int64_t m) {
  auto v = s.symmetric_integer();
  EXPECT_TRUE(v.has_value());
  return ((*v % m) + m) % m;
}

}  // namespace

TEST(Scalar, AdditionCarriesIntoValuation) {
  auto s = PadicScalar::from_integer(5, 2, 10) + PadicScalar::from_integer(5, 3, 10);
  EXPECT_EQ(s.valuation(), 1);
  EXPECT_EQ(s.unit(), 1u);
  EXPECT_EQ(s.absolute_precision(), 10);
}

TEST(Scalar, AdditiveInverseIsZeroAtSharedPrecision) {
  auto x = PadicScalar::from_integer(5, 17, 8);
  auto y = PadicScalar::from_integer(5, 17, 6);
  auto z = x + (-y);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.absolute_precision(), 6);
}

TEST(Scalar, ValuationsAdd) {
  auto a = PadicScalar::make(5, -1, 1, 6);
  auto b = PadicScalar::make(5, 2, 3, 6);
  auto c = a * b;
  EXPECT_EQ(c.valuation(), 1);
  EXPECT_EQ(c.unit(), 3u);
}

TEST(Scalar, InverseOfTwoModFiveToTheFour) {
  const std::int64_t oracle = brute_inverse(2, 625);
  ASSERT_EQ(oracle, 313);
  auto inv = PadicScalar::from_integer(5, 2, 4).inverse();
  EXPECT_EQ(inv.valuation(), 0);
  EXPECT_EQ(inv.unit(), 313u);
}

TEST(Scalar, InverseOfPrime) {
  auto inv = PadicScalar::from_integer(5, 5, 8).inverse();
  EXPECT_EQ(inv.valuation(), -1);
  EXPECT_EQ(inv.unit(), 1u);
  EXPECT_EQ(PadicScalar::from_integer(5, 1, 8).inverse(), PadicScalar::from_integer(5, 1, 8));
}

TEST(Scalar, InverseOfZeroThrows) {
  try {
    (void)PadicScalar::zero(5, 4).inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroAtPrecision);
  }
}

TEST(Scalar, TeichmullerMatchesHenselSearch) {
  ASSERT_EQ(brute_teichmuller(2, 5, 25), 7);
  EXPECT_EQ(teichmuller(5, 2, 2).unit(), 7u);
  EXPECT_EQ(teichmuller(5, 1, 9), PadicScalar::from_integer(5, 1, 9));
  EXPECT_EQ(teichmuller(5, 4, 9), PadicScalar::from_integer(5, -1, 9));
  for (int p : {3, 5, 7, 11}) {
    for (int t = 1; t < p; ++t) {
      std::int64_t m = 1;
      for (int k = 0; k < 4; ++k) m *= p;
      EXPECT_EQ(to_residue(teichmuller(p, t, 4), m), brute_teichmuller(t, p, m));
    }
  }
}

TEST(Scalar, TeichmullerOfZeroThrows) {
  try {
    (void)teichmuller(5, 10, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroInput);
  }
}

TEST(ScalarProperty, TeichmullerIsRootOfUnity) {
  for (int p : {3, 5, 7, 13}) {
    for (int r = 1; r <= 12; ++r) {
      for (int t = 1; t < p; ++t) {
        auto z = teichmuller(p, t, r);
        EXPECT_TRUE(congruent(z.pow(p - 1), PadicScalar::from_integer(p, 1, r), r));
        EXPECT_TRUE(congruent(z, PadicScalar::from_integer(p, t, r), 1));
      }
    }
  }
}

TEST(ScalarProperty, DoubleInverseIsIdentity) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> unit(1, 1'000'000'000);
  std::uniform_int_distribution<int> val(-6, 6), rel(1, 20);
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = PadicScalar::make(5, val(rng), unit(rng), rel(rng));
    if (a.is_zero()) continue;
    EXPECT_EQ(a.inverse().inverse(), a);
    EXPECT_TRUE(congruent(a * a.inverse(), PadicScalar::from_integer(5, 1, 40), a.relative_precision()));
  }
}

TEST(ScalarProperty, AgreesWithIntegerArithmetic) {
  std::mt19937_64 rng(12);
  const int p = 7, n = 10;
  std::int64_t m = 1;
  for (int k = 0; k < n; ++k) m *= p;
  std::uniform_int_distribution<std::int64_t> pick(0, m - 1);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::int64_t a = pick(rng), b = pick(rng);
    auto sa = PadicScalar::from_integer(p, a, n);
    auto sb = PadicScalar::from_integer(p, b, n);
    EXPECT_EQ(to_residue(sa + sb, m), (a + b) % m);
    EXPECT_EQ(to_residue(sa - sb, m), ((a - b) % m + m) % m);
    const auto prod = static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
    EXPECT_EQ(to_residue(sa * sb, m), prod);
  }
}

TEST(Scalar, FromRationalSolvesLinearCongruence) {
  auto half = PadicScalar::from_rational(5, 1, 2, 6);
  EXPECT_TRUE(congruent(half * PadicScalar::from_integer(5, 2, 6), PadicScalar::from_integer(5, 1, 6), 6));
  auto fifth = PadicScalar::from_rational(5, 3, 5, 6);
  EXPECT_EQ(fifth.valuation(), -1);
  EXPECT_EQ(fifth.unit(), 3u);
}

TEST(Scalar, PrecisionOfProductAndZero) {
  auto z = PadicScalar::zero(5, 3);
  auto a = PadicScalar::make(5, 2, 1, 4);
  EXPECT_EQ((z * a).absolute_precision(), 5);
  EXPECT_TRUE((z * a).is_zero());
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(to_string(Rational(-4, 2)), "-2");
  EXPECT_EQ(to_string(Rational(1, 3)), "1/3");
  EXPECT_THROW(parse_rational("x/2"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

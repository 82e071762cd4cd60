#include <gtest/gtest.h>

#include <cmath>

#include "kfree/numeric.hpp"

using namespace kfree;

TEST(Numeric, CheckedPow) {
  EXPECT_EQ(checked_pow(3, 4), 81u);
  EXPECT_EQ(checked_pow(2, 63), u64{1} << 63);
  EXPECT_FALSE(checked_pow(2, 64).has_value());
  EXPECT_FALSE(checked_pow(10, 3, 999).has_value());
  EXPECT_EQ(checked_pow(10, 3, 1000), 1000u);
  EXPECT_EQ(checked_pow(0, 0), 1u);
}

TEST(Numeric, IrootIsExactFloor) {
  for (unsigned k = 1; k <= 5; ++k) {
    for (u64 n = 0; n < 5000; ++n) {
      const u64 r = iroot(n, k);
      EXPECT_LE(std::pow(static_cast<long double>(r), k), static_cast<long double>(n));
      EXPECT_GT(std::pow(static_cast<long double>(r + 1), k), static_cast<long double>(n));
    }
  }
  EXPECT_EQ(iroot(~u64{0}, 2), 4294967295u);
  EXPECT_EQ(iroot(u64{1} << 62, 2), u64{1} << 31);
  EXPECT_EQ(iroot((u64{1} << 62) - 1, 2), (u64{1} << 31) - 1);
}

TEST(Numeric, ModInverse) {
  for (u64 m = 1; m < 60; ++m) {
    for (u64 a = 0; a < 2 * m; ++a) {
      const auto inv = mod_inverse(a, m);
      if (gcd(a, m) != 1) {
        EXPECT_FALSE(inv.has_value()) << a << " mod " << m;
        continue;
      }
      ASSERT_TRUE(inv.has_value());
      EXPECT_LT(*inv, m);
      EXPECT_EQ((a % m) * *inv % m, 1 % m);
    }
  }
  const u64 big = (u64{1} << 61) - 1;  // prime
  const auto inv = mod_inverse(12345, big);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(static_cast<u64>(static_cast<u128>(12345) * *inv % big), 1u);
}

TEST(Numeric, RatioCanonicalises) {
  const Rational q = ratio(4, 6);
  EXPECT_EQ(q.get_num(), 2);
  EXPECT_EQ(q.get_den(), 3);
  EXPECT_EQ(ratio(-4, -6), q);
  EXPECT_THROW(ratio(1, 0), std::domain_error);
}

TEST(Numeric, FloorCeil) {
  EXPECT_EQ(floor_of(ratio(7, 2)), 3);
  EXPECT_EQ(ceil_of(ratio(7, 2)), 4);
  EXPECT_EQ(floor_of(ratio(-7, 2)), -4);
  EXPECT_EQ(ceil_of(ratio(-7, 2)), -3);
  EXPECT_EQ(floor_of(Rational(5)), 5);
  EXPECT_EQ(ceil_of(Rational(5)), 5);
}

TEST(Numeric, Log2AndPowers) {
  EXPECT_EQ(floor_log2(Rational(1)), 0);
  EXPECT_EQ(floor_log2(Rational(1023)), 9);
  EXPECT_EQ(floor_log2(Rational(1024)), 10);
  EXPECT_EQ(floor_log2(ratio(1, 2)), -1);
  EXPECT_EQ(floor_log2(ratio(1, 3)), -2);
  EXPECT_EQ(pow2(-3), ratio(1, 8));
  EXPECT_EQ(pow(ratio(2, 3), 3), ratio(8, 27));
  EXPECT_EQ(pow(BigInt(7), 0), 1);
}

TEST(Numeric, SqrtBracketsWithinTolerance) {
  for (const Rational& q : {Rational(2), ratio(8, 3), ratio(1, 7), Rational(10000), ratio(5, 4)}) {
    const Rational up = sqrt_upper(q);
    const Rational lo = sqrt_lower(q);
    EXPECT_GE(up * up, q);
    EXPECT_LE(lo * lo, q);
    EXPECT_LE(up - lo, pow2(-38) * (1 + up));
  }
  EXPECT_EQ(sqrt_upper(Rational(9)), 3);
  EXPECT_EQ(sqrt_lower(Rational(9)), 3);
}

TEST(Numeric, ParseAndPrint) {
  EXPECT_EQ(parse_rational("14/9"), ratio(14, 9));
  EXPECT_EQ(parse_rational("6/4"), ratio(3, 2));
  EXPECT_EQ(parse_rational("5"), 5);
  EXPECT_EQ(parse_rational("0.1"), ratio(1, 10));
  EXPECT_EQ(parse_rational("-2.25"), ratio(-9, 4));
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_EQ(to_string(ratio(14, 9)), "14/9");
  EXPECT_EQ(to_string(Rational(3)), "3/1");
}

TEST(Numeric, ToU64) {
  EXPECT_EQ(to_u64(BigInt("18446744073709551615")), ~u64{0});
  EXPECT_THROW(to_u64(BigInt("18446744073709551616")), std::overflow_error);
  EXPECT_THROW(to_u64(BigInt(-1)), std::overflow_error);
}

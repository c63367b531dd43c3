#include "oddweird/nat.hpp"

#include <gtest/gtest.h>

#include "oddweird/errors.hpp"

namespace oddweird {
namespace {

TEST(ParseNat, PlainDecimal) {
  EXPECT_EQ(parse_nat("0"), 0u);
  EXPECT_EQ(parse_nat("1000000"), 1000000u);
  EXPECT_EQ(to_string(parse_nat("1000000000000000000000")), "1000000000000000000000");
}

TEST(ParseNat, ScientificIsExact) {
  EXPECT_EQ(parse_nat("1e21"), parse_nat("1000000000000000000000"));
  EXPECT_EQ(parse_nat("1E6"), 1000000u);
  EXPECT_EQ(parse_nat("2.01e25"), parse_nat("20100000000000000000000000"));
  EXPECT_EQ(parse_nat("4.90e52"), 49 * pow10(51));
  EXPECT_EQ(parse_nat("1.50e1"), 15u);
  EXPECT_EQ(parse_nat("7e+2"), 700u);
}

TEST(ParseNat, RejectsNonIntegers) {
  EXPECT_THROW(parse_nat("1.5"), InvalidInput);
  EXPECT_THROW(parse_nat("1.234e2"), InvalidInput);
  EXPECT_THROW(parse_nat(""), InvalidInput);
  EXPECT_THROW(parse_nat("-3"), InvalidInput);
  EXPECT_THROW(parse_nat("1e"), InvalidInput);
  EXPECT_THROW(parse_nat("12a"), InvalidInput);
  EXPECT_THROW(parse_nat("1e-3"), InvalidInput);
}

TEST(ParseNat, OverflowIsAnError) {
  EXPECT_THROW(parse_nat("1e80"), OverflowError);
  EXPECT_NO_THROW(parse_nat("1e76"));
}

TEST(Nat, CheckedArithmeticNeverWraps) {
  Nat big = pow10(76);
  EXPECT_THROW(big * 100u, std::overflow_error);
  Nat zero = 0;
  EXPECT_THROW(zero - 1u, std::range_error);
}

TEST(Nat, U64Helpers) {
  EXPECT_TRUE(fits_u64(Nat(kU64Max)));
  EXPECT_FALSE(fits_u64(Nat(kU64Max) + 1u));
  EXPECT_EQ(saturate_u64(pow10(30)), kU64Max);
  EXPECT_EQ(to_u64(Nat(12345)), 12345u);
}

}  // namespace
}  // namespace oddweird

#include "pluennecke/ratio.hpp"

#include <gtest/gtest.h>

namespace pluennecke {
namespace {

TEST(ExactRatio, LowestTerms) {
  ExactRatio r(BigInt(6), BigInt(4));
  EXPECT_EQ(r.numerator(), 3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(r.str(), "3/2");
  EXPECT_EQ(ExactRatio(BigInt(8), BigInt(4)).str(), "2");
  EXPECT_TRUE(ExactRatio(BigInt(8), BigInt(4)).is_integral());
}

TEST(ExactRatio, Arithmetic) {
  ExactRatio half(BigInt(1), BigInt(2));
  ExactRatio third(BigInt(1), BigInt(3));
  EXPECT_EQ((half + third).str(), "5/6");
  EXPECT_EQ((half * third).str(), "1/6");
  EXPECT_EQ((half / third).str(), "3/2");
  EXPECT_LT(third, half);
  EXPECT_EQ(half.pow(3).str(), "1/8");
  EXPECT_EQ(half.pow(-2).str(), "4");
  EXPECT_EQ(half.pow(0).str(), "1");
  EXPECT_EQ(half.inverse().str(), "2");
}

TEST(ExactRatio, RejectsNegativeAndZeroDivision) {
  EXPECT_THROW(ExactRatio(-1), ValidationError);
  EXPECT_THROW(ExactRatio(BigInt(1), BigInt(0)), ValidationError);
  EXPECT_THROW(ExactRatio(1) / ExactRatio(0), ValidationError);
  EXPECT_THROW(ExactRatio(0).pow(-1), ValidationError);
}

TEST(ExactRatio, Parse) {
  EXPECT_EQ(ExactRatio::parse("7").str(), "7");
  EXPECT_EQ(ExactRatio::parse("6/4").str(), "3/2");
  EXPECT_THROW(ExactRatio::parse("x/2"), ValidationError);
  EXPECT_THROW(ExactRatio::parse("1/2/3"), ValidationError);
}

TEST(ExactRatio, BigValues) {
  // 2^100 stays exact.
  ExactRatio two(2);
  EXPECT_EQ(two.pow(100).numerator(), ipow(BigInt(2), 100));
  EXPECT_EQ(two.pow(100).denominator(), 1);
}

TEST(IntegerHelpers, Binomial) {
  EXPECT_EQ(binomial(5, 3), 10);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(40, 20), BigInt("137846528820"));
}

TEST(IntegerHelpers, KthRoot) {
  EXPECT_EQ(exact_kth_root(BigInt(64), 3), BigInt(4));
  EXPECT_EQ(exact_kth_root(BigInt(63), 3), std::nullopt);
  EXPECT_EQ(exact_kth_root(BigInt(1), 7), BigInt(1));
  auto root = exact_kth_root(ExactRatio(BigInt(4), BigInt(9)), 2);
  ASSERT_TRUE(root.has_value());
  EXPECT_EQ(root->str(), "2/3");
  EXPECT_EQ(exact_kth_root(ExactRatio(3), 2), std::nullopt);
}

}  // namespace
}  // namespace pluennecke

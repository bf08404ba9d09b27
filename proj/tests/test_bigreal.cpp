#include "cotes/bigreal.hpp"

#include <gtest/gtest.h>

#include <stdexcept>
#include <thread>
#include <vector>

using cotes::BigReal;

TEST(BigReal, DigitsRoundTripThroughBits) {
  for (int d : {15, 50, 300, 2600}) {
    const BigReal x(1, d);
    EXPECT_GE(x.digits(), d);
    EXPECT_LE(x.digits(), d + 2);
  }
}

TEST(BigReal, ParsesDecimalLiterals) {
  EXPECT_EQ(BigReal("2.5e-3", 30).to_string(5), "0.0025");
  EXPECT_EQ(BigReal("-17", 30), -17L);
  EXPECT_THROW(BigReal("1.2.3", 30), std::invalid_argument);
  EXPECT_THROW(BigReal("", 30), std::invalid_argument);
  EXPECT_THROW(BigReal("1x", 30), std::invalid_argument);
}

TEST(BigReal, ResultTakesWiderPrecision) {
  const BigReal a(1, 20);
  const BigReal b(3, 200);
  EXPECT_EQ((a / b).bits(), b.bits());
  EXPECT_EQ((b / a).bits(), b.bits());
}

TEST(BigReal, OneThirdIsAccurateToPrecision) {
  const BigReal third = BigReal(1, 100) / 3;
  const BigReal err = cotes::abs(third * 3 - 1);
  EXPECT_TRUE(err < cotes::power_of_ten(-99, 100));
}

TEST(BigReal, LongOperatorsMatchBigRealOperators) {
  const BigReal x("1.7", 60);
  EXPECT_EQ(x * 7, x * BigReal(7, 60));
  EXPECT_EQ(7 * x, x * 7);
  EXPECT_EQ(x / 7, x / BigReal(7, 60));
  EXPECT_EQ(2 / x, BigReal(2, 60) / x);
  EXPECT_EQ(2 - x, BigReal(2, 60) - x);
}

TEST(BigReal, ComparisonsAndPredicates) {
  const BigReal a(2, 30);
  EXPECT_TRUE(a > 1);
  EXPECT_TRUE(a < BigReal(3, 30));
  EXPECT_TRUE(a.is_integer());
  EXPECT_FALSE(BigReal("2.5", 30).is_integer());
  EXPECT_EQ(BigReal(-4, 30).sign(), -1);
  const BigReal nan = cotes::log(BigReal(-1, 30));
  EXPECT_TRUE(nan.is_nan());
  EXPECT_FALSE(nan == nan);
  EXPECT_EQ(nan.to_string(), "nan");
}

TEST(BigReal, ElementaryFunctionIdentities) {
  const int d = 80;
  const BigReal tol = cotes::power_of_ten(-75, d);
  const BigReal x("0.37", d);
  EXPECT_TRUE(cotes::abs(cotes::sin(x) * cotes::sin(x) + cotes::cos(x) * cotes::cos(x) - 1) < tol);
  EXPECT_TRUE(cotes::abs(cotes::log(cotes::exp(x)) - x) < tol);
  EXPECT_TRUE(cotes::abs(cotes::sech(x) * cotes::sech(x) + cotes::tanh(x) * cotes::tanh(x) - 1) < tol);
  EXPECT_TRUE(cotes::abs(cotes::cbrt(BigReal(-27, d)) + 3) < tol);
  EXPECT_TRUE(cotes::abs(cotes::pow(BigReal(2, d), 10L) - 1024) < tol);
  EXPECT_EQ(cotes::pi(30).to_string(12), "3.14159265359");
}

TEST(BigReal, CopyAndMoveKeepValue) {
  BigReal a("3.25", 40);
  BigReal b = a;
  BigReal c = std::move(a);
  EXPECT_EQ(b, c);
  a = c;
  EXPECT_EQ(a, b);
}

TEST(BigReal, DeterministicAcrossThreads) {
  auto work = [] {
    BigReal x("1.1", 500);
    for (int i = 0; i < 20; ++i) x = x - cotes::tanh(x - 1) / 3;
    return x.to_string();
  };
  const std::string expected = work();
  std::vector<std::string> got(4);
  std::vector<std::thread> threads;
  for (auto& g : got) threads.emplace_back([&g, &work] { g = work(); });
  for (auto& t : threads) t.join();
  for (const auto& g : got) EXPECT_EQ(g, expected);
}

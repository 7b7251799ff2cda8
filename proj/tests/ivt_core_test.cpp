#include "ivt/ivt_core.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "test_util.hpp"

namespace ivt {
namespace {

using testing::digits;

const Radix r2(2);
const Radix r3(3);

TEST(Apply, WorkedExamples) {
  EXPECT_EQ(apply(IvtSystem(r3, 7), 55), 14);
  EXPECT_EQ(apply(IvtSystem(r3, 16), 55), 41);
  EXPECT_EQ(apply(IvtSystem(r2, 1), 7), 0);
}

TEST(Apply, MatchesPositionalOracle) {
  for (unsigned p = 2; p <= 4; ++p) {
    for (RuleIndex j = 0; j < *rule_count(Radix(p)); ++j) {
      const IvtSystem trimmed(Radix(p), j);
      const IvtSystem fixed(Radix(p), j, FixedWidth{6});
      for (std::uint64_t x = 0; x < 600; ++x) {
        ASSERT_EQ(apply(trimmed, x), oracle::apply(p, j, x));
        if (x < oracle::pow_u(p, 6)) {
          ASSERT_EQ(apply(fixed, x), oracle::apply(p, j, x, 6));
        }
      }
    }
  }
}

TEST(Apply, FixedWidthDomain) {
  const IvtSystem sys(r2, 1, FixedWidth{2});
  EXPECT_EQ(apply(sys, 3), 0);
  try {
    apply(sys, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfStateSpace);
  }
  EXPECT_THROW(IvtSystem(r2, 1, FixedWidth{0}), Error);
}

TEST(Iterate, Examples) {
  EXPECT_EQ(iterate(IvtSystem(r2, 1), 2, 2), 0);
  EXPECT_EQ(iterate(IvtSystem(r2, 1, FixedWidth{2}), 2, 2), 2);
  EXPECT_EQ(iterate(IvtSystem(r3, 16), 55, 0), 55);
}

TEST(Iterate, LongRunsJumpThroughCycle) {
  // 55 -> 14 -> 24 -> 1 -> 2 -> 0 -> 1 ...
  const IvtSystem sys(r3, 7);
  for (std::uint64_t n : {257u, 300u, 1000u, 4097u}) {
    EXPECT_EQ(iterate(sys, 55, n), oracle::iterate(3, 7, 55, n)) << n;
  }
  const std::uint64_t big = 1'000'000'000'000ULL;
  EXPECT_EQ(iterate(sys, 55, big), iterate(sys, 55, 300 + (big - 300) % 3));
  const IvtSystem rotation(r3, 7, FixedWidth{4});
  EXPECT_EQ(iterate(rotation, 55, big), iterate(rotation, 55, big % 3));
}

TEST(WordMap, Examples) {
  const RuleTable f7 = rule_from_index(r3, 7);
  const DigitWord x = encode(55, r3);
  EXPECT_EQ(word_map(f7, x), DigitWord::fixed(r3, digits({0, 1, 1, 2})));
  EXPECT_EQ(decode(word_map(RuleTable::identity(r3), x)), 55);
  EXPECT_EQ(word_map(rule_from_index(r2, 1), DigitWord::fixed(r2, digits({0, 0, 0}))),
            DigitWord::fixed(r2, digits({1, 1, 1})));
  EXPECT_THROW(word_map(f7, encode(5, r2)), Error);
}

TEST(Decomposition, Examples) {
  EXPECT_EQ(iterate_via_decomposition(IvtSystem(r2, 1, FixedWidth{2}), 2, 2), 2);
  EXPECT_EQ(iterate_via_decomposition(IvtSystem(r3, 7, FixedWidth{4}), 55, 1), 14);
  try {
    iterate_via_decomposition(IvtSystem(r2, 1), 2, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SemanticsMismatch);
  }
}

TEST(Decomposition, AgreesWithIterationUnderFixedWidth) {
  for (unsigned p = 2; p <= 3; ++p) {
    for (RuleIndex j = 0; j < *rule_count(Radix(p)); ++j) {
      const IvtSystem sys(Radix(p), j, FixedWidth{4});
      for (std::uint64_t x = 0; x < oracle::pow_u(p, 4); ++x)
        for (std::uint64_t n = 0; n <= 20; ++n)
          ASSERT_EQ(iterate(sys, x, n), iterate_via_decomposition(sys, x, n));
    }
  }
}

TEST(Decomposition, TrimmedCounterexample) {
  EXPECT_EQ(iterate(IvtSystem(r2, 1), 2, 2), 0);
  EXPECT_EQ(iterate(IvtSystem(r2, 1, FixedWidth{2}), 2, 2), 2);
}

TEST(ActionLaws, AdditiveAndMultiplicative) {
  std::mt19937_64 rng(7);
  for (unsigned p = 2; p <= 4; ++p) {
    for (int trial = 0; trial < 300; ++trial) {
      const RuleIndex j = rng() % *rule_count(Radix(p));
      const IvtSystem sys(Radix(p), j);
      const std::uint64_t a = rng() % 9;
      const std::uint64_t b = rng() % 9;
      const Value x = rng() % 10'001;
      ASSERT_EQ(iterate(sys, x, a + b), iterate(sys, iterate(sys, x, a), b));
      Value y = x;
      for (std::uint64_t i = 0; i < b; ++i) y = iterate(sys, y, a);
      ASSERT_EQ(iterate(sys, x, a * b), y);
    }
  }
}

TEST(Trimmed, LengthNeverGrows) {
  for (unsigned p = 2; p <= 4; ++p)
    for (RuleIndex j = 0; j < *rule_count(Radix(p)); ++j) {
      const IvtSystem sys(Radix(p), j);
      for (std::uint64_t x = 0; x < 2000; ++x)
        ASSERT_LE(digit_length(apply(sys, x), Radix(p)), digit_length(x, Radix(p)));
    }
}

TEST(Trimmed, IdentityRuleFixesEverything) {
  for (unsigned p = 2; p <= 16; ++p) {
    const IvtSystem sys(Radix(p), identity_index(Radix(p)));
    for (std::uint64_t x = 0; x < 3000; ++x) ASSERT_EQ(apply(sys, x), x);
  }
}

}  // namespace
}  // namespace ivt

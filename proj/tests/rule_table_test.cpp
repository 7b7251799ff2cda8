#include "ivt/rule_table.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "test_util.hpp"

namespace ivt {
namespace {

using testing::digits;

std::vector<Digit> entries(const RuleTable& t) { return {t.entries().begin(), t.entries().end()}; }

TEST(RuleFromIndex, TableColumns) {
  EXPECT_EQ(entries(rule_from_index(Radix(3), 7)), digits({1, 2, 0}));
  EXPECT_EQ(entries(rule_from_index(Radix(3), 16)), digits({1, 2, 1}));
  EXPECT_EQ(rule_from_index(Radix(2), 2), RuleTable::identity(Radix(2)));
}

TEST(RuleFromIndex, OutOfRange) {
  try {
    rule_from_index(Radix(3), 27);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
  EXPECT_NO_THROW(rule_from_index(Radix(3), 26));
  EXPECT_NO_THROW(rule_from_index(Radix(16), ~std::uint64_t{0}));
}

TEST(IndexFromRule, Inverts) {
  EXPECT_EQ(index_from_rule(RuleTable(Radix(3), digits({1, 2, 0}))), 7u);
  EXPECT_EQ(index_from_rule(RuleTable(Radix(5), digits({0, 0, 0, 0, 0}))), 0u);
  for (unsigned p = 2; p <= 4; ++p) {
    const Radix r(p);
    for (RuleIndex j = 0; j < *rule_count(r); ++j) {
      ASSERT_EQ(index_from_rule(rule_from_index(r, j)), j);
    }
  }
}

TEST(RuleTable, MatchesPositionalDigits) {
  for (unsigned p = 2; p <= 4; ++p) {
    for (RuleIndex j = 0; j < *rule_count(Radix(p)); ++j) {
      const RuleTable t = rule_from_index(Radix(p), j);
      for (unsigned i = 0; i < p; ++i) ASSERT_EQ(t(static_cast<Digit>(i)), oracle::rule_digit(p, j, i));
    }
  }
}

TEST(IdentityIndex, NamedConstants) {
  EXPECT_EQ(identity_index(Radix(2)), 2u);
  EXPECT_EQ(identity_index(Radix(3)), 21u);
  for (unsigned p = 2; p <= 16; ++p) {
    EXPECT_EQ(rule_from_index(Radix(p), identity_index(Radix(p))), RuleTable::identity(Radix(p)));
  }
}

TEST(ComposeRules, WorkedIdentity) {
  EXPECT_EQ(entries(rule_from_index(Radix(3), 18)), digits({0, 0, 2}));
  EXPECT_EQ(compose_rules(Radix(3), 16, 18), 13u);
  EXPECT_EQ(compose_rules(Radix(3), 13, 16), 13u);
  EXPECT_EQ(entries(rule_from_index(Radix(3), 13)), digits({1, 1, 1}));
}

TEST(ComposeRules, MonoidLaws) {
  for (unsigned p = 2; p <= 3; ++p) {
    const Radix r(p);
    const RuleIndex n = *rule_count(r);
    const RuleIndex id = identity_index(r);
    for (RuleIndex a = 0; a < n; ++a) {
      ASSERT_EQ(compose_rules(r, id, a), a);
      ASSERT_EQ(compose_rules(r, a, id), a);
      for (RuleIndex b = 0; b < n; ++b)
        for (RuleIndex c = 0; c < n; ++c)
          ASSERT_EQ(compose_rules(r, compose_rules(r, a, b), c),
                    compose_rules(r, a, compose_rules(r, b, c)));
    }
  }
}

TEST(RuleTable, PowerMatchesRepeatedComposition) {
  const RuleTable f = rule_from_index(Radix(4), 141);
  RuleTable acc = RuleTable::identity(Radix(4));
  for (std::uint64_t n = 0; n < 20; ++n) {
    ASSERT_EQ(f.power(n), acc);
    acc = f.after(acc);
  }
}

TEST(DigitGraph, Examples) {
  const DigitGraph swap = digit_graph(Radix(2), 1);
  ASSERT_EQ(swap.cycles.size(), 1u);
  EXPECT_EQ(swap.cycles[0], digits({0, 1}));
  EXPECT_TRUE(swap.fixed_digits.empty());
  EXPECT_TRUE(swap.is_permutation);

  const DigitGraph rot = digit_graph(Radix(3), 7);
  ASSERT_EQ(rot.cycles.size(), 1u);
  EXPECT_EQ(rot.cycles[0], digits({0, 1, 2}));
  EXPECT_EQ(rot.cycle_length, (std::vector<std::size_t>{3, 3, 3}));

  for (unsigned p = 2; p <= 5; ++p) {
    const DigitGraph id = digit_graph(Radix(p), identity_index(Radix(p)));
    EXPECT_EQ(id.cycles.size(), p);
    EXPECT_EQ(id.fixed_digits.size(), p);
    for (auto len : id.cycle_length) EXPECT_EQ(len, 1u);
  }

  // f_18 = [0, 0, 2]: 0 and 2 fixed, 1 falls onto 0 in one step.
  const DigitGraph g = digit_graph(Radix(3), 18);
  EXPECT_EQ(g.distance, (std::vector<std::size_t>{0, 1, 0}));
  EXPECT_EQ(g.cycle_id[1], g.cycle_id[0]);
  EXPECT_FALSE(g.is_permutation);
}

// Partition property, exhaustively checked by iterating the table directly.
TEST(DigitGraph, PartitionsDigits) {
  for (unsigned p = 2; p <= 4; ++p) {
    const Radix r(p);
    for (RuleIndex j = 0; j < *rule_count(r); ++j) {
      const RuleTable f = rule_from_index(r, j);
      const DigitGraph g = digit_graph(f);
      auto step = [&](Digit d, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) d = f(d);
        return d;
      };
      for (unsigned i = 0; i < p; ++i) {
        const auto d = static_cast<Digit>(i);
        const Digit landing = step(d, g.distance[i]);
        ASSERT_TRUE(g.on_cycle(landing));
        ASSERT_EQ(g.cycle_id[landing], g.cycle_id[i]);
        // distance is minimal: one step earlier is not yet on the cycle
        if (g.distance[i] > 0) {
          ASSERT_FALSE(g.on_cycle(step(d, g.distance[i] - 1)));
        }
        if (g.on_cycle(d)) {
          ASSERT_EQ(step(d, g.cycle_length[i]), d);
          for (std::size_t m = 1; m < g.cycle_length[i]; ++m) ASSERT_NE(step(d, m), d);
        }
      }
      std::vector<Digit> sorted(f.entries().begin(), f.entries().end());
      std::sort(sorted.begin(), sorted.end());
      bool perm = true;
      for (unsigned i = 0; i < p; ++i) perm = perm && sorted[i] == i;
      ASSERT_EQ(g.is_permutation, perm);
    }
  }
}

}  // namespace
}  // namespace ivt

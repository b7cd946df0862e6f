#include <gtest/gtest.h>

#include <cmath>

#include "bgc/estimate.hpp"
#include "oracles.hpp"

namespace bgc {
namespace {

SearchConfig config(int n, Mode mode) {
  SearchConfig c;
  c.n = n;
  c.mode = mode;
  return c;
}

TEST(Estimate, WithinThreeStandardErrorsOfExact) {
  for (int n = 3; n <= 5; ++n) {
    for (Mode mode : {Mode::open, Mode::cyclic}) {
      const double exact = static_cast<double>(exact_tree_size(config(n, mode)));
      int close = 0;
      for (std::uint64_t seed : {1, 2, 3}) {
        const auto r = estimate_tree_size(config(n, mode), 100'000, seed);
        if (std::abs(r.mean_nodes - exact) <= 3 * r.stderr_nodes) ++close;
      }
      EXPECT_GE(close, 2) << n << ' ' << to_string(mode);
    }
  }
}

TEST(Estimate, FiveBitScale) {
  const auto r = estimate_tree_size(config(5, Mode::cyclic), 100'000, 1);
  EXPECT_NEAR(r.log2_mean, 19.0, 0.5);
  EXPECT_EQ(r.samples, 100'000u);
  EXPECT_EQ(r.rng_seed, 1u);
}

TEST(Estimate, Deterministic) {
  const auto a = estimate_tree_size(config(5, Mode::both), 2000, 42);
  const auto b = estimate_tree_size(config(5, Mode::both), 2000, 42);
  EXPECT_EQ(a.mean_nodes, b.mean_nodes);
  EXPECT_EQ(a.stderr_nodes, b.stderr_nodes);
  const auto c = estimate_tree_size(config(5, Mode::both), 2000, 43);
  EXPECT_NE(a.mean_nodes, c.mean_nodes);
}

TEST(Estimate, ChildlessPrefixIsExact) {
  auto c = config(3, Mode::open);
  c.prefix = parse_sequence("0102101", 3);
  const auto r = estimate_tree_size(c, 50, 7);
  EXPECT_EQ(r.mean_nodes, 1.0);
  EXPECT_EQ(r.stderr_nodes, 0.0);
}

TEST(Estimate, SingleChainIsExact) {
  // The 1-bit tree is a chain: root, "0", and in cyclic mode "00".
  const auto r = estimate_tree_size(config(1, Mode::cyclic), 10, 1);
  EXPECT_EQ(r.mean_nodes, 3.0);
  EXPECT_EQ(r.stderr_nodes, 0.0);
}

TEST(Estimate, GrowsSteeplyWithN) {
  const auto five = estimate_tree_size(config(5, Mode::cyclic), 20'000, 1);
  const auto six = estimate_tree_size(config(6, Mode::cyclic), 20'000, 1);
  const auto seven = estimate_tree_size(config(7, Mode::cyclic), 20'000, 1);
  EXPECT_GE(six.log2_mean, five.log2_mean + 10);
  EXPECT_GE(seven.log2_mean, six.log2_mean + 10);
}

TEST(Estimate, Errors) {
  EXPECT_THROW(estimate_tree_size(config(3, Mode::both), 0, 1), Error);
  auto bad = config(3, Mode::both);
  bad.prefix = parse_sequence("1", 3);
  EXPECT_THROW(estimate_tree_size(bad, 10, 1), Error);
}

TEST(ExactTreeSize, MatchesOracle) {
  for (int n = 1; n <= 5; ++n) {
    EXPECT_EQ(exact_tree_size(config(n, Mode::cyclic)), oracle::tree_size(n, true)) << n;
    EXPECT_EQ(exact_tree_size(config(n, Mode::open)), oracle::tree_size(n, false)) << n;
  }
}

TEST(ExactTreeSize, BudgetRules) {
  EXPECT_THROW(exact_tree_size(config(6, Mode::cyclic)), Error);
  auto c = config(6, Mode::cyclic);
  c.node_limit = 10'000;
  EXPECT_THROW(exact_tree_size(c), Truncated);
}

}  // namespace
}  // namespace bgc

#include <gtest/gtest.h>

#include <algorithm>

#include "bgc/stacks.hpp"

namespace bgc {
namespace {

using Stack = std::vector<Symbol>;

TEST(Brgc, Words) {
  EXPECT_EQ(brgc(1).words, (std::vector<Word>{0, 1}));
  EXPECT_EQ(brgc(2).words, (std::vector<Word>{0, 1, 3, 2}));
  EXPECT_EQ(brgc(3).words, (std::vector<Word>{0, 1, 3, 2, 6, 7, 5, 4}));
  for (int n = 1; n <= 12; ++n) {
    const auto p = brgc(n);
    EXPECT_EQ(classify_gray(transitions_of(p)).kind, GrayClass::open_gray) << n;
    auto closed = p;
    closed.words.push_back(0);
    EXPECT_EQ(classify_gray(transitions_of(closed)).kind, GrayClass::cyclic_gray) << n;
  }
}

TEST(TwoStack, TwoBitTable) {
  const auto t = two_stack_trace(brgc(2));
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0], (TwoStackState{Stack{}, Stack{}}));
  EXPECT_EQ(t[1], (TwoStackState{Stack{0}, Stack{}}));
  EXPECT_EQ(t[2], (TwoStackState{Stack{0}, Stack{1}}));
  EXPECT_EQ(t[3], (TwoStackState{Stack{}, Stack{1}}));
}

TEST(TwoStack, ThreeBitTable) {
  const auto t = two_stack_trace(brgc(3));
  const std::vector<TwoStackState> want = {
      {Stack{}, Stack{}},  {Stack{0}, Stack{}},    {Stack{0}, Stack{1}},
      {Stack{}, Stack{1}}, {Stack{2}, Stack{1}},   {Stack{2, 0}, Stack{1}},
      {Stack{2, 0}, Stack{}}, {Stack{2}, Stack{}}};
  EXPECT_EQ(t, want);
}

TEST(TwoStack, ReflectedCodeRealizableUpToTwenty) {
  for (int n = 1; n <= 20; ++n) {
    const auto path = brgc(n);
    ASSERT_TRUE(is_two_stack_realizable(path)) << n;
    ASSERT_TRUE(reversed_two_stack_realizable(path)) << n;
  }
}

TEST(TwoStack, StatesMatchSetBitsByParity) {
  for (int n = 1; n <= 10; ++n) {
    const auto path = brgc(n);
    const auto t = two_stack_trace(path);
    for (std::size_t i = 0; i < t.size(); ++i) {
      Word w = 0;
      for (Symbol p : t[i].even_stack) {
        ASSERT_EQ(p % 2, 0);
        ASSERT_EQ(w & (Word{1} << p), 0u);
        w |= Word{1} << p;
      }
      for (Symbol p : t[i].odd_stack) {
        ASSERT_EQ(p % 2, 1);
        ASSERT_EQ(w & (Word{1} << p), 0u);
        w |= Word{1} << p;
      }
      ASSERT_EQ(w, path.words[i]);
    }
  }
}

TEST(TwoStack, MidpointHoldsOneBit) {
  for (int k = 1; k <= 19; ++k) {
    const auto path = brgc(k + 1);
    const std::size_t mid = (std::size_t{1} << k) - 1;
    EXPECT_EQ(path.words[mid], Word{1} << (k - 1)) << k;
    const auto t = two_stack_trace(path);
    const Symbol top = static_cast<Symbol>(k - 1);
    EXPECT_EQ(t[mid].stack_for(top), Stack{top}) << k;
    EXPECT_TRUE(t[mid].stack_for(static_cast<Symbol>(k)).empty()) << k;
  }
}

TEST(TwoStack, QueueCodeVerdict) {
  // Word path of the 3-bit Beckett code 0102101.
  const WordPath path{3, {0, 1, 3, 2, 6, 4, 5, 7}};
  const auto v = is_two_stack_realizable(path);
  EXPECT_TRUE(v.realizable);
  EXPECT_FALSE(v.failure.has_value());
  EXPECT_EQ(two_stack_trace(path).back(), (TwoStackState{Stack{2, 0}, Stack{1}}));
}

TEST(TwoStack, ForcedViolation) {
  const WordPath path{3, {0, 1, 3, 7, 6}};
  try {
    two_stack_trace(path);
    FAIL() << "expected PopNotTop";
  } catch (const PopNotTop& e) {
    EXPECT_EQ(e.step, 3u);
    EXPECT_EQ(e.position, 0);
    ASSERT_TRUE(e.top.has_value());
    EXPECT_EQ(*e.top, 2);
  }
  EXPECT_FALSE(is_two_stack_realizable(path));
}

TEST(TwoStack, EdgeCases) {
  EXPECT_TRUE(is_two_stack_realizable(WordPath{3, {0}}));
  EXPECT_THROW(two_stack_trace(WordPath{3, {1, 0}}), Error);
  EXPECT_THROW(two_stack_trace(WordPath{3, {}}), Error);
  EXPECT_FALSE(is_two_stack_realizable(WordPath{3, {0, 3}}));
}

}  // namespace
}  // namespace bgc

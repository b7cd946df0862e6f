#include <gtest/gtest.h>

#include <numeric>

#include "bgc/canonical.hpp"
#include "bgc/random.hpp"
#include "bgc/search.hpp"
#include "bgc/stacks.hpp"
#include "oracles.hpp"

namespace bgc {
namespace {

TransitionSequence seq(int n, const std::string& s) { return parse_sequence(s, n); }

std::string relabeled_by_oracle(int n, const std::string& s) {
  return oracle::text(oracle::min_relabel(n, oracle::digits(s)));
}

std::vector<Symbol> random_permutation(int n, SplitMix64& rng) {
  auto rho = identity_permutation(n);
  for (std::size_t i = rho.size(); i > 1; --i) std::swap(rho[i - 1], rho[rng.below(i)]);
  return rho;
}

std::vector<TransitionSequence> all_codes(int max_n) {
  std::vector<TransitionSequence> out;
  for (int n = 1; n <= max_n; ++n) {
    SearchConfig c;
    c.n = n;
    c.mode = Mode::both;
    auto v = collect_codes(c, {CodeKind::cyclic, CodeKind::open, CodeKind::open_closable});
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

TEST(RelabelFirstOccurrence, MatchesBruteForceMinimum) {
  EXPECT_EQ(relabeled_by_oracle(3, "1012010"), "0102101");
  EXPECT_EQ(format_sequence(relabel_first_occurrence(seq(3, "1012010"))), "0102101");
  EXPECT_EQ(format_sequence(relabel_first_occurrence(seq(3, "0102101"))), "0102101");
  const auto want = relabeled_by_oracle(3, "2120212");
  EXPECT_EQ(want, "0102010");
  EXPECT_EQ(format_sequence(relabel_first_occurrence(seq(3, "2120212"))), want);
}

TEST(RelabelFirstOccurrence, RequiresEveryPosition) {
  EXPECT_THROW(relabel_first_occurrence(seq(3, "0101")), IncompleteAlphabet);
}

TEST(RelabelFirstOccurrence, RandomSequencesAgreeWithOracle) {
  SplitMix64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + static_cast<int>(rng.below(5));
    std::vector<Symbol> s(static_cast<std::size_t>(n));
    std::iota(s.begin(), s.end(), Symbol{0});
    const std::size_t extra = rng.below(12);
    for (std::size_t k = 0; k < extra; ++k) s.push_back(static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(n))));
    for (std::size_t k = s.size(); k > 1; --k) std::swap(s[k - 1], s[rng.below(k)]);
    TransitionSequence t{n, s};
    auto got = relabel_first_occurrence(t);
    ASSERT_EQ(format_sequence(got), relabeled_by_oracle(n, format_sequence(t)));
    ASSERT_TRUE(is_restricted_growth(got.symbols));
  }
}

TEST(ReverseSeq, Literal) {
  EXPECT_EQ(format_sequence(reverse_seq(seq(3, "0102101"))), "1012010");
  EXPECT_EQ(format_sequence(reverse_seq(seq(2, "0101"))), "1010");
  auto rev = reverse_seq(seq(5, "01020132010432104342132340412304"));
  EXPECT_EQ(classify_beckett(rev).kind, BeckettClass::cyclic_beckett);
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(format_sequence(canonicalize(seq(3, "0102101"))), "0102101");
  EXPECT_EQ(format_sequence(canonicalize(seq(3, "1012010"))), "0102101");
  EXPECT_EQ(format_sequence(canonicalize(seq(5, "01020132010432104342132340412304"))),
            "01020132010432104342132340412304");
  SplitMix64 rng(3);
  const auto base = seq(4, "012301202301230");
  for (int i = 0; i < 24; ++i) {
    auto img = relabel(base, random_permutation(4, rng));
    EXPECT_EQ(canonicalize(img), base);
  }
}

TEST(Canonicalize, RejectsNonCodes) {
  EXPECT_THROW(canonicalize(seq(3, "010")), Error);
  EXPECT_THROW(canonicalize(seq(2, "0110")), Error);
}

TEST(Canonicalize, WitnessMapsInputOntoRepresentative) {
  for (const auto& c : all_codes(5)) {
    SplitMix64 rng(c.size());
    auto img = relabel(c, random_permutation(c.n, rng));
    auto f = canonical_form(img);
    EXPECT_EQ(apply_witness(img, f.witness), f.canonical);
    EXPECT_FALSE(f.witness.added_word.has_value());
  }
}

TEST(AreIsomorphicBeckett, Examples) {
  auto w = are_isomorphic_beckett(seq(3, "0102101"), seq(3, "1012010"));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(apply_witness(seq(3, "0102101"), *w), seq(3, "1012010"));

  auto id = are_isomorphic_beckett(seq(3, "0102101"), seq(3, "0102101"));
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(id->rho, identity_permutation(3));
  EXPECT_FALSE(id->reversed);

  EXPECT_FALSE(are_isomorphic_beckett(seq(4, "010213202313020"), seq(4, "012301213210321")));
  EXPECT_THROW(are_isomorphic_beckett(seq(3, "0102101"), seq(2, "0101")), Incomparable);
  EXPECT_THROW(are_isomorphic_beckett(seq(1, "0"), seq(1, "00")), Incomparable);
}

TEST(AreIsomorphicBeckett, ReversedCyclicImages) {
  SplitMix64 rng(9);
  for (const auto& c : all_codes(5)) {
    if (classify_beckett(c).kind != BeckettClass::cyclic_beckett) continue;
    auto img = reverse_seq(relabel(c, random_permutation(c.n, rng)));
    auto w = are_isomorphic_beckett(c, img);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(apply_witness(c, *w), img);
  }
}

TEST(CanonicalProperties, IdempotentAndInvariant) {
  SplitMix64 rng(17);
  for (const auto& c : all_codes(5)) {
    const auto canon = canonicalize(c);
    EXPECT_EQ(canonicalize(canon), canon);
    EXPECT_TRUE(is_restricted_growth(canon.symbols));
    for (int k = 0; k < 4; ++k) {
      EXPECT_EQ(canonicalize(relabel(c, random_permutation(c.n, rng))), canon);
    }
    if (classify_beckett(reverse_seq(c)).complete()) {
      EXPECT_EQ(canonicalize(reverse_seq(c)), canon);
    }
  }
}

TEST(CanonicalProperties, AgreesWithBruteForceUpToFourBits) {
  for (const auto& c : all_codes(4)) {
    const bool cyc = classify_beckett(c).kind == BeckettClass::cyclic_beckett;
    EXPECT_EQ(format_sequence(canonicalize(c)),
              oracle::text(oracle::brute_canonical(c.n, oracle::digits(format_sequence(c)), cyc)));
  }
}

TEST(SelfReverse, NoWitnessWithoutAdditionForThreeAndFourBits) {
  for (int n : {3, 4}) {
    for (const auto& path : enumerate_gray_cycles_small(n)) {
      ASSERT_FALSE(self_reverse_witness(path, false).has_value());
    }
  }
}

TEST(SelfReverse, ReflectedCodeWithAddition) {
  for (int n = 3; n <= 8; ++n) {
    auto path = brgc(n);
    const auto words = cyclic_words(path);
    auto w = self_reverse_witness(path, true);
    ASSERT_TRUE(w.has_value()) << n;
    ASSERT_TRUE(w->added_word.has_value());
    ASSERT_TRUE(w->rotation.has_value());
    EXPECT_NE(*w->added_word, 0u);
    // Check the witness directly against the reversed cycle.
    const std::size_t total = words.size();
    for (std::size_t i = 0; i < total; ++i) {
      Word img = 0;
      for (int b = 0; b < n; ++b)
        if ((words[i] >> b) & 1u) img |= Word{1} << w->rho[static_cast<std::size_t>(b)];
      img ^= *w->added_word;
      const Word target = words[(total - ((i + *w->rotation) % total)) % total];
      ASSERT_EQ(img, target);
    }
    EXPECT_FALSE(self_reverse_witness(path, false).has_value());
  }
}

TEST(SelfReverse, BelowTheBound) {
  auto w = self_reverse_witness(WordPath{1, {0, 1}}, false);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->reversed);
  EXPECT_TRUE(self_reverse_witness(brgc(2), false).has_value());
}

TEST(SelfReverse, Preconditions) {
  EXPECT_THROW(self_reverse_witness(brgc(9), true), Error);
  EXPECT_THROW(self_reverse_witness(WordPath{3, {0, 1, 3, 2, 6, 7, 5}}, false), Error);
  // Open but not closable: 000 ... 111 ends two bits away from 000.
  EXPECT_THROW(self_reverse_witness(apply_transitions(seq(3, "0102101")), false), Error);
}

}  // namespace
}  // namespace bgc

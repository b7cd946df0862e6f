#pragma once

// Independent reference implementations used only by tests. Nothing here uses
// the library's search state, canonicalization or queue code.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Seq = std::vector<int>;

inline Seq digits(const std::string& s) {
  Seq out;
  for (char c : s) out.push_back(c - '0');
  return out;
}

inline std::string text(const Seq& s) {
  std::string out;
  for (int x : s) out.push_back(static_cast<char>('0' + x));
  return out;
}

// Beckett test straight from the definition: walk the words, keep the set
// bits in arrival order, and require every cleared bit to be the oldest one.
// `cyclic` allows the final word to equal the start.
inline bool is_beckett_walk(int n, const Seq& s, bool cyclic) {
  std::set<unsigned> seen{0};
  std::deque<int> arrival;
  unsigned w = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const unsigned bit = 1u << s[i];
    if (w & bit) {
      if (arrival.empty() || arrival.front() != s[i]) return false;
      arrival.pop_front();
    } else {
      arrival.push_back(s[i]);
    }
    w ^= bit;
    const bool last = i + 1 == s.size();
    if (cyclic && last) return w == 0 && seen.size() == (1u << n);
    if (!seen.insert(w).second) return false;
  }
  return true;
}

inline bool is_complete_beckett(int n, const Seq& s, bool cyclic) {
  const std::size_t want = cyclic ? (std::size_t{1} << n) : (std::size_t{1} << n) - 1;
  return s.size() == want && is_beckett_walk(n, s, cyclic);
}

// Least image of s over all n! relabelings, by brute force.
inline Seq min_relabel(int n, const Seq& s) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Seq best;
  do {
    Seq img(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) img[i] = perm[static_cast<std::size_t>(s[i])];
    if (best.empty() || img < best) best = img;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Least representative over relabelings and (when it stays a Beckett code)
// reversal, by brute force.
inline Seq brute_canonical(int n, const Seq& s, bool cyclic) {
  Seq best = min_relabel(n, s);
  Seq rev(s.rbegin(), s.rend());
  if (is_complete_beckett(n, rev, cyclic)) best = std::min(best, min_relabel(n, rev));
  return best;
}

// Every complete Beckett code, all labelings and orientations, by a plain
// recursive walk without symmetry pruning.
inline std::vector<Seq> all_labeled_codes(int n, bool cyclic) {
  const std::size_t total = std::size_t{1} << n;
  const std::size_t want = cyclic ? total : total - 1;
  std::vector<Seq> out;
  Seq cur;
  std::function<void()> rec = [&] {
    if (cur.size() == want) {
      if (is_complete_beckett(n, cur, cyclic)) out.push_back(cur);
      return;
    }
    for (int p = 0; p < n; ++p) {
      cur.push_back(p);
      if (is_beckett_walk(n, cur, cyclic && cur.size() == want)) rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

inline std::set<Seq> canonical_set(int n, bool cyclic) {
  std::set<Seq> out;
  for (const auto& c : all_labeled_codes(n, cyclic)) out.insert(brute_canonical(n, c, cyclic));
  return out;
}

// Size of the restricted-growth search tree, counted by a separate recursive
// walk: a node is any prefix reachable by legal moves where a never-used bit
// may only be introduced if it is the smallest unused one. With `cyclic`, the
// length 2^n - 1 nodes also get the closing child.
inline std::uint64_t tree_size(int n, bool cyclic) {
  const std::size_t total = std::size_t{1} << n;
  std::uint64_t nodes = 0;
  Seq cur;
  std::function<void(int)> rec = [&](int used) {
    ++nodes;
    for (int p = 0; p < n; ++p) {
      if (p > used) break;
      cur.push_back(p);
      const bool closing = cyclic && cur.size() == total;
      if (cur.size() <= total && is_beckett_walk(n, cur, closing)) rec(std::max(used, p + 1));
      cur.pop_back();
    }
  };
  rec(0);
  return nodes;
}

}  // namespace oracle

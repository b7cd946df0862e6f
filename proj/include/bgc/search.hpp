#pragma once

// Exhaustive depth-first lexicographic enumeration of Beckett-Gray codes.
//
// The tree: the root is the empty sequence anchored at the all-zero word. The
// children of a node, in ascending symbol order, are every 0->1 flip of a bit
// whose target word is unvisited, plus the 1->0 flip of the queue front when
// its target is unvisited. In cyclic mode the node of length 2^n - 1 also has
// the closing child back to the all-zero word. Relabeling symmetry is removed
// by only introducing an unused position if it is the smallest unused one
// (restricted growth). Reversal symmetry is removed when a code completes.

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bgc/canonical.hpp"
#include "bgc/core.hpp"
#include "bgc/queue.hpp"

namespace bgc {

// Mutable search position: current word, visited set, FIFO of set bits and
// the transitions taken so far. push/pop are O(1).
class SearchState {
 public:
  explicit SearchState(int n)
      : n_(n), total_(word_count(n)), visited_(total_, 0) {
    check_bit_count(n);
    first_use_.fill(-1);
    visited_[0] = 1;
    seq_.reserve(total_);
  }

  int n() const { return n_; }
  std::size_t total() const { return total_; }
  std::size_t depth() const { return seq_.size(); }
  Word word() const { return word_; }
  int used() const { return used_; }
  const std::vector<Symbol>& sequence() const { return seq_; }
  std::optional<Symbol> front() const {
    if (qsize_ == 0) return std::nullopt;
    return ring_[qhead_];
  }
  QueueState queue() const {
    QueueState q;
    for (unsigned i = 0; i < qsize_; ++i) q.entries.push_back(ring_[(qhead_ + i) & kRingMask]);
    return q;
  }
  bool visited(Word w) const { return visited_[w] != 0; }

  bool is_open_complete() const { return seq_.size() + 1 == total_; }
  bool is_closed() const { return seq_.size() == total_; }

  // Whether flipping `p` is a legal move. `restricted` enables restricted-growth
  // pruning; `allow_close` permits the final return to the all-zero word.
  bool can_push(Symbol p, bool restricted, bool allow_close) const {
    if (seq_.size() >= total_) return false;
    const Word bit = Word{1} << p;
    const Word target = word_ ^ bit;
    if (word_ & bit) {
      if (ring_[qhead_] != p) return false;
      if (visited_[target]) {
        return allow_close && target == 0 && seq_.size() + 1 == total_;
      }
      return true;
    }
    if (restricted && p > used_) return false;
    return !visited_[target];
  }

  int children(std::array<Symbol, kMaxBits>& out, bool restricted,
               bool allow_close) const {
    int count = 0;
    for (int p = 0; p < n_; ++p) {
      if (can_push(static_cast<Symbol>(p), restricted, allow_close)) {
        out[static_cast<std::size_t>(count++)] = static_cast<Symbol>(p);
      }
    }
    return count;
  }

  void push(Symbol p) {
    const Word bit = Word{1} << p;
    if (word_ & bit) {
      qhead_ = (qhead_ + 1) & kRingMask;
      --qsize_;
    } else {
      ring_[(qhead_ + qsize_) & kRingMask] = p;
      ++qsize_;
    }
    word_ ^= bit;
    if (word_ != 0) visited_[word_] = 1;
    if (first_use_[p] < 0) {
      first_use_[p] = static_cast<int>(seq_.size());
      ++used_;
    }
    seq_.push_back(p);
  }

  void pop() {
    const Symbol p = seq_.back();
    seq_.pop_back();
    if (first_use_[p] == static_cast<int>(seq_.size())) {
      first_use_[p] = -1;
      --used_;
    }
    if (word_ != 0) visited_[word_] = 0;
    const Word bit = Word{1} << p;
    word_ ^= bit;
    if (word_ & bit) {
      qhead_ = (qhead_ - 1) & kRingMask;
      ring_[qhead_] = p;
      ++qsize_;
    } else {
      --qsize_;
    }
  }

  void truncate(std::size_t len) {
    while (seq_.size() > len) pop();
  }

  TransitionSequence to_sequence() const { return TransitionSequence{n_, seq_}; }

 private:
  static constexpr unsigned kRingMask = 31;

  int n_;
  std::size_t total_;
  std::vector<std::uint8_t> visited_;
  std::array<Symbol, 32> ring_{};
  unsigned qhead_ = 0;
  unsigned qsize_ = 0;
  Word word_ = 0;
  std::vector<Symbol> seq_;
  std::array<int, kMaxBits> first_use_{};
  int used_ = 0;
};

// Pushes `prefix` onto a fresh state, checking each move is legal.
inline void replay_prefix(SearchState& st, std::span<const Symbol> prefix,
                          bool restricted, bool allow_close) {
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] >= st.n() || !st.can_push(prefix[i], restricted, allow_close)) {
      throw Error("prefix is not a valid search node (rejected at index " +
                  std::to_string(i) + ")");
    }
    st.push(prefix[i]);
  }
}

enum class Emit { count_only, canonical_codes, all_codes };

enum class CodeKind { cyclic, open, open_closable };

inline std::string_view to_string(CodeKind k) {
  switch (k) {
    case CodeKind::cyclic: return "cyclic";
    case CodeKind::open: return "open";
    case CodeKind::open_closable: return "open-closable";
  }
  return "?";
}

struct Emission {
  TransitionSequence code;
  CodeKind kind;
};

using CodeSink = std::function<void(const Emission&)>;

struct SearchConfig {
  int n = 1;
  Mode mode = Mode::both;
  std::optional<TransitionSequence> prefix;
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::duration<double>> time_limit;
  Emit emit = Emit::canonical_codes;
  const std::atomic<bool>* cancel = nullptr;
};

struct EnumerationReport {
  int n = 1;
  Mode mode = Mode::both;
  std::uint64_t count_cyclic = 0;
  std::uint64_t count_open_total = 0;
  std::uint64_t count_open_strict = 0;
  std::uint64_t nodes_visited = 0;
  std::chrono::duration<double> elapsed{0};
  bool truncated = false;

  EnumerationReport& operator+=(const EnumerationReport& o) {
    count_cyclic += o.count_cyclic;
    count_open_total += o.count_open_total;
    count_open_strict += o.count_open_strict;
    nodes_visited += o.nodes_visited;
    elapsed += o.elapsed;
    truncated = truncated || o.truncated;
    return *this;
  }
};

inline bool wants_open(Mode m) { return m != Mode::cyclic; }
inline bool wants_cyclic(Mode m) { return m != Mode::open; }

namespace detail {

// Decides, for a completed restricted-growth code s, whether s is the
// representative of its {s, reverse(s)} pair: true unless the reversal is a
// Beckett-Gray code of the same kind whose first-occurrence relabeling is
// strictly smaller than s.
class ReversalFilter {
 public:
  explicit ReversalFilter(int n) : n_(n), stamp_(word_count(n), 0) {}

  bool keep(std::span<const Symbol> s, bool cyclic) {
    if (!reverse_is_beckett(s, cyclic)) return true;
    constexpr Symbol unset = 0xff;
    std::array<Symbol, kMaxBits> map;
    map.fill(unset);
    Symbol next = 0;
    const std::size_t len = s.size();
    for (std::size_t i = 0; i < len; ++i) {
      const Symbol r = s[len - 1 - i];
      if (map[r] == unset) map[r] = next++;
      if (map[r] != s[i]) return s[i] < map[r];
    }
    return true;
  }

 private:
  bool reverse_is_beckett(std::span<const Symbol> s, bool cyclic) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    std::array<Symbol, 32> ring{};
    unsigned head = 0, size = 0;
    Word w = 0;
    stamp_[0] = epoch_;
    const std::size_t len = s.size();
    for (std::size_t i = 0; i < len; ++i) {
      const Symbol p = s[len - 1 - i];
      const Word bit = Word{1} << p;
      if (w & bit) {
        if (ring[head] != p) return false;
        head = (head + 1) & 31u;
        --size;
      } else {
        ring[(head + size) & 31u] = p;
        ++size;
      }
      w ^= bit;
      const bool closing = cyclic && i + 1 == len;
      if (closing) return w == 0;
      if (stamp_[w] == epoch_) return false;
      stamp_[w] = epoch_;
    }
    return true;
  }

  int n_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

class Budget {
 public:
  explicit Budget(const SearchConfig& c)
      : node_limit_(c.node_limit),
        time_limit_(c.time_limit),
        cancel_(c.cancel),
        start_(std::chrono::steady_clock::now()) {}

  // Called once per node with the running node count.
  bool exhausted(std::uint64_t nodes) {
    if (node_limit_ && nodes >= *node_limit_) return true;
    if ((nodes & 0xfff) != 0) return false;
    if (cancel_ && cancel_->load(std::memory_order_relaxed)) return true;
    return time_limit_ && elapsed() >= *time_limit_;
  }

  std::chrono::duration<double> elapsed() const {
    return std::chrono::steady_clock::now() - start_;
  }

 private:
  std::optional<std::uint64_t> node_limit_;
  std::optional<std::chrono::duration<double>> time_limit_;
  const std::atomic<bool>* cancel_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

inline void validate_prefix(const SearchConfig& config) {
  if (!config.prefix) return;
  if (config.prefix->n != config.n) throw Error("prefix bit count differs from n");
  if (!is_restricted_growth(config.prefix->symbols)) {
    throw Error("prefix is not restricted-growth");
  }
}

// Depth-first enumeration over the subtree rooted at config.prefix (or the
// empty sequence). Codes reach `sink` in lexicographic order.
inline EnumerationReport enumerate_beckett(const SearchConfig& config,
                                           const CodeSink& sink = {}) {
  check_bit_count(config.n);
  validate_prefix(config);
  EnumerationReport report;
  report.n = config.n;
  report.mode = config.mode;

  const bool allow_close = wants_cyclic(config.mode);
  const bool want_open = wants_open(config.mode);
  SearchState st(config.n);
  if (config.prefix) replay_prefix(st, config.prefix->symbols, true, allow_close);

  detail::ReversalFilter filter(config.n);
  detail::Budget budget(config);
  const std::size_t base = st.depth();
  const std::size_t total = st.total();
  std::vector<int> cursor(total + 2, 0);

  auto emit = [&](CodeKind kind, bool canonical) {
    if (!sink || config.emit == Emit::count_only) return;
    if (config.emit == Emit::canonical_codes && !canonical) return;
    sink(Emission{st.to_sequence(), kind});
  };

  auto visit = [&]() {
    ++report.nodes_visited;
    cursor[st.depth()] = 0;
    if (st.is_open_complete() && want_open) {
      const bool canonical = filter.keep(st.sequence(), false);
      const bool closable = std::popcount(st.word()) == 1;
      if (canonical) {
        ++report.count_open_total;
        if (!closable) ++report.count_open_strict;
      }
      emit(closable ? CodeKind::open_closable : CodeKind::open, canonical);
    } else if (st.is_closed()) {
      const bool canonical = filter.keep(st.sequence(), true);
      if (canonical) ++report.count_cyclic;
      emit(CodeKind::cyclic, canonical);
    }
  };

  visit();
  while (true) {
    if (budget.exhausted(report.nodes_visited)) {
      report.truncated = true;
      break;
    }
    const std::size_t d = st.depth();
    int p = cursor[d];
    while (p < config.n && !st.can_push(static_cast<Symbol>(p), true, allow_close)) ++p;
    if (p < config.n) {
      cursor[d] = p + 1;
      st.push(static_cast<Symbol>(p));
      visit();
      continue;
    }
    if (d == base) break;
    st.pop();
  }
  report.elapsed = budget.elapsed();
  return report;
}

// Convenience: collects the emitted codes.
inline std::vector<TransitionSequence> collect_codes(SearchConfig config,
                                                     std::vector<CodeKind> kinds,
                                                     EnumerationReport* report = nullptr) {
  std::vector<TransitionSequence> out;
  if (config.emit == Emit::count_only) config.emit = Emit::canonical_codes;
  auto r = enumerate_beckett(config, [&](const Emission& e) {
    if (std::find(kinds.begin(), kinds.end(), e.kind) != kinds.end()) out.push_back(e.code);
  });
  if (report) *report = r;
  return out;
}

// ---------------------------------------------------------------------------
// Prefix sharding.

struct ShardPlan {
  std::vector<SearchConfig> shards;
  // Nodes of the full tree that lie above the shard roots; the full tree's
  // node count is this plus the shards' node counts.
  std::uint64_t interior_nodes = 0;
};

// Shard roots are the tree nodes at exactly `depth`, plus complete codes that
// are shallower than `depth`. The shard subtrees partition the tree's codes.
inline ShardPlan split_prefixes(int n, int depth, Mode mode = Mode::both) {
  check_bit_count(n);
  ShardPlan plan;
  const bool allow_close = wants_cyclic(mode);
  SearchState st(n);
  std::vector<int> cursor(st.total() + 2, 0);
  auto add_shard = [&]() {
    SearchConfig c;
    c.n = n;
    c.mode = mode;
    c.prefix = st.to_sequence();
    plan.shards.push_back(std::move(c));
  };
  auto enter = [&]() {
    cursor[st.depth()] = 0;
    const bool complete = (st.is_open_complete() && wants_open(mode)) || st.is_closed();
    // A complete code keeps its (at most one-node) subtree in its own shard.
    if (static_cast<int>(st.depth()) == depth || complete) {
      add_shard();
      return false;
    }
    ++plan.interior_nodes;
    return true;
  };
  bool descend = enter();
  while (true) {
    const std::size_t d = st.depth();
    int p = descend ? cursor[d] : n;
    while (p < n && !st.can_push(static_cast<Symbol>(p), true, allow_close)) ++p;
    if (p < n) {
      cursor[d] = p + 1;
      st.push(static_cast<Symbol>(p));
      descend = enter();
      continue;
    }
    if (d == 0) break;
    st.pop();
    descend = true;
  }
  return plan;
}

// ---------------------------------------------------------------------------
// All directed Hamilton cycles of the n-cube through the all-zero word.

inline std::vector<WordPath> enumerate_gray_cycles_small(int n) {
  if (n < 1 || n > 4) throw Error("enumerate_gray_cycles_small supports 1 <= n <= 4");
  const std::size_t total = word_count(n);
  std::vector<WordPath> out;
  std::vector<Word> path{0};
  std::vector<bool> seen(total, false);
  seen[0] = true;
  std::function<void(Word)> dfs = [&](Word w) {
    if (path.size() == total) {
      if (std::popcount(w) == 1) {
        WordPath p{n, path};
        p.words.push_back(0);
        out.push_back(std::move(p));
      }
      return;
    }
    for (int b = 0; b < n; ++b) {
      const Word next = w ^ (Word{1} << b);
      if (seen[next]) continue;
      seen[next] = true;
      path.push_back(next);
      dfs(next);
      path.pop_back();
      seen[next] = false;
    }
  };
  if (total == 2) {
    out.push_back(WordPath{1, {0, 1, 0}});
    return out;
  }
  dfs(0);
  return out;
}

}  // namespace bgc

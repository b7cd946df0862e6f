#pragma once

// Stochastic hunt for large Beckett-Gray codes: simulated annealing grows long
// valid partial codes, whose prefixes then seed a deterministic backtracking
// completion.
//
// Annealing state is always a valid partial code (no repeated word, queue
// discipline intact), so no penalty terms are needed. Energy is minus the
// length. A move cuts a random suffix and regrows greedily at random.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "bgc/queue.hpp"
#include "bgc/random.hpp"
#include "bgc/search.hpp"

namespace bgc {

inline std::size_t default_handoff_length(int n) {
  const std::size_t total = word_count(n);
  if (n < 3) return total - 1;
  return total - (total >> 3);
}

struct AnnealConfig {
  int n = 6;
  Mode mode = Mode::cyclic;
  double initial_temperature = 2.0;
  double cooling_factor = 0.995;
  int steps_per_temperature = 200;
  double final_temperature = 0.5;
  int max_backtrack_cut = 12;
  std::size_t seed_handoff_length = 0;  // 0 = default_handoff_length(n)
  std::uint64_t completion_budget = 2'000'000;  // nodes per completion attempt
  int restarts = 4096;
  std::uint64_t rng_seed = 1;
  int jobs = 1;
  std::optional<std::chrono::duration<double>> time_limit;

  std::size_t handoff() const {
    return seed_handoff_length ? seed_handoff_length : default_handoff_length(n);
  }

  void validate() const {
    check_bit_count(n);
    if (mode == Mode::both) throw Error("hunt mode must be open or cyclic");
    if (!(cooling_factor > 0 && cooling_factor < 1))
      throw Error("cooling_factor must lie in (0, 1)");
    if (!(initial_temperature > 0) || !(final_temperature > 0))
      throw Error("temperatures must be positive");
    if (steps_per_temperature < 1 || max_backtrack_cut < 1)
      throw Error("steps_per_temperature and max_backtrack_cut must be >= 1");
    if (handoff() >= word_count(n)) throw Error("seed_handoff_length must be < 2^n");
    if (restarts < 1) throw Error("restarts must be >= 1");
  }
};

inline std::size_t target_length(int n, Mode mode) {
  return mode == Mode::cyclic ? word_count(n) : word_count(n) - 1;
}

namespace detail {

inline void grow_randomly(SearchState& st, bool allow_close, std::size_t target,
                          SplitMix64& rng) {
  std::array<Symbol, kMaxBits> kids;
  while (st.depth() < target) {
    const int d = st.children(kids, false, allow_close);
    if (d == 0) return;
    st.push(kids[rng.below(static_cast<std::uint64_t>(d))]);
  }
}

}  // namespace detail

// Anneals from the empty code and returns the longest partial reached. The
// optional `stop` is polled between temperature levels.
inline TransitionSequence anneal_partial(const AnnealConfig& config,
                                         const std::function<bool()>& stop = {}) {
  config.validate();
  const bool allow_close = config.mode == Mode::cyclic;
  const std::size_t target = target_length(config.n, config.mode);
  SplitMix64 rng(config.rng_seed);
  SearchState st(config.n);
  detail::grow_randomly(st, allow_close, target, rng);
  std::vector<Symbol> best = st.sequence();

  std::vector<Symbol> saved;
  for (double temp = config.initial_temperature;
       temp >= config.final_temperature && best.size() < target;
       temp *= config.cooling_factor) {
    if (stop && stop()) break;
    for (int step = 0; step < config.steps_per_temperature; ++step) {
      const std::size_t len = st.depth();
      if (len == 0) {
        detail::grow_randomly(st, allow_close, target, rng);
        continue;
      }
      const std::size_t max_cut = std::min<std::size_t>(
          static_cast<std::size_t>(config.max_backtrack_cut), len);
      const std::size_t cut = 1 + rng.below(max_cut);
      const std::size_t keep = len - cut;
      saved.assign(st.sequence().begin() + static_cast<std::ptrdiff_t>(keep),
                   st.sequence().end());
      st.truncate(keep);
      detail::grow_randomly(st, allow_close, target, rng);
      const double gain = static_cast<double>(st.depth()) - static_cast<double>(len);
      const bool accept = gain >= 0 || rng.unit() < std::exp(gain / temp);
      if (!accept) {
        st.truncate(keep);
        for (Symbol s : saved) st.push(s);
      } else if (st.depth() > best.size()) {
        best = st.sequence();
        if (best.size() == target) break;
      }
    }
  }
  return TransitionSequence{config.n, std::move(best)};
}

enum class CompletionStatus { found, exhausted, impossible };

inline std::string_view to_string(CompletionStatus s) {
  switch (s) {
    case CompletionStatus::found: return "found";
    case CompletionStatus::exhausted: return "absent-exhausted";
    case CompletionStatus::impossible: return "absent-proven-impossible";
  }
  return "?";
}

struct CompletionResult {
  CompletionStatus status = CompletionStatus::impossible;
  std::optional<TransitionSequence> code;
  std::uint64_t nodes = 0;
};

struct CompletionBudget {
  std::optional<std::uint64_t> node_limit;
  std::function<bool()> stop;
};

// Lexicographically first completion of `prefix` into a complete code of the
// given mode. No restricted-growth pruning: the prefix already fixes labels.
inline CompletionResult complete_backtrack(const TransitionSequence& prefix, Mode mode,
                                           const CompletionBudget& budget = {}) {
  if (mode == Mode::both) throw Error("complete_backtrack needs open or cyclic mode");
  const int n = prefix.n;
  const bool allow_close = mode == Mode::cyclic;
  const std::size_t target = target_length(n, mode);
  SearchState st(n);
  CompletionResult result;
  for (Symbol s : prefix.symbols) {
    // A prefix that already repeats a word or breaks the queue has no
    // completion.
    if (!st.can_push(s, false, allow_close)) {
      result.status = CompletionStatus::impossible;
      return result;
    }
    st.push(s);
  }

  const std::size_t base = st.depth();
  std::vector<int> cursor(st.total() + 2, 0);
  result.nodes = 1;
  if (st.depth() == target) {
    result.status = CompletionStatus::found;
    result.code = st.to_sequence();
    return result;
  }
  if (st.depth() > target) return result;
  while (true) {
    if (budget.node_limit && result.nodes >= *budget.node_limit) {
      result.status = CompletionStatus::exhausted;
      return result;
    }
    if ((result.nodes & 0xfff) == 0 && budget.stop && budget.stop()) {
      result.status = CompletionStatus::exhausted;
      return result;
    }
    const std::size_t d = st.depth();
    int p = cursor[d];
    while (p < n && !st.can_push(static_cast<Symbol>(p), false, allow_close)) ++p;
    if (p < n) {
      cursor[d] = p + 1;
      st.push(static_cast<Symbol>(p));
      cursor[st.depth()] = 0;
      ++result.nodes;
      if (st.depth() == target) {
        result.status = CompletionStatus::found;
        result.code = st.to_sequence();
        return result;
      }
      continue;
    }
    if (d == base) break;
    st.pop();
  }
  result.status = CompletionStatus::impossible;
  return result;
}

struct HuntResult {
  std::optional<TransitionSequence> found;
  std::size_t best_partial_length = 0;
  int attempts = 0;
  std::optional<int> winning_attempt;
  std::chrono::duration<double> elapsed{0};
  std::uint64_t rng_seed = 0;
  std::uint64_t completion_nodes = 0;
  bool timed_out = false;
};

// Seed of restart `attempt`.
inline std::uint64_t attempt_seed(std::uint64_t seed, int attempt) {
  SplitMix64 g(seed, static_cast<std::uint64_t>(attempt));
  return g();
}

// Restarts run in index order (or concurrently with jobs > 1). The winner is
// always the lowest successful restart index, so the result does not depend
// on scheduling unless a time limit cuts the run short.
inline HuntResult hunt(const AnnealConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t handoff = config.handoff();
  const std::size_t target = target_length(config.n, config.mode);

  struct Attempt {
    bool done = false;
    std::size_t best_len = 0;
    std::optional<TransitionSequence> code;
    std::uint64_t nodes = 0;
  };
  std::vector<Attempt> attempts(static_cast<std::size_t>(config.restarts));
  std::atomic<int> next{0};
  std::atomic<int> winner{config.restarts};
  std::atomic<bool> timed_out{false};

  auto out_of_time = [&] {
    if (!config.time_limit) return false;
    if (std::chrono::steady_clock::now() - start >= *config.time_limit) {
      timed_out = true;
      return true;
    }
    return false;
  };

  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= config.restarts || i > winner.load()) return;
      auto stop = [&, i] { return i > winner.load() || out_of_time(); };
      AnnealConfig local = config;
      local.rng_seed = attempt_seed(config.rng_seed, i);
      auto partial = anneal_partial(local, stop);
      Attempt a;
      a.best_len = partial.size();
      if (partial.size() == target) {
        a.code = std::move(partial);
      } else if (!stop()) {
        TransitionSequence seed{config.n,
                                {partial.symbols.begin(),
                                 partial.symbols.begin() +
                                     static_cast<std::ptrdiff_t>(std::min(handoff, partial.size()))}};
        auto c = complete_backtrack(seed, config.mode,
                                    {config.completion_budget, stop});
        a.nodes = c.nodes;
        if (c.code) a.code = std::move(c.code);
      }
      a.done = !stop() || a.code.has_value();
      if (a.code) {
        int cur = winner.load();
        while (i < cur && !winner.compare_exchange_weak(cur, i)) {
        }
      }
      attempts[static_cast<std::size_t>(i)] = std::move(a);
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  HuntResult r;
  r.rng_seed = config.rng_seed;
  const int w = winner.load();
  const int last = std::min(w, config.restarts - 1);
  for (int i = 0; i <= last; ++i) {
    const auto& a = attempts[static_cast<std::size_t>(i)];
    if (!a.done) break;
    r.attempts = i + 1;
    r.best_partial_length = std::max(r.best_partial_length, a.best_len);
    r.completion_nodes += a.nodes;
  }
  if (w < config.restarts) {
    r.found = attempts[static_cast<std::size_t>(w)].code;
    r.winning_attempt = w;
    r.best_partial_length = std::max(r.best_partial_length, r.found->size());
  }
  r.timed_out = timed_out.load();
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace bgc

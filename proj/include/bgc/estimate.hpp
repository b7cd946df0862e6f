#pragma once

// Knuth's Monte-Carlo estimate of the size of the enumeration tree.
//
// A probe walks from the root to a leaf choosing uniformly among the current
// node's children. With d_1, d_2, ... the branching factors seen along the
// walk, 1 + d_1 + d_1 d_2 + ... is an unbiased estimate of the node count.

#include <cmath>
#include <cstdint>
#include <optional>

#include "bgc/random.hpp"
#include "bgc/search.hpp"

namespace bgc {

struct EstimateReport {
  int n = 1;
  Mode mode = Mode::both;
  std::uint64_t samples = 0;
  double mean_nodes = 0;
  double stderr_nodes = 0;
  double log2_mean = 0;
  std::uint64_t rng_seed = 0;
};

// One probe; `rng` drives the child choices.
inline double knuth_probe(SearchState& st, std::size_t base, bool allow_close,
                          SplitMix64& rng) {
  std::array<Symbol, kMaxBits> kids;
  double estimate = 1.0;
  double weight = 1.0;
  while (true) {
    const int d = st.children(kids, true, allow_close);
    if (d == 0) break;
    weight *= d;
    estimate += weight;
    st.push(kids[rng.below(static_cast<std::uint64_t>(d))]);
  }
  st.truncate(base);
  return estimate;
}

inline EstimateReport estimate_tree_size(const SearchConfig& config,
                                         std::uint64_t samples,
                                         std::uint64_t rng_seed) {
  if (samples == 0) throw Error("estimate_tree_size needs at least one sample");
  check_bit_count(config.n);
  validate_prefix(config);
  const bool allow_close = wants_cyclic(config.mode);
  SearchState st(config.n);
  if (config.prefix) replay_prefix(st, config.prefix->symbols, true, allow_close);
  const std::size_t base = st.depth();

  // Welford accumulation; each probe has its own stream so the result does
  // not depend on evaluation order.
  double mean = 0, m2 = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    SplitMix64 rng(rng_seed, i);
    const double x = knuth_probe(st, base, allow_close, rng);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  EstimateReport r;
  r.n = config.n;
  r.mode = config.mode;
  r.samples = samples;
  r.mean_nodes = mean;
  const double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
  r.stderr_nodes = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
  r.log2_mean = std::log2(mean);
  r.rng_seed = rng_seed;
  return r;
}

class Truncated : public Error {
 public:
  using Error::Error;
};

// Exact node count of the same tree, by exhaustive enumeration.
inline std::uint64_t exact_tree_size(SearchConfig config) {
  if (config.n > 5 && !config.node_limit && !config.time_limit) {
    throw Error("exact_tree_size beyond n=5 needs an explicit budget");
  }
  config.emit = Emit::count_only;
  const auto report = enumerate_beckett(config);
  if (report.truncated) throw Truncated("exact_tree_size: budget exhausted");
  return report.nodes_visited;
}

}  // namespace bgc

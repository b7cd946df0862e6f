#pragma once

// Sharded enumeration: the tree is split at a fixed prefix depth and the
// shards run on a worker pool. Shards share nothing; reports merge by
// summation. Finished shards can be appended to a checkpoint file so an
// interrupted run resumes by shard.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bgc/search.hpp"

namespace bgc {

struct ShardOptions {
  int depth = 8;
  int jobs = 1;
  bool ordered = true;       // emit codes in lexicographic order
  std::string checkpoint;    // empty = no checkpointing
};

namespace detail {

inline std::string checkpoint_header(const SearchConfig& c, int depth) {
  return "# checkpoint n=" + std::to_string(c.n) + " mode=" +
         std::string(to_string(c.mode)) + " depth=" + std::to_string(depth);
}

struct CheckpointEntry {
  std::string prefix;
  EnumerationReport report;
};

inline std::map<std::size_t, CheckpointEntry> load_checkpoint(const std::string& path,
                                                              const std::string& header) {
  std::map<std::size_t, CheckpointEntry> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  if (!std::getline(in, line)) return done;
  if (line != header) {
    throw Error("checkpoint " + path + " was written for a different run (" + line + ")");
  }
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag, prefix;
    std::size_t index;
    CheckpointEntry e;
    if (!(fields >> tag >> index >> prefix >> e.report.count_cyclic >>
          e.report.count_open_total >> e.report.count_open_strict >>
          e.report.nodes_visited) ||
        tag != "shard") {
      continue;  // a torn final line from an interrupted write
    }
    e.prefix = prefix;
    done[index] = e;
  }
  return done;
}

}  // namespace detail

inline EnumerationReport enumerate_sharded(const SearchConfig& base,
                                           const ShardOptions& options,
                                           const CodeSink& sink = {}) {
  check_bit_count(base.n);
  if (base.prefix) throw Error("sharded enumeration starts from the root");
  const auto start = std::chrono::steady_clock::now();
  auto plan = split_prefixes(base.n, options.depth, base.mode);
  const std::size_t count = plan.shards.size();

  EnumerationReport total;
  total.n = base.n;
  total.mode = base.mode;
  total.nodes_visited = plan.interior_nodes;

  const std::string header = detail::checkpoint_header(base, options.depth);
  std::map<std::size_t, detail::CheckpointEntry> done;
  std::ofstream ckpt;
  if (!options.checkpoint.empty()) {
    done = detail::load_checkpoint(options.checkpoint, header);
    std::ifstream probe(options.checkpoint);
    const bool fresh = !probe || probe.peek() == std::ifstream::traits_type::eof();
    ckpt.open(options.checkpoint, std::ios::app);
    if (!ckpt) throw Error("cannot write checkpoint " + options.checkpoint);
    if (fresh) ckpt << header << '\n' << std::flush;
  }

  std::mutex mu;
  std::vector<std::vector<Emission>> buffers(count);
  std::vector<bool> finished(count, false);
  std::size_t flush_next = 0;
  std::atomic<std::size_t> next{0};

  auto flush_ready = [&] {  // caller holds mu
    while (flush_next < count && finished[flush_next]) {
      if (sink)
        for (const auto& e : buffers[flush_next]) sink(e);
      buffers[flush_next].clear();
      buffers[flush_next].shrink_to_fit();
      ++flush_next;
    }
  };

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      SearchConfig cfg = base;
      cfg.prefix = plan.shards[i].prefix;
      const std::string prefix_text = format_sequence(*cfg.prefix);
      if (auto it = done.find(i); it != done.end() && it->second.prefix == prefix_text) {
        std::lock_guard lock(mu);
        total += it->second.report;
        finished[i] = true;
        if (options.ordered) flush_ready();
        continue;
      }
      if (base.time_limit) {
        // The time limit covers the whole run; the node limit is per shard.
        cfg.time_limit = *base.time_limit - (std::chrono::steady_clock::now() - start);
      }
      if ((base.cancel && base.cancel->load()) ||
          (cfg.time_limit && cfg.time_limit->count() <= 0)) {
        std::lock_guard lock(mu);
        total.truncated = true;
        finished[i] = true;
        if (options.ordered) flush_ready();
        continue;
      }
      std::vector<Emission> local;
      CodeSink shard_sink;
      if (sink) {
        if (options.ordered) {
          shard_sink = [&](const Emission& e) { local.push_back(e); };
        } else {
          shard_sink = [&](const Emission& e) {
            std::lock_guard lock(mu);
            sink(e);
          };
        }
      }
      auto r = enumerate_beckett(cfg, shard_sink);
      std::lock_guard lock(mu);
      total += r;
      if (!r.truncated && ckpt.is_open()) {
        ckpt << "shard " << i << ' ' << prefix_text << ' ' << r.count_cyclic << ' '
             << r.count_open_total << ' ' << r.count_open_strict << ' '
             << r.nodes_visited << '\n'
             << std::flush;
      }
      buffers[i] = std::move(local);
      finished[i] = true;
      if (options.ordered) flush_ready();
    }
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  total.elapsed = std::chrono::steady_clock::now() - start;
  return total;
}

}  // namespace bgc

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "bgc/bgc.hpp"

namespace bgc::cli {
namespace {

using nlohmann::json;

std::string join(const std::vector<Symbol>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

int default_jobs() {
  if (const char* env = std::getenv("BGC_JOBS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (...) {
    }
  }
  return 1;
}

std::uint64_t auto_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

json witness_json(const IsomorphismWitness& w) {
  json j;
  j["rho"] = w.rho;
  j["reversed"] = w.reversed;
  j["rotation"] = w.rotation ? json(*w.rotation) : json(nullptr);
  j["added_word"] = w.added_word ? json(*w.added_word) : json(nullptr);
  return j;
}

std::string witness_text(const IsomorphismWitness& w) {
  std::ostringstream s;
  s << "rho=" << join(w.rho) << " reversed=" << (w.reversed ? "true" : "false")
    << " rotation=" << (w.rotation ? std::to_string(*w.rotation) : "-")
    << " added_word=" << (w.added_word ? std::to_string(*w.added_word) : "-");
  return s.str();
}

json report_json(const EnumerationReport& r) {
  return {{"n", r.n},
          {"mode", to_string(r.mode)},
          {"count_cyclic", r.count_cyclic},
          {"count_open_total", r.count_open_total},
          {"count_open_strict", r.count_open_strict},
          {"nodes_visited", r.nodes_visited},
          {"elapsed_seconds", r.elapsed.count()},
          {"truncated", r.truncated}};
}

// Collects inputs from positional arguments (needs -n) or the input stream.
std::vector<SequenceRecord> gather(const std::vector<std::string>& positional, int n,
                                   std::istream& in) {
  if (!positional.empty()) {
    if (n == 0) throw CLI::ValidationError("-n", "required with positional sequences");
    std::vector<SequenceRecord> out;
    for (const auto& p : positional) out.push_back({Mode::open, false, parse_sequence(p, n), {}, 0});
    return out;
  }
  return read_sequences(in, n);
}

struct Verify {
  int n = 0;
  std::string mode;
  bool trace = false;
  bool json_out = false;
  std::vector<std::string> seqs;

  int run(std::istream& in, std::ostream& out) const {
    const auto records = gather(seqs, n, in);
    bool all_ok = true;
    json docs = json::array();
    for (const auto& r : records) {
      const auto cls = classify_beckett(r.seq);
      std::optional<Mode> expected;
      if (!mode.empty()) expected = parse_mode(mode);
      else if (r.mode_declared) expected = r.mode;
      const bool ok = cls.complete() && (!expected || matches_mode(cls.kind, *expected));
      all_ok = all_ok && ok;
      std::vector<QueueState> states;
      if (trace && cls.kind != BeckettClass::not_beckett) {
        try {
          states = queue_trace(r.seq);
        } catch (const BeckettViolation&) {
        }
      }
      const auto words = apply_transitions(r.seq);
      if (json_out) {
        json j{{"sequence", format_sequence(r.seq)},
               {"n", r.seq.n},
               {"classification", to_string(cls.kind)},
               {"ok", ok}};
        if (cls.violation) {
          j["violation"] = {{"step", cls.violation->step},
                            {"position", cls.violation->position},
                            {"front", cls.violation->front ? json(*cls.violation->front)
                                                           : json(nullptr)}};
        }
        if (cls.kind == BeckettClass::not_gray) j["reason"] = cls.gray.reason;
        if (expected) j["expected_mode"] = to_string(*expected);
        if (!states.empty()) {
          json t = json::array();
          for (std::size_t i = 0; i < states.size(); ++i)
            t.push_back({{"word", BitWord{words.words[i], r.seq.n}.to_string()},
                         {"queue", states[i].entries}});
          j["trace"] = t;
        }
        docs.push_back(j);
        continue;
      }
      out << to_string(cls.kind) << ' ' << format_sequence(r.seq) << '\n';
      if (cls.violation) out << "  " << cls.violation->what() << '\n';
      if (cls.kind == BeckettClass::not_gray) out << "  " << cls.gray.reason << '\n';
      if (cls.complete() && expected && !matches_mode(cls.kind, *expected)) {
        out << "  expected mode " << to_string(*expected) << '\n';
      }
      for (std::size_t i = 0; i < states.size(); ++i) {
        out << "  " << BitWord{words.words[i], r.seq.n}.to_string() << "  "
            << (states[i].entries.empty() ? "-" : join(states[i].entries)) << '\n';
      }
    }
    if (json_out) out << docs.dump(2) << '\n';
    return all_ok ? kOk : kNegative;
  }
};

struct Canonicalize {
  int n = 0;
  bool witness = false;
  bool json_out = false;
  std::vector<std::string> seqs;

  int run(std::istream& in, std::ostream& out, std::ostream& err) const {
    const auto records = gather(seqs, n, in);
    int code = kOk;
    json docs = json::array();
    std::string last_header;
    for (const auto& r : records) {
      const auto cls = classify_beckett(r.seq);
      if (!cls.complete()) {
        err << "not a complete Beckett-Gray code (" << to_string(cls.kind)
            << "): " << format_sequence(r.seq) << '\n';
        code = kNegative;
        continue;
      }
      const auto form = canonical_form(r.seq);
      if (json_out) {
        json j{{"input", format_sequence(r.seq)},
               {"canonical", format_sequence(form.canonical)},
               {"n", r.seq.n}};
        if (witness) j["witness"] = witness_json(form.witness);
        docs.push_back(j);
        continue;
      }
      const auto header = format_header(
          r.seq.n, cls.kind == BeckettClass::cyclic_beckett ? Mode::cyclic : Mode::open);
      if (header != last_header) {
        out << header << '\n';
        last_header = header;
      }
      out << format_sequence(form.canonical) << '\n';
      if (witness) out << "# witness " << witness_text(form.witness) << '\n';
    }
    if (json_out) out << docs.dump(2) << '\n';
    return code;
  }
};

struct Enumerate {
  int n = 0;
  std::string mode = "both";
  std::string prefix;
  int jobs = default_jobs();
  int depth = -1;
  std::string out_path;
  std::string checkpoint;
  std::uint64_t node_limit = 0;
  double time_limit = 0;
  bool count_only = false;
  bool all_codes = false;
  bool include_closable = false;
  bool unordered = false;
  bool json_out = false;

  int run(std::ostream& out, const std::atomic<bool>* cancel) const {
    SearchConfig cfg;
    cfg.n = n;
    cfg.mode = parse_mode(mode);
    if (!prefix.empty()) cfg.prefix = parse_sequence(prefix, n);
    if (node_limit) cfg.node_limit = node_limit;
    if (time_limit > 0) cfg.time_limit = std::chrono::duration<double>(time_limit);
    cfg.emit = count_only ? Emit::count_only
                          : (all_codes ? Emit::all_codes : Emit::canonical_codes);
    cfg.cancel = cancel;

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::app);
      if (!file) throw Error("cannot open " + out_path);
    }
    std::ostream& dst = out_path.empty() ? out : file;

    json codes = json::array();
    std::string last_header;
    CodeSink sink = [&](const Emission& e) {
      if (e.kind == CodeKind::open_closable && !include_closable) return;
      if (json_out) {
        codes.push_back({{"code", format_sequence(e.code)}, {"kind", to_string(e.kind)}});
        return;
      }
      const auto header =
          format_header(n, e.kind == CodeKind::cyclic ? Mode::cyclic : Mode::open);
      if (header != last_header) {
        dst << header << '\n';
        last_header = header;
      }
      dst << format_sequence(e.code) << '\n';
    };

    EnumerationReport report;
    const bool sharded = depth > 0 || jobs > 1 || !checkpoint.empty();
    if (sharded) {
      if (cfg.prefix) throw CLI::ValidationError("--prefix", "cannot be combined with sharding");
      ShardOptions opts;
      opts.depth = depth > 0 ? depth : std::min<int>(8, static_cast<int>(word_count(n)) - 1);
      opts.jobs = jobs;
      opts.ordered = !unordered;
      opts.checkpoint = checkpoint;
      report = enumerate_sharded(cfg, opts, sink);
    } else {
      report = enumerate_beckett(cfg, sink);
    }

    if (json_out) {
      json doc = report_json(report);
      if (!count_only) doc["codes"] = codes;
      dst << doc.dump(2) << '\n';
    } else {
      const auto rj = report_json(report);
      dst << "# report\n";
      for (const char* k : {"n", "mode", "count_cyclic", "count_open_total", "count_open_strict",
                            "nodes_visited", "elapsed_seconds", "truncated"}) {
        dst << "# " << k << '=';
        const auto& v = rj[k];
        if (v.is_string()) dst << v.get<std::string>();
        else dst << v.dump();
        dst << '\n';
      }
    }
    dst.flush();
    return report.truncated ? kTruncated : kOk;
  }
};

struct Estimate {
  int n = 0;
  std::string mode = "cyclic";
  std::uint64_t samples = 100000;
  std::optional<std::uint64_t> seed;
  std::string prefix;
  bool exact = false;
  bool json_out = false;

  int run(std::ostream& out) const {
    SearchConfig cfg;
    cfg.n = n;
    cfg.mode = parse_mode(mode);
    if (!prefix.empty()) cfg.prefix = parse_sequence(prefix, n);
    const std::uint64_t s = seed ? *seed : auto_seed();
    const auto r = estimate_tree_size(cfg, samples, s);
    json j{{"n", r.n},
           {"mode", to_string(r.mode)},
           {"samples", r.samples},
           {"mean_nodes", r.mean_nodes},
           {"stderr", r.stderr_nodes},
           {"log2_mean", r.log2_mean},
           {"rng_seed", r.rng_seed}};
    if (exact) j["exact_nodes"] = exact_tree_size(cfg);
    if (json_out) {
      out << j.dump(2) << '\n';
      return kOk;
    }
    out << std::setprecision(10);
    out << "n=" << r.n << "\nmode=" << to_string(r.mode) << "\nsamples=" << r.samples
        << "\nmean_nodes=" << r.mean_nodes << "\nstderr=" << r.stderr_nodes
        << "\nlog2_mean=" << r.log2_mean << "\nrng_seed=" << r.rng_seed << '\n';
    if (exact) out << "exact_nodes=" << j["exact_nodes"].get<std::uint64_t>() << '\n';
    return kOk;
  }
};

struct Hunt {
  AnnealConfig cfg;
  std::string mode = "cyclic";
  std::optional<std::uint64_t> seed;
  double time_limit = 0;
  std::string out_path;
  bool json_out = false;

  int run(std::ostream& out) {
    cfg.mode = parse_mode(mode);
    cfg.rng_seed = seed ? *seed : auto_seed();
    if (time_limit > 0) cfg.time_limit = std::chrono::duration<double>(time_limit);
    const auto r = hunt(cfg);
    if (r.found && !out_path.empty()) {
      std::ofstream f(out_path, std::ios::app);
      if (!f) throw Error("cannot open " + out_path);
      f << "# hunt rng_seed=" << r.rng_seed << " attempt=" << *r.winning_attempt << '\n'
        << format_header(cfg.n, cfg.mode) << '\n'
        << format_sequence(*r.found) << '\n';
    }
    json j{{"n", cfg.n},
           {"mode", to_string(cfg.mode)},
           {"found", r.found.has_value()},
           {"best_partial_length", r.best_partial_length},
           {"attempts", r.attempts},
           {"elapsed_seconds", r.elapsed.count()},
           {"rng_seed", r.rng_seed},
           {"timed_out", r.timed_out}};
    if (r.found) {
      j["code"] = format_sequence(*r.found);
      j["winning_attempt"] = *r.winning_attempt;
    }
    if (json_out) {
      out << j.dump(2) << '\n';
    } else {
      for (auto& [k, v] : j.items()) {
        out << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
    }
    if (r.found) return kOk;
    return r.timed_out ? kTruncated : kNegative;
  }
};

struct Brgc {
  int n = 0;
  bool trace = false;
  bool json_out = false;

  int run(std::ostream& out) const {
    const auto path = brgc(n);
    const auto verdict = is_two_stack_realizable(path);
    std::vector<TwoStackState> states;
    if (trace && verdict) states = two_stack_trace(path);
    if (json_out) {
      json words = json::array();
      for (std::size_t i = 0; i < path.size(); ++i) {
        json w{{"word", BitWord{path.words[i], n}.to_string()}};
        if (!states.empty()) {
          w["even_stack"] = states[i].even_stack;
          w["odd_stack"] = states[i].odd_stack;
        }
        words.push_back(w);
      }
      out << json{{"n", n}, {"two_stack_realizable", verdict.realizable}, {"words", words}}
                 .dump(2)
          << '\n';
      return verdict ? kOk : kNegative;
    }
    auto stack_text = [](const std::vector<Symbol>& s) {
      return s.empty() ? std::string("-") : join(s, "");
    };
    if (trace) out << std::left << std::setw(std::max(n, 4) + 2) << "code" << std::setw(12)
                   << "even" << "odd" << '\n';
    for (std::size_t i = 0; i < path.size(); ++i) {
      const auto w = BitWord{path.words[i], n}.to_string();
      if (!trace) {
        out << w << '\n';
        continue;
      }
      out << std::left << std::setw(std::max(n, 4) + 2) << w << std::setw(12)
          << stack_text(states[i].even_stack) << stack_text(states[i].odd_stack) << '\n';
    }
    if (trace) out << "# two-stack-realizable=" << (verdict ? "yes" : "no") << '\n';
    return verdict ? kOk : kNegative;
  }
};

struct SelfCheck {
  std::string fixtures;
  bool json_out = false;

  int run(std::ostream& out) const {
    const auto set = fixtures.empty() ? published_fixtures() : load_fixtures(fixtures);
    const auto report = self_check(set);
    json docs = json::array();
    for (const auto& e : report.entries) {
      const auto& f = e.fixture;
      if (json_out) {
        json j{{"label", f.label},
               {"n", f.n},
               {"mode", to_string(f.mode)},
               {"length", f.seq.size()},
               {"classification", to_string(e.classification.kind)},
               {"pass", e.class_ok},
               {"canonical", e.canonical},
               {"relabel_fixed", e.relabel_fixed}};
        if (e.class_ok && !e.canonical) j["canonical_form"] = format_sequence(e.canonical_form);
        docs.push_back(j);
        continue;
      }
      out << (e.class_ok ? "PASS " : "FAIL ") << f.label << " n=" << f.n
          << " transitions=" << f.seq.size() << ' ' << to_string(e.classification.kind)
          << " canonical=" << (e.canonical ? "yes" : "no") << '\n';
      if (e.class_ok && !e.canonical) {
        out << "  finding: relabel-fixed=" << (e.relabel_fixed ? "yes" : "no")
            << " least representative is " << format_sequence(e.canonical_form) << '\n';
      }
    }
    if (json_out) out << docs.dump(2) << '\n';
    return report.all_classified() ? kOk : kNegative;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const std::atomic<bool>* cancel) {
  CLI::App app{"Beckett-Gray code toolkit", "bgc"};
  app.require_subcommand(1);

  Verify verify;
  auto* v = app.add_subcommand("verify", "Classify transition sequences");
  v->add_option("-n", verify.n, "Bit count")->check(CLI::Range(1, kMaxBits));
  v->add_option("--mode", verify.mode, "Expected mode")->check(CLI::IsMember({"open", "cyclic", "both"}));
  v->add_flag("--trace", verify.trace, "Print the queue trace");
  v->add_flag("--json", verify.json_out, "JSON output");
  v->add_option("sequences", verify.seqs, "Sequences (default: read standard input)");

  Canonicalize canon;
  auto* c = app.add_subcommand("canonicalize", "Print least representatives");
  c->add_option("-n", canon.n, "Bit count")->check(CLI::Range(1, kMaxBits));
  c->add_flag("--witness", canon.witness, "Print the mapping onto the representative");
  c->add_flag("--json", canon.json_out, "JSON output");
  c->add_option("sequences", canon.seqs, "Sequences (default: read standard input)");

  Enumerate en;
  auto* e = app.add_subcommand("enumerate", "Exhaustive enumeration");
  e->add_option("-n", en.n, "Bit count")->required()->check(CLI::Range(1, kMaxBits));
  e->add_option("--mode", en.mode, "cyclic, open or both")->check(CLI::IsMember({"open", "cyclic", "both"}));
  e->add_option("--prefix", en.prefix, "Only the subtree below this prefix");
  e->add_option("--jobs", en.jobs, "Worker threads (default $BGC_JOBS or 1)")->check(CLI::PositiveNumber);
  e->add_option("--depth", en.depth, "Shard prefix depth")->check(CLI::Range(1, 64));
  e->add_option("--out", en.out_path, "Append output to this file");
  e->add_option("--checkpoint", en.checkpoint, "Shard checkpoint file (resumable)");
  e->add_option("--node-limit", en.node_limit, "Node budget (per shard when sharded)");
  e->add_option("--time-limit", en.time_limit, "Wall-clock budget in seconds");
  e->add_flag("--count-only", en.count_only, "Print only the report");
  e->add_flag("--all", en.all_codes, "Emit both orientations of every code");
  e->add_flag("--include-closable", en.include_closable, "Also print open codes that close into a cycle");
  e->add_flag("--unordered", en.unordered, "Emit codes as shards find them");
  e->add_flag("--json", en.json_out, "JSON output");

  Estimate est;
  auto* es = app.add_subcommand("estimate", "Monte-Carlo search tree size estimate");
  es->add_option("-n", est.n, "Bit count")->required()->check(CLI::Range(1, kMaxBits));
  es->add_option("--mode", est.mode, "cyclic, open or both")->check(CLI::IsMember({"open", "cyclic", "both"}));
  es->add_option("--samples", est.samples, "Number of probes")->check(CLI::PositiveNumber);
  es->add_option("--seed", est.seed, "RNG seed (printed when chosen automatically)");
  es->add_option("--prefix", est.prefix, "Estimate the subtree below this prefix");
  es->add_flag("--exact", est.exact, "Also count the tree exactly");
  es->add_flag("--json", est.json_out, "JSON output");

  Hunt hu;
  auto* h = app.add_subcommand("hunt", "Simulated annealing plus backtracking completion");
  h->add_option("-n", hu.cfg.n, "Bit count")->required()->check(CLI::Range(1, kMaxBits));
  h->add_option("--mode", hu.mode, "cyclic or open")->check(CLI::IsMember({"open", "cyclic"}));
  h->add_option("--seed", hu.seed, "RNG seed (printed when chosen automatically)");
  h->add_option("--restarts", hu.cfg.restarts, "Annealing restarts")->check(CLI::PositiveNumber);
  h->add_option("--budget", hu.cfg.completion_budget, "Node budget per completion attempt");
  h->add_option("--time-limit", hu.time_limit, "Wall-clock budget in seconds");
  h->add_option("--jobs", hu.cfg.jobs, "Concurrent restarts")->check(CLI::PositiveNumber);
  h->add_option("--temperature", hu.cfg.initial_temperature, "Initial temperature");
  h->add_option("--cooling", hu.cfg.cooling_factor, "Geometric cooling factor");
  h->add_option("--steps", hu.cfg.steps_per_temperature, "Moves per temperature");
  h->add_option("--final-temperature", hu.cfg.final_temperature, "Stop temperature");
  h->add_option("--cut", hu.cfg.max_backtrack_cut, "Maximum suffix cut per move");
  h->add_option("--handoff", hu.cfg.seed_handoff_length, "Prefix length handed to completion");
  h->add_option("--out", hu.out_path, "Append found codes to this file");
  h->add_flag("--json", hu.json_out, "JSON output");
  hu.cfg.jobs = default_jobs();

  Brgc br;
  auto* b = app.add_subcommand("brgc", "Binary reflected Gray code and its two-stack states");
  b->add_option("-n", br.n, "Bit count")->required()->check(CLI::Range(1, kMaxBits));
  b->add_flag("--trace", br.trace, "Print even/odd stack states");
  b->add_flag("--json", br.json_out, "JSON output");

  SelfCheck sc;
  auto* s = app.add_subcommand("selfcheck", "Verify the published codes");
  s->add_option("--fixtures", sc.fixtures, "Fixture file (default: built-in copy)");
  s->add_flag("--json", sc.json_out, "JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (v->parsed()) return verify.run(in, out);
    if (c->parsed()) return canon.run(in, out, err);
    if (e->parsed()) return en.run(out, cancel);
    if (es->parsed()) return est.run(out);
    if (h->parsed()) return hu.run(out);
    if (b->parsed()) return br.run(out);
    if (s->parsed()) return sc.run(out);
  } catch (const CLI::Error& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kUsage;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace bgc::cli

#pragma once

// Queue semantics of Beckett-Gray codes: the set bits of the current word form
// a FIFO queue; a 1->0 flip may only clear the bit that has been set longest.

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "bgc/core.hpp"

namespace bgc {

struct QueueState {
  std::vector<Symbol> entries;  // front (oldest) first

  friend bool operator==(const QueueState&, const QueueState&) = default;
};

class BeckettViolation : public Error {
 public:
  BeckettViolation(std::size_t step, Symbol position, std::optional<Symbol> front)
      : Error(describe(step, position, front)),
        step(step),
        position(position),
        front(front) {}

  std::size_t step;              // 0-based transition index
  Symbol position;               // bit that was cleared
  std::optional<Symbol> front;   // actual queue front, if any

 private:
  static std::string describe(std::size_t step, Symbol position,
                              std::optional<Symbol> front) {
    std::string s = "beckett violation at step " + std::to_string(step) +
                    ": clearing bit " + std::to_string(position);
    s += front ? " but queue front is " + std::to_string(*front)
               : std::string(" but queue is empty");
    return s;
  }
};

namespace detail {

// Returns the index of the first violating transition, or seq.size().
inline std::size_t run_queue(const TransitionSequence& seq, Word start,
                             std::deque<Symbol>& q,
                             std::vector<QueueState>* trace) {
  Word w = start;
  if (trace) trace->push_back({{q.begin(), q.end()}});
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Symbol p = seq[i];
    if ((w >> p) & 1u) {
      if (q.empty() || q.front() != p) return i;
      q.pop_front();
    } else {
      q.push_back(p);
    }
    w ^= Word{1} << p;
    if (trace) trace->push_back({{q.begin(), q.end()}});
  }
  return seq.size();
}

}  // namespace detail

inline std::vector<QueueState> queue_trace(const TransitionSequence& seq) {
  std::vector<QueueState> trace;
  trace.reserve(seq.size() + 1);
  std::deque<Symbol> q;
  const std::size_t bad = detail::run_queue(seq, 0, q, &trace);
  if (bad != seq.size()) {
    throw BeckettViolation(bad, seq[bad],
                           q.empty() ? std::nullopt : std::optional{q.front()});
  }
  return trace;
}

// True iff the sequence obeys the queue discipline from the empty queue.
// Ignores word repetition.
inline bool obeys_queue(const TransitionSequence& seq) {
  std::deque<Symbol> q;
  return detail::run_queue(seq, 0, q, nullptr) == seq.size();
}

enum class BeckettClass {
  open_beckett,
  cyclic_beckett,
  incomplete_beckett,
  not_beckett,
  not_gray
};

inline std::string_view to_string(BeckettClass c) {
  switch (c) {
    case BeckettClass::open_beckett: return "open-beckett";
    case BeckettClass::cyclic_beckett: return "cyclic-beckett";
    case BeckettClass::incomplete_beckett: return "incomplete-beckett";
    case BeckettClass::not_beckett: return "not-beckett";
    case BeckettClass::not_gray: return "not-gray";
  }
  return "?";
}

struct BeckettClassification {
  BeckettClass kind = BeckettClass::not_gray;
  GrayClassification gray;
  std::optional<BeckettViolation> violation;

  bool complete() const {
    return kind == BeckettClass::open_beckett ||
           kind == BeckettClass::cyclic_beckett;
  }
};

inline BeckettClassification classify_beckett(const TransitionSequence& seq) {
  BeckettClassification out;
  out.gray = classify_gray(seq);
  if (out.gray.kind == GrayClass::invalid) {
    out.kind = BeckettClass::not_gray;
    return out;
  }
  try {
    const auto trace = queue_trace(seq);
    // A cyclic code ends at the all-zero word, so the queue is empty there.
    switch (out.gray.kind) {
      case GrayClass::open_gray: out.kind = BeckettClass::open_beckett; break;
      case GrayClass::cyclic_gray:
        out.kind = trace.back().entries.empty() ? BeckettClass::cyclic_beckett
                                                : BeckettClass::not_beckett;
        break;
      default: out.kind = BeckettClass::incomplete_beckett; break;
    }
  } catch (const BeckettViolation& v) {
    out.kind = BeckettClass::not_beckett;
    out.violation = v;
  }
  return out;
}

inline bool matches_mode(BeckettClass c, Mode mode) {
  switch (mode) {
    case Mode::open: return c == BeckettClass::open_beckett;
    case Mode::cyclic: return c == BeckettClass::cyclic_beckett;
    case Mode::both:
      return c == BeckettClass::open_beckett || c == BeckettClass::cyclic_beckett;
  }
  return false;
}

// Queue realizability of a word path that may start at any word, with the
// initially-set bits already queued in some order. The only order that can
// work is the order in which those bits are first cleared, with never-cleared
// bits behind them; the path is realizable iff replaying with that order
// succeeds. Returns the initial queue on success.
inline std::optional<QueueState> realizing_initial_queue(const WordPath& path) {
  const TransitionSequence seq = transitions_of(path);
  const Word start = path.words.front();
  std::vector<Symbol> order;
  std::vector<bool> placed(static_cast<std::size_t>(path.n), false);
  Word w = start;
  for (Symbol p : seq.symbols) {
    if (((w >> p) & 1u) && ((start >> p) & 1u) && !placed[p]) {
      order.push_back(p);
      placed[p] = true;
    }
    w ^= Word{1} << p;
  }
  for (int p = 0; p < path.n; ++p) {
    if (((start >> p) & 1u) && !placed[static_cast<std::size_t>(p)])
      order.push_back(static_cast<Symbol>(p));
  }
  std::deque<Symbol> q(order.begin(), order.end());
  if (detail::run_queue(seq, start, q, nullptr) != seq.size()) return std::nullopt;
  return QueueState{order};
}

}  // namespace bgc

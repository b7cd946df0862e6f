#pragma once

// The binary reflected Gray code as successive states of two stacks: one
// holding the set even bit positions, one holding the set odd positions.

#include <optional>
#include <string>
#include <vector>

#include "bgc/core.hpp"

namespace bgc {

struct TwoStackState {
  std::vector<Symbol> even_stack;  // bottom first, top last
  std::vector<Symbol> odd_stack;

  std::vector<Symbol>& stack_for(Symbol p) { return p % 2 == 0 ? even_stack : odd_stack; }
  const std::vector<Symbol>& stack_for(Symbol p) const {
    return p % 2 == 0 ? even_stack : odd_stack;
  }

  friend bool operator==(const TwoStackState&, const TwoStackState&) = default;
};

class PopNotTop : public Error {
 public:
  PopNotTop(std::size_t step, Symbol position, std::optional<Symbol> top)
      : Error("step " + std::to_string(step) + ": clearing bit " +
              std::to_string(position) + " but its stack top is " +
              (top ? std::to_string(*top) : std::string("empty"))),
        step(step),
        position(position),
        top(top) {}
  std::size_t step;
  Symbol position;
  std::optional<Symbol> top;
};

inline WordPath brgc(int n) {
  check_bit_count(n);
  WordPath p{n, {}};
  const std::size_t total = word_count(n);
  p.words.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    p.words.push_back(static_cast<Word>(i ^ (i >> 1)));
  }
  return p;
}

// Applies one flip to the stacks; false if it is a pop of a non-top element.
inline bool apply_stack_flip(TwoStackState& s, Word before, Symbol p) {
  auto& stack = s.stack_for(p);
  if ((before >> p) & 1u) {
    if (stack.empty() || stack.back() != p) return false;
    stack.pop_back();
  } else {
    stack.push_back(p);
  }
  return true;
}

inline std::vector<TwoStackState> two_stack_trace(const WordPath& path) {
  if (path.words.empty()) throw Error("empty word path");
  if (path.words.front() != 0) throw Error("two-stack trace must start at the all-zero word");
  const auto seq = transitions_of(path);
  std::vector<TwoStackState> trace;
  trace.reserve(path.size());
  TwoStackState s;
  trace.push_back(s);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Symbol p = seq[i];
    if (!apply_stack_flip(s, path.words[i], p)) {
      const auto& st = s.stack_for(p);
      throw PopNotTop(i, p, st.empty() ? std::nullopt : std::optional{st.back()});
    }
    trace.push_back(s);
  }
  return trace;
}

struct RealizabilityVerdict {
  bool realizable = false;
  std::optional<PopNotTop> failure;
  explicit operator bool() const { return realizable; }
};

inline RealizabilityVerdict is_two_stack_realizable(const WordPath& path) {
  try {
    two_stack_trace(path);
    return {true, std::nullopt};
  } catch (const PopNotTop& e) {
    return {false, e};
  } catch (const NotGrayStep&) {
    return {false, std::nullopt};
  }
}

// Time reversal: starting from the final stacks of the forward trace, every
// backward step must itself be a legal push or pop.
inline RealizabilityVerdict reversed_two_stack_realizable(const WordPath& path) {
  auto forward = two_stack_trace(path);
  const auto seq = transitions_of(path);
  TwoStackState s = forward.back();
  for (std::size_t k = seq.size(); k-- > 0;) {
    const Symbol p = seq[k];
    if (!apply_stack_flip(s, path.words[k + 1], p)) {
      const auto& st = s.stack_for(p);
      return {false, PopNotTop(seq.size() - 1 - k, p,
                               st.empty() ? std::nullopt : std::optional{st.back()})};
    }
    if (s != forward[k]) return {false, std::nullopt};
  }
  return {true, std::nullopt};
}

}  // namespace bgc

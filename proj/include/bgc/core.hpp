#pragma once

// Word / transition data model shared by every other header.
//
// Bit positions are numbered from the right starting at zero, and every
// transition sequence is anchored at the all-zero word.

#include <algorithm>
#include <bit>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bgc {

inline constexpr int kMaxBits = 24;

using Word = std::uint32_t;
using Symbol = std::uint8_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedSequence : public Error {
 public:
  using Error::Error;
};

class NotGrayStep : public Error {
 public:
  NotGrayStep(std::size_t index, Word from, Word to)
      : Error("not a gray step at index " + std::to_string(index)),
        index(index),
        from(from),
        to(to) {}
  std::size_t index;
  Word from;
  Word to;
};

inline void check_bit_count(int n) {
  if (n < 1 || n > kMaxBits) {
    throw MalformedSequence("bit count " + std::to_string(n) + " outside [1, " +
                            std::to_string(kMaxBits) + "]");
  }
}

constexpr std::size_t word_count(int n) { return std::size_t{1} << n; }

struct BitWord {
  Word value = 0;
  int n = 1;

  BitWord() = default;
  BitWord(Word value, int n) : value(value), n(n) {
    check_bit_count(n);
    if (value >= word_count(n)) {
      throw MalformedSequence("word " + std::to_string(value) +
                              " does not fit in " + std::to_string(n) + " bits");
    }
  }

  bool bit(int pos) const { return (value >> pos) & 1u; }

  // Most significant bit first, e.g. "011" for value 3 at n = 3.
  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
      if (bit(i)) s[static_cast<std::size_t>(n - 1 - i)] = '1';
    }
    return s;
  }

  friend bool operator==(const BitWord&, const BitWord&) = default;
};

struct TransitionSequence {
  int n = 1;
  std::vector<Symbol> symbols;

  TransitionSequence() = default;
  TransitionSequence(int n, std::vector<Symbol> symbols)
      : n(n), symbols(std::move(symbols)) {
    check_bit_count(n);
    for (std::size_t i = 0; i < this->symbols.size(); ++i) {
      if (this->symbols[i] >= n) {
        throw MalformedSequence("symbol " + std::to_string(this->symbols[i]) +
                                " at index " + std::to_string(i) +
                                " out of range for n=" + std::to_string(n));
      }
    }
  }

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  Symbol operator[](std::size_t i) const { return symbols[i]; }

  friend bool operator==(const TransitionSequence&,
                         const TransitionSequence&) = default;
  // Lexicographic on symbol values; n is compared first only to make the
  // ordering total.
  friend auto operator<=>(const TransitionSequence& a,
                          const TransitionSequence& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    return a.symbols <=> b.symbols;
  }
};

struct WordPath {
  int n = 1;
  std::vector<Word> words;

  std::size_t size() const { return words.size(); }
  friend bool operator==(const WordPath&, const WordPath&) = default;
};

enum class Mode { open, cyclic, both };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::open: return "open";
    case Mode::cyclic: return "cyclic";
    case Mode::both: return "both";
  }
  return "?";
}

inline Mode parse_mode(std::string_view s) {
  if (s == "open") return Mode::open;
  if (s == "cyclic") return Mode::cyclic;
  if (s == "both") return Mode::both;
  throw Error("unknown mode '" + std::string(s) + "'");
}

inline WordPath apply_transitions(BitWord start, const TransitionSequence& seq) {
  if (seq.n != start.n) {
    throw MalformedSequence("start word has n=" + std::to_string(start.n) +
                            " but sequence has n=" + std::to_string(seq.n));
  }
  WordPath path{seq.n, {}};
  path.words.reserve(seq.size() + 1);
  Word w = start.value;
  path.words.push_back(w);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] >= seq.n) {
      throw MalformedSequence("symbol out of range at index " +
                              std::to_string(i));
    }
    w ^= Word{1} << seq[i];
    path.words.push_back(w);
  }
  return path;
}

inline WordPath apply_transitions(const TransitionSequence& seq) {
  return apply_transitions(BitWord{0, seq.n}, seq);
}

inline TransitionSequence transitions_of(const WordPath& path) {
  if (path.words.empty()) throw MalformedSequence("empty word path");
  check_bit_count(path.n);
  std::vector<Symbol> out;
  out.reserve(path.size() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Word diff = path.words[i] ^ path.words[i + 1];
    if (diff == 0 || (diff & (diff - 1)) != 0 || diff >= word_count(path.n)) {
      throw NotGrayStep(i, path.words[i], path.words[i + 1]);
    }
    out.push_back(static_cast<Symbol>(std::countr_zero(diff)));
  }
  return TransitionSequence{path.n, std::move(out)};
}

enum class GrayClass { open_gray, cyclic_gray, incomplete, invalid };

inline std::string_view to_string(GrayClass c) {
  switch (c) {
    case GrayClass::open_gray: return "open-gray";
    case GrayClass::cyclic_gray: return "cyclic-gray";
    case GrayClass::incomplete: return "incomplete";
    case GrayClass::invalid: return "invalid";
  }
  return "?";
}

struct GrayClassification {
  GrayClass kind = GrayClass::invalid;
  // For invalid: path index of the first word that repeats an earlier one,
  // or of the word that overflows the 2^n budget.
  std::size_t index = 0;
  std::string reason;
};

inline GrayClassification classify_gray(const TransitionSequence& seq) {
  const std::size_t total = word_count(seq.n);
  if (seq.size() > total) {
    return {GrayClass::invalid, total + 1, "sequence longer than 2^n"};
  }
  std::vector<std::uint8_t> seen(total, 0);
  Word w = 0;
  seen[0] = 1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    w ^= Word{1} << seq[i];
    const bool closing = i + 1 == total && w == 0;
    if (seen[w] && !closing) {
      return {GrayClass::invalid, i + 1,
              "word " + BitWord{w, seq.n}.to_string() + " repeats at index " +
                  std::to_string(i + 1)};
    }
    seen[w] = 1;
  }
  if (seq.size() == total) {
    if (w == 0) return {GrayClass::cyclic_gray, 0, {}};
    return {GrayClass::invalid, total, "2^n transitions do not close the cycle"};
  }
  if (seq.size() + 1 == total) return {GrayClass::open_gray, 0, {}};
  return {GrayClass::incomplete, 0, {}};
}

// ---------------------------------------------------------------------------
// Text form: single decimal digits when n <= 10, comma-separated otherwise.

inline std::string format_sequence(const TransitionSequence& seq) {
  std::string out;
  if (seq.n <= 10) {
    out.reserve(seq.size());
    for (Symbol s : seq.symbols) out.push_back(static_cast<char>('0' + s));
    return out;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(seq[i]);
  }
  return out;
}

inline TransitionSequence parse_sequence(std::string_view text, int n) {
  check_bit_count(n);
  std::vector<Symbol> syms;
  auto trimmed = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  text = trimmed(text);
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto next = text.find(',', pos);
      if (next == std::string_view::npos) next = text.size();
      auto tok = trimmed(text.substr(pos, next - pos));
      if (tok.empty()) throw MalformedSequence("empty field in sequence");
      int v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9')
          throw MalformedSequence("bad character '" + std::string(1, c) + "'");
        v = v * 10 + (c - '0');
        if (v > kMaxBits) throw MalformedSequence("symbol too large");
      }
      syms.push_back(static_cast<Symbol>(v));
      pos = next + 1;
    }
  } else {
    if (n > 10 && !text.empty() && text.size() > 1) {
      throw MalformedSequence("sequences with n > 10 must be comma-separated");
    }
    for (char c : text) {
      if (c < '0' || c > '9')
        throw MalformedSequence("bad character '" + std::string(1, c) + "'");
      syms.push_back(static_cast<Symbol>(c - '0'));
    }
  }
  return TransitionSequence{n, std::move(syms)};
}

inline std::string format_header(int n, Mode mode) {
  return "n=" + std::to_string(n) + " mode=" + std::string(to_string(mode));
}

// One parsed record of a sequence file: the sequence plus the header that
// governed it and the comment lines directly above it.
struct SequenceRecord {
  Mode mode = Mode::open;
  bool mode_declared = false;  // a header line set `mode`
  TransitionSequence seq;
  std::string label;
  std::size_t line = 0;
};

// Parses a header line "n=<k> mode=<open|cyclic>". Returns false when the line
// is not a header.
inline bool parse_header(std::string_view line, int& n, Mode& mode) {
  if (line.rfind("n=", 0) != 0) return false;
  std::istringstream in{std::string(line)};
  std::string tok;
  bool have_n = false;
  while (in >> tok) {
    if (tok.rfind("n=", 0) == 0) {
      n = std::stoi(tok.substr(2));
      check_bit_count(n);
      have_n = true;
    } else if (tok.rfind("mode=", 0) == 0) {
      mode = parse_mode(tok.substr(5));
    } else {
      throw MalformedSequence("unexpected header token '" + tok + "'");
    }
  }
  return have_n;
}

// Reads a line-oriented sequence stream. `default_n` (0 = none) applies until
// the first header. Comment lines start with '#'; the last comment line before
// a sequence becomes its label.
inline std::vector<SequenceRecord> read_sequences(std::istream& in,
                                                  int default_n = 0,
                                                  Mode default_mode = Mode::open) {
  std::vector<SequenceRecord> out;
  int n = default_n;
  Mode mode = default_mode;
  bool declared = false;
  std::string line;
  std::string label;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back())))
      v.remove_suffix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front())))
      v.remove_prefix(1);
    if (v.empty()) {
      label.clear();
      continue;
    }
    if (v.front() == '#') {
      v.remove_prefix(1);
      while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
      label = std::string(v);
      continue;
    }
    if (parse_header(v, n, mode)) {
      declared = v.find("mode=") != std::string_view::npos;
      label.clear();
      continue;
    }
    if (n == 0) {
      throw MalformedSequence("line " + std::to_string(lineno) +
                              ": sequence before any n=<k> header");
    }
    out.push_back({mode, declared, parse_sequence(v, n), label, lineno});
    label.clear();
  }
  return out;
}

}  // namespace bgc

#pragma once

// Isomorphism handling for Beckett-Gray codes.
//
// Canonical representatives use only bit relabeling and reversal; adding a
// fixed word can break the queue discipline and is never applied here. The
// general-Gray self-reverse search further below does allow it.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bgc/core.hpp"
#include "bgc/queue.hpp"

namespace bgc {

class IncompleteAlphabet : public Error {
 public:
  using Error::Error;
};

class Incomparable : public Error {
 public:
  using Error::Error;
};

struct IsomorphismWitness {
  std::vector<Symbol> rho;  // rho[old position] = new position
  bool reversed = false;
  std::optional<Word> added_word;
  std::optional<std::size_t> rotation;

  friend bool operator==(const IsomorphismWitness&,
                         const IsomorphismWitness&) = default;
};

inline std::vector<Symbol> identity_permutation(int n) {
  std::vector<Symbol> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), Symbol{0});
  return p;
}

inline std::vector<Symbol> invert(const std::vector<Symbol>& rho) {
  std::vector<Symbol> inv(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) inv[rho[i]] = static_cast<Symbol>(i);
  return inv;
}

inline TransitionSequence relabel(const TransitionSequence& seq,
                                  const std::vector<Symbol>& rho) {
  std::vector<Symbol> out(seq.symbols.size());
  std::transform(seq.symbols.begin(), seq.symbols.end(), out.begin(),
                 [&](Symbol s) { return rho[s]; });
  return TransitionSequence{seq.n, std::move(out)};
}

inline TransitionSequence reverse_seq(const TransitionSequence& seq) {
  return TransitionSequence{seq.n, {seq.symbols.rbegin(), seq.symbols.rend()}};
}

// The relabeling that sends symbols to 0, 1, 2, ... in order of first
// occurrence. Positions that never occur take the remaining values in
// ascending order.
inline std::vector<Symbol> first_occurrence_map(const TransitionSequence& seq) {
  constexpr Symbol unset = 0xff;
  std::vector<Symbol> rho(static_cast<std::size_t>(seq.n), unset);
  Symbol next = 0;
  for (Symbol s : seq.symbols) {
    if (rho[s] == unset) rho[s] = next++;
  }
  for (auto& r : rho) {
    if (r == unset) r = next++;
  }
  return rho;
}

inline bool is_restricted_growth(std::span<const Symbol> symbols) {
  int used = 0;
  for (Symbol s : symbols) {
    if (s > used) return false;
    if (s == used) ++used;
  }
  return true;
}

inline TransitionSequence relabel_first_occurrence(const TransitionSequence& seq) {
  std::vector<bool> seen(static_cast<std::size_t>(seq.n), false);
  for (Symbol s : seq.symbols) seen[s] = true;
  for (int p = 0; p < seq.n; ++p) {
    if (!seen[static_cast<std::size_t>(p)]) {
      throw IncompleteAlphabet("position " + std::to_string(p) +
                               " never occurs in the sequence");
    }
  }
  return relabel(seq, first_occurrence_map(seq));
}

struct CanonicalForm {
  TransitionSequence canonical;
  IsomorphismWitness witness;  // maps the input onto `canonical`
};

// Reversal only participates when the reversed sequence, re-anchored at the
// all-zero word, is itself a Beckett-Gray code of the same class. This always
// holds for cyclic codes; for open codes it usually does not, since the
// reversed word list starts at the code's final word rather than at zero.
inline CanonicalForm canonical_form(const TransitionSequence& seq) {
  const auto cls = classify_beckett(seq);
  if (!cls.complete()) {
    throw Error("canonicalize requires a complete Beckett-Gray code, got " +
                std::string(to_string(cls.kind)));
  }
  auto rho = first_occurrence_map(seq);
  CanonicalForm best{relabel(seq, rho), {rho, false, std::nullopt, std::nullopt}};
  const auto rev = reverse_seq(seq);
  if (classify_beckett(rev).kind == cls.kind) {
    auto rho_rev = first_occurrence_map(rev);
    auto cand = relabel(rev, rho_rev);
    if (cand < best.canonical) {
      best = {std::move(cand), {std::move(rho_rev), true, std::nullopt, std::nullopt}};
    }
  }
  return best;
}

inline TransitionSequence canonicalize(const TransitionSequence& seq) {
  return canonical_form(seq).canonical;
}

inline bool is_canonical(const TransitionSequence& seq) {
  return canonicalize(seq) == seq;
}

inline TransitionSequence apply_witness(const TransitionSequence& seq,
                                        const IsomorphismWitness& w) {
  auto out = relabel(seq, w.rho);
  return w.reversed ? reverse_seq(out) : out;
}

inline std::optional<IsomorphismWitness> are_isomorphic_beckett(
    const TransitionSequence& a, const TransitionSequence& b) {
  if (a.n != b.n) {
    throw Incomparable("codes have different bit counts");
  }
  const auto ca = classify_beckett(a);
  const auto cb = classify_beckett(b);
  if (!ca.complete() || !cb.complete()) {
    throw Error("are_isomorphic_beckett requires complete Beckett-Gray codes");
  }
  if (ca.kind != cb.kind) {
    throw Incomparable("codes differ in mode (open vs cyclic)");
  }
  const auto fa = canonical_form(a);
  const auto fb = canonical_form(b);
  if (fa.canonical != fb.canonical) return std::nullopt;

  // Prefer the orientation-preserving witness when one exists.
  const auto rho_a = first_occurrence_map(a);
  const auto rho_b = first_occurrence_map(b);
  if (relabel(a, rho_a) == relabel(b, rho_b)) {
    std::vector<Symbol> rho(rho_a.size());
    const auto inv_b = invert(rho_b);
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = inv_b[rho_a[i]];
    return IsomorphismWitness{std::move(rho), false, std::nullopt, std::nullopt};
  }
  const auto inv_b = invert(fb.witness.rho);
  std::vector<Symbol> rho(fa.witness.rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = inv_b[fa.witness.rho[i]];
  return IsomorphismWitness{std::move(rho),
                            fa.witness.reversed != fb.witness.reversed,
                            std::nullopt, std::nullopt};
}

// ---------------------------------------------------------------------------
// General cyclic Gray codes.

inline constexpr int kSelfReverseMaxBits = 8;

// Normalizes a cyclic Gray code given as 2^n words (or 2^n + 1 with the start
// repeated at the end) and checks it is a Hamilton cycle of the n-cube.
inline std::vector<Word> cyclic_words(const WordPath& path) {
  if (path.n > kSelfReverseMaxBits) {
    throw Error("self-reverse search limited to n <= " +
                std::to_string(kSelfReverseMaxBits));
  }
  check_bit_count(path.n);
  const std::size_t total = word_count(path.n);
  std::vector<Word> w = path.words;
  if (w.size() == total + 1 && w.back() == w.front()) w.pop_back();
  if (w.size() != total) throw Error("not a complete cyclic Gray code: wrong length");
  std::vector<bool> seen(total, false);
  for (std::size_t i = 0; i < total; ++i) {
    if (w[i] >= total || seen[w[i]]) throw Error("not a complete cyclic Gray code: repeated word");
    seen[w[i]] = true;
    const Word d = w[i] ^ w[(i + 1) % total];
    if (d == 0 || (d & (d - 1)) != 0) {
      throw Error("not a cyclic Gray code: step " + std::to_string(i) +
                  " is not a single-bit change");
    }
  }
  return w;
}

// Searches for a bit permutation rho, a rotation r and (if allowed) an added
// word a with rho(W[i]) ^ a == R[(i + r) mod 2^n] for every i, where R is the
// reversed cycle R[i] = W[-i mod 2^n]. Since a transition-preserving map is
// fixed by where it sends the transition sequence, each rotation determines
// rho and a; the result is the witness that comes first in (rho, rotation)
// order.
inline std::optional<IsomorphismWitness> self_reverse_witness(const WordPath& path,
                                                              bool allow_addition) {
  const auto w = cyclic_words(path);
  const std::size_t total = w.size();
  const int n = path.n;
  std::vector<Word> rev(total);
  for (std::size_t i = 0; i < total; ++i) rev[i] = w[(total - i) % total];
  auto trans = [&](const std::vector<Word>& ws, std::size_t i) {
    return static_cast<Symbol>(std::countr_zero(ws[i] ^ ws[(i + 1) % total]));
  };

  std::optional<IsomorphismWitness> best;
  for (std::size_t r = 0; r < total; ++r) {
    constexpr Symbol unset = 0xff;
    std::vector<Symbol> rho(static_cast<std::size_t>(n), unset);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    bool ok = true;
    for (std::size_t i = 0; i < total && ok; ++i) {
      const Symbol from = trans(w, i);
      const Symbol to = trans(rev, (i + r) % total);
      if (rho[from] == unset) {
        if (taken[to]) ok = false;
        rho[from] = to;
        taken[to] = true;
      } else if (rho[from] != to) {
        ok = false;
      }
    }
    if (!ok) continue;
    Word image0 = 0;
    for (int b = 0; b < n; ++b) {
      if ((w[0] >> b) & 1u) image0 |= Word{1} << rho[static_cast<std::size_t>(b)];
    }
    const Word added = image0 ^ rev[r % total];
    if (added != 0 && !allow_addition) continue;
    IsomorphismWitness cand{rho, true,
                            allow_addition ? std::optional<Word>{added} : std::nullopt,
                            r};
    if (!best || cand.rho < best->rho) best = std::move(cand);
  }
  return best;
}

}  // namespace bgc

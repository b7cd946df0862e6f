#pragma once

// Machine-readable copies of the published Beckett-Gray codes and a self-check
// that classifies and canonicalizes each of them. The embedded text is kept
// byte-identical to data/published_codes.txt (a test enforces this).

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bgc/canonical.hpp"
#include "bgc/core.hpp"
#include "bgc/queue.hpp"

namespace bgc {

inline constexpr std::string_view kPublishedCodes = R"codes(# Published Beckett-Gray codes, transcribed verbatim (line wrapping removed).
# Every sequence is anchored at the all-zero word.

n=3 mode=open
# n3-open: the unique non-cyclic code for n=3 (also the word/queue table example)
0102101

n=4 mode=open
# n4-open-1: non-cyclic code for n=4
010213202313020
# n4-open-2: non-cyclic code for n=4
010213212031321
# n4-open-3: non-cyclic code for n=4
012301202301230
# n4-open-4: non-cyclic code for n=4
012301213210321

n=5 mode=cyclic
# n5-cyclic-1: table of the eight cyclic codes for n=5, row 1 left
01020132010432104342132340412304
# n5-cyclic-2: table of the eight cyclic codes for n=5, row 1 right
01020312403024041232414013234013
# n5-cyclic-3: table of the eight cyclic codes for n=5, row 2 left
01020314203024041234214103234103
# n5-cyclic-4: table of the eight cyclic codes for n=5, row 2 right
01020314203240421034214130324103
# n5-cyclic-5: table of the eight cyclic codes for n=5, row 3 left
01020341202343142320143201043104
# n5-cyclic-6: table of the eight cyclic codes for n=5, row 3 right
01023412032403041230341012340124
# n5-cyclic-7: table of the eight cyclic codes for n=5, row 4 left
01201321402314340232134021431041
# n5-cyclic-8: table of the eight cyclic codes for n=5, row 4 right
01203041230314043210403202413241

n=6 mode=cyclic
# n6-cyclic-first: lexicographically first cyclic code for n=6
0102013120240312152430145052341304513534523514302514523405125415
# n6-cyclic-last: lexicographically last cyclic code for n=6
0123450123435432543125340134140503214541052401432501435032125032

n=7 mode=cyclic
# n7-cyclic-first: lexicographically first cyclic code for n=7
01234501062123435406165212346405613242015603234150513064512106264215606432150563641505646052563625410363410502350412342104320545

n=8 mode=cyclic
# n8-cyclic: a cyclic code for n=8
0123456070121324356576071021353462670153741236256701731426206570134214656057310246453757102043537614073630464273703564027132750541210275641502403654250136025416156043125760325720431576243217604520417516354767035647570625437242132624161523417514367143164314
)codes";

struct Fixture {
  std::string label;
  int n = 1;
  Mode mode = Mode::open;
  TransitionSequence seq;
};

inline std::vector<Fixture> parse_fixtures(std::istream& in) {
  std::vector<Fixture> out;
  for (auto& r : read_sequences(in)) {
    auto label = r.label.substr(0, r.label.find(':'));
    out.push_back({label, r.seq.n, r.mode, std::move(r.seq)});
  }
  return out;
}

inline std::vector<Fixture> published_fixtures() {
  std::istringstream in{std::string(kPublishedCodes)};
  return parse_fixtures(in);
}

inline std::vector<Fixture> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fixture file " + path);
  return parse_fixtures(in);
}

struct FixtureCheck {
  Fixture fixture;
  BeckettClassification classification;
  bool class_ok = false;
  bool canonical = false;
  TransitionSequence canonical_form;
  bool relabel_fixed = false;  // fixed point of first-occurrence relabeling alone
  bool queue_empty_at_end = false;
};

struct SelfCheckReport {
  std::vector<FixtureCheck> entries;
  bool all_classified() const {
    for (const auto& e : entries)
      if (!e.class_ok) return false;
    return true;
  }
  bool all_canonical() const {
    for (const auto& e : entries)
      if (!e.canonical) return false;
    return true;
  }
};

inline SelfCheckReport self_check(const std::vector<Fixture>& fixtures) {
  SelfCheckReport report;
  for (const auto& f : fixtures) {
    FixtureCheck c;
    c.fixture = f;
    c.classification = classify_beckett(f.seq);
    c.class_ok = matches_mode(c.classification.kind, f.mode);
    if (c.class_ok) {
      c.canonical_form = canonicalize(f.seq);
      c.canonical = c.canonical_form == f.seq;
      c.relabel_fixed = relabel_first_occurrence(f.seq) == f.seq;
      c.queue_empty_at_end = queue_trace(f.seq).back().entries.empty();
    }
    report.entries.push_back(std::move(c));
  }
  return report;
}

inline SelfCheckReport self_check() { return self_check(published_fixtures()); }

}  // namespace bgc

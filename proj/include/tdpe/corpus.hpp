#pragma once

#include <string>
#include <vector>

#include "tdpe/formula.hpp"

namespace tdpe {

// One golden-corpus record: a closed input term, its type at annotation 0,
// and the expected canonical normal forms under both strategies.
struct CorpusEntry {
  std::string id;
  Formula type = Formula::bot();
  std::string input;
  std::string expected_cbv;
  std::string expected_cbn;
};

// Line format: `id | type | input | cbv | cbn`, `#` comments. Terms may
// themselves contain `|` (case branches), so fields are regrouped by finding
// the unique split where all three term fields parse.
std::vector<CorpusEntry> parse_corpus(const std::string& text);

// The built-in eight-example fixture.
const std::string& paper_corpus_text();
std::vector<CorpusEntry> paper_corpus();

struct CorpusOutcome {
  std::string id;
  bool cbv_ok = false;
  bool cbn_ok = false;
  std::string cbv_got, cbn_got;
  std::string cbv_expected, cbn_expected;
  double cbv_ms = 0.0, cbn_ms = 0.0;
  std::string error;  // parse/check failure, if any
};

struct CorpusReport {
  std::vector<CorpusOutcome> entries;
  bool all_ok = true;
};

// Runs both strategies on every entry and string-compares canonical prints.
CorpusReport run_corpus(const std::vector<CorpusEntry>& entries);

}  // namespace tdpe

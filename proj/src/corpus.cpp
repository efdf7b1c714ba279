#include "tdpe/corpus.hpp"

#include <chrono>
#include <sstream>

#include "tdpe/normalize.hpp"
#include "tdpe/parser.hpp"

namespace tdpe {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parses(const std::string& text) {
  try {
    parse_term(text);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

std::string join(const std::vector<std::string>& parts, size_t from, size_t count) {
  std::string out;
  for (size_t i = 0; i < count; ++i) {
    if (i) out += '|';
    out += parts[from + i];
  }
  return out;
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  std::vector<CorpusEntry> entries;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;

    std::vector<std::string> parts;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '|') {
        parts.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (parts.size() < 5) {
      throw ParseError("corpus record needs id | type | input | cbv | cbn", lineno, 1);
    }

    CorpusEntry entry;
    entry.id = trim(parts[0]);
    entry.type = parse_formula(trim(parts[1]));

    // terms may contain '|'; find the split where all three fields parse
    size_t n = parts.size() - 2;
    bool found = false;
    for (size_t s1 = 1; s1 <= n - 2 && !found; ++s1) {
      std::string input = trim(join(parts, 2, s1));
      if (!parses(input)) continue;
      for (size_t s2 = 1; s2 + s1 <= n - 1 && !found; ++s2) {
        std::string cbv = trim(join(parts, 2 + s1, s2));
        if (!parses(cbv)) continue;
        std::string cbn = trim(join(parts, 2 + s1 + s2, n - s1 - s2));
        if (!parses(cbn)) continue;
        entry.input = input;
        entry.expected_cbv = cbv;
        entry.expected_cbn = cbn;
        found = true;
      }
    }
    if (!found) {
      throw ParseError("could not split corpus record into three parseable terms", lineno, 1);
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

const std::string& paper_corpus_text() {
  static const std::string text = R"(# golden corpus: id | type | input | cbv | cbn
ex1 | bot->bot | \x:bot. <(\y:bot. y) (S k. x)> | \x0:bot. <x0> | \x0:bot. <<x0>>
ex2 | bot->bot | \x:bot. <<<(\y:bot. y) (S k. x)>>> | \x0:bot. <x0> | \x0:bot. <<x0>>
ex3 | (bot->bot)->bot->bot | \x:bot->bot. \y:bot. <<x y>> | \x0:bot->bot. \x1:bot. <x0 x1> | \x0:bot->bot. \x1:bot. <<x0 <x1>>>
ex4 | (bot->bot)->bot->bot | \x:bot->bot. \y:bot. <x (S k. k (k y))> | \x0:bot->bot. \x1:bot. <x0 (x0 x1)> | \x0:bot->bot. \x1:bot. <<x0 <x1>>>
ex5 | (bot->bot)->bot->bot | \x:bot->bot. \y:bot. <x <x (S k. k (k y))>> | \x0:bot->bot. \x1:bot. <x0 (x0 (x0 x1))> | \x0:bot->bot. \x1:bot. <<x0 <x0 <x1>>>>
ex6 | bot->(bot->bot)->bot | \x:bot. \y:bot->bot. <(S k. k y) x> | \x0:bot. \x1:bot->bot. <x1 x0> | \x0:bot. \x1:bot->bot. <<x1 <x0>>>
ex7 | bot->(bot->bot)->(bot->bot)->bot | \x:bot. \y:bot->bot. \z:bot->bot. <(S k. y (k z)) ((S k1. z (k1 x)) : bot)> | \x0:bot. \x1:bot->bot. \x2:bot->bot. <x1 (x2 (x2 x0))> | \x0:bot. \x1:bot->bot. \x2:bot->bot. <<x1 <x2 <x2 <x0>>>>>
ex8 | (bot+bot)->a->bot | \x:bot+bot. \y:a. <case x of inl z. S k. k z | inr z. z> | \x0:bot+bot. \x1:a. case x0 of inl x2. <x2> | inr x2. <x2> | \x0:bot+bot. \x1:a. case x0 of inl x2. <<<x2>>> | inr x2. <<<x2>>>
)";
  return text;
}

std::vector<CorpusEntry> paper_corpus() { return parse_corpus(paper_corpus_text()); }

CorpusReport run_corpus(const std::vector<CorpusEntry>& entries) {
  CorpusReport report;
  for (const auto& entry : entries) {
    CorpusOutcome outcome;
    outcome.id = entry.id;
    outcome.cbv_expected = entry.expected_cbv;
    outcome.cbn_expected = entry.expected_cbn;
    try {
      DbTerm input = to_debruijn(parse_term(entry.input));
      auto t0 = std::chrono::steady_clock::now();
      TdpeResult cbv = tdpe_cbv(input, Annot::zero, entry.type);
      auto t1 = std::chrono::steady_clock::now();
      TdpeResult cbn = tdpe_cbn(Context{}, Annot::zero, input, entry.type);
      auto t2 = std::chrono::steady_clock::now();
      outcome.cbv_got = print_term(cbv.term);
      outcome.cbn_got = print_term(cbn.term);
      outcome.cbv_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      outcome.cbn_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
      outcome.cbv_ok = outcome.cbv_got == entry.expected_cbv;
      outcome.cbn_ok = outcome.cbn_got == entry.expected_cbn;
    } catch (const std::exception& e) {
      outcome.error = e.what();
      outcome.cbv_ok = outcome.cbn_ok = false;
    }
    report.all_ok = report.all_ok && outcome.cbv_ok && outcome.cbn_ok;
    report.entries.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace tdpe

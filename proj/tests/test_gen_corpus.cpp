#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "tdpe/corpus.hpp"
#include "tdpe/gen.hpp"
#include "tdpe/normalize.hpp"
#include "tdpe/parser.hpp"

using namespace tdpe;

namespace {

const Formula a = Formula::atom("a");

}  // namespace

TEST_CASE("a depth-zero goal is answered by a hypothesis") {
  GenConfig cfg;
  cfg.seed = 1;
  cfg.max_depth = 0;
  cfg.target = a;
  CHECK(gen_typed_term(cfg, Context::of({a})) == DbTerm::hyp());
}

TEST_CASE("generation fails cleanly on uninhabited goals") {
  GenConfig cfg;
  cfg.seed = 3;
  cfg.max_depth = 3;
  cfg.target = a;
  CHECK_THROWS_AS(gen_typed_term(cfg, Context{}), GenError);
}

TEST_CASE("seeds reproduce identical terms") {
  GenConfig cfg;
  cfg.seed = 12345;
  cfg.max_depth = 5;
  cfg.target = Formula::arrow(a, Formula::arrow(Formula::arrow(a, a), a));
  DbTerm t1 = gen_typed_term(cfg);
  DbTerm t2 = gen_typed_term(cfg);
  CHECK(t1 == t2);
  cfg.seed = 12346;
  bool differs = false;
  for (int i = 0; i < 8 && !differs; ++i, ++cfg.seed) {
    differs = !(gen_typed_term(cfg) == t1);
  }
  CHECK(differs);
}

TEST_CASE("generated terms always check at the requested judgment") {
  int generated = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = 1 + static_cast<int>(seed % 5);
    cfg.annot = seed % 2 == 0 ? Annot::zero : Annot::one;
    cfg.allow_control = cfg.annot == Annot::one && seed % 4 == 3;
    cfg.target = seed % 3 == 0 ? Formula::arrow(a, a)
                               : (seed % 3 == 1 ? Formula::sum(a, Formula::arrow(a, a))
                                                : Formula::bot());
    Context ctx = cfg.target.is_bot() ? Context::of({Formula::bot()}) : Context::of({a});
    DbTerm t;
    try {
      t = gen_typed_term(cfg, ctx);
    } catch (const GenError&) {
      continue;
    }
    CHECK_NOTHROW(check(ctx, cfg.annot, t, cfg.target));
    ++generated;
  }
  CHECK(generated >= 350);
}

TEST_CASE("control shows up when requested") {
  bool saw_shift = false;
  for (std::uint64_t seed = 0; seed < 200 && !saw_shift; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = 4;
    cfg.annot = Annot::one;
    cfg.allow_control = true;
    cfg.target = Formula::bot();
    DbTerm t = gen_typed_term(cfg, Context::of({Formula::bot()}));
    saw_shift = print_term(t, 1).find("S ") != std::string::npos;
  }
  CHECK(saw_shift);
}

TEST_CASE("corpus files parse, including pipes inside case branches") {
  auto entries = parse_corpus(
      "# comment\n"
      "\n"
      "t1 | a->a | \\x:a. x | \\x0:a. x0 | \\x0:a. x0\n"
      "t2 | (a+a)->a | \\x:a+a. case x of inl z. z | inr z. z | "
      "\\x0:a+a. case x0 of inl x1. x1 | inr x1. x1 | "
      "\\x0:a+a. case x0 of inl x1. x1 | inr x1. x1\n");
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].id == "t1");
  CHECK(entries[0].type == Formula::arrow(a, a));
  CHECK(entries[1].input == "\\x:a+a. case x of inl z. z | inr z. z");
  CHECK(entries[1].expected_cbn == "\\x0:a+a. case x0 of inl x1. x1 | inr x1. x1");
}

TEST_CASE("an empty corpus runs with zero entries") {
  CorpusReport r = run_corpus(parse_corpus("# nothing here\n"));
  CHECK(r.entries.empty());
  CHECK(r.all_ok);
}

TEST_CASE("corpus mismatches are reported per strategy") {
  auto entries = parse_corpus("bad | a->a | \\x:a. x | \\x0:a. x0 | \\x0:a. wrong0\n");
  CorpusReport r = run_corpus(entries);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].cbv_ok);
  CHECK_FALSE(r.entries[0].cbn_ok);
  CHECK_FALSE(r.all_ok);
}

TEST_CASE("the built-in fixture matches its own text") {
  auto entries = paper_corpus();
  REQUIRE(entries.size() == 8);
  CHECK(entries.front().id == "ex1");
  CHECK(entries.back().id == "ex8");
}

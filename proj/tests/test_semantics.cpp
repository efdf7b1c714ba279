#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "tdpe/eval.hpp"
#include "tdpe/normalize.hpp"
#include "tdpe/parser.hpp"
#include "tdpe/semantics.hpp"

using namespace tdpe;

namespace {

const Context kBotCtx = Context::of({Formula::bot()});

StrongValue atom_at(const DbTerm& t, const Context& w, Annot b = Annot::zero) {
  return StrongValue::atom(Answer{t, w, b});
}

// a few neutral bot-terms at [bot]
std::vector<DbTerm> neutral_samples() {
  return {DbTerm::hyp(), DbTerm::reset(DbTerm::hyp()),
          DbTerm::reset(DbTerm::reset(DbTerm::hyp()))};
}

}  // namespace

TEST_CASE("run of ret is the identity on neutral bot-terms") {
  for (const DbTerm& e : neutral_samples()) {
    Answer a = run(ret(atom_at(e, kBotCtx)));
    CHECK(a.term == e);
    CHECK(a.world == kBotCtx);
  }
}

TEST_CASE("ret delivers its value weakened to the invocation world") {
  ForcingValue v = ret(atom_at(DbTerm::hyp(), kBotCtx));
  Context bigger = kBotCtx.extended(Formula::atom("a"));
  Answer a = v.invoke(bigger, [](const Context& w, const StrongValue& sv) {
    CHECK(sv.kind() == SvKind::Atom);
    return Answer{sv.answer().term, w, sv.answer().annot};
  });
  CHECK(a.term == DbTerm::wkn(DbTerm::hyp()));
}

TEST_CASE("monad identities agree at the answer level") {
  auto as_fv = [](const DbTerm& e) { return ret(atom_at(e, kBotCtx)); };
  std::vector<Continuation> konts = {
      [](const Context& w, const StrongValue& sv) { return weaken_answer(sv.answer(), w); },
      [](const Context& w, const StrongValue& sv) {
        Answer a = weaken_answer(sv.answer(), w);
        return Answer{DbTerm::reset(a.term), a.world, Annot::zero};
      },
  };
  StrongValue::CbvFun f_ret = [](const Context&, const StrongValue& sv) { return ret(sv); };
  StrongValue::CbvFun f_reset = [](const Context& w, const StrongValue& sv) {
    Answer a = weaken_answer(sv.answer(), w);
    return ret(StrongValue::atom(Answer{DbTerm::reset(a.term), a.world, a.annot}));
  };

  for (const DbTerm& e : neutral_samples()) {
    for (const auto& k : konts) {
      // left identity: bind f (ret sv) = f sv
      for (const auto& f : {f_ret, f_reset}) {
        Answer lhs = bind(f, ret(atom_at(e, kBotCtx))).invoke(kBotCtx, k);
        Answer rhs = f(kBotCtx, atom_at(e, kBotCtx)).invoke(kBotCtx, k);
        CHECK(lhs.term == rhs.term);
      }
      // right identity: bind ret v = v
      ForcingValue v = as_fv(e);
      Answer lhs = bind(f_ret, v).invoke(kBotCtx, k);
      Answer rhs = v.invoke(kBotCtx, k);
      CHECK(lhs.term == rhs.term);
    }
  }
}

TEST_CASE("meta_reset wraps a syntactic reset and lands at annotation 0") {
  Answer a{DbTerm::hyp(), kBotCtx, Annot::one};
  Answer r = meta_reset(a);
  CHECK(r.term == DbTerm::reset(DbTerm::hyp()));
  CHECK(r.annot == Annot::zero);
  Answer rr = meta_reset(Answer{r.term, r.world, Annot::one});
  CHECK(rr.term == DbTerm::reset(DbTerm::reset(DbTerm::hyp())));
}

TEST_CASE("coerce01_cbn inserts a delimiter around continuation answers") {
  ForcingValue v = ret(atom_at(DbTerm::hyp(), kBotCtx));
  Answer a = run(coerce01_cbn(v));
  CHECK(a.term == DbTerm::reset(DbTerm::hyp()));
  // coercing twice delimits twice
  Answer b = run(coerce01_cbn(coerce01_cbn(v)));
  CHECK(b.term == DbTerm::reset(DbTerm::reset(DbTerm::hyp())));
}

TEST_CASE("coerce01 on environments") {
  CbnEnv empty(Context{});
  CHECK(coerce01_env(empty).size() == 0);
  CbnEnv env = CbnEnv(kBotCtx).pushed(ret(atom_at(DbTerm::hyp(), kBotCtx)));
  CbnEnv coerced = coerce01_env(env);
  CHECK(coerced.size() == 1);
  CHECK(run(coerced.fst()).term == DbTerm::reset(DbTerm::hyp()));
  // the call-by-value coercion is structural: no resets appear
  CbvEnv venv = CbvEnv(kBotCtx).pushed(atom_at(DbTerm::hyp(), kBotCtx));
  CbvEnv vcoerced = coerce01_env(venv);
  CHECK(vcoerced.fst().answer().term == DbTerm::hyp());
  CHECK(vcoerced.fst().annot() == Annot::one);
}

TEST_CASE("weaken_sem weakens atoms syntactically and functions by bookkeeping") {
  Context bigger = kBotCtx.extended(Formula::atom("a"));
  StrongValue atom = atom_at(DbTerm::hyp(), kBotCtx);
  CHECK(weaken_sem(atom, bigger).answer().term == DbTerm::wkn(DbTerm::hyp()));
  CHECK(weaken_sem(atom, kBotCtx).answer().term == DbTerm::hyp());

  StrongValue inj = StrongValue::inl_v(atom);
  StrongValue winj = weaken_sem(inj, bigger);
  CHECK(winj.kind() == SvKind::InlV);
  CHECK(winj.inj_value().answer().term == DbTerm::wkn(DbTerm::hyp()));

  StrongValue fn = StrongValue::fun_n(
      [](const Context& w, const ForcingValue& arg) { return weaken_sem(arg, w); }, kBotCtx,
      Annot::zero);
  CHECK(weaken_sem(fn, bigger).world() == bigger);

  // weakening twice equals weakening by the concatenation
  Context biggest = bigger.extended(Formula::atom("b"));
  CHECK(weaken_sem(weaken_sem(atom, bigger), biggest).answer().term ==
        weaken_sem(atom, biggest).answer().term);
}

TEST_CASE("environment weakening is pointwise") {
  CbnEnv env = CbnEnv(kBotCtx).pushed(ret(atom_at(DbTerm::hyp(), kBotCtx)));
  Context bigger = kBotCtx.extended(Formula::atom("a"));
  CbnEnv wenv = env.weakened(bigger);
  CHECK(wenv.world() == bigger);
  CHECK(run(wenv.fst()).term == DbTerm::wkn(DbTerm::hyp()));
  // trivial extension is the identity
  CHECK(env.weakened(kBotCtx).size() == env.size());
}

TEST_CASE("answers produced by the pipeline stay in the grammar") {
  DbTerm t = to_debruijn(parse_term("\\x:bot. <(\\y:bot. y) (S k. x)>"));
  Formula ty = parse_formula("bot->bot");
  for (Strategy st : {Strategy::Cbv, Strategy::Cbn}) {
    TdpeResult r = st == Strategy::Cbv ? tdpe_cbv(t, Annot::zero, ty)
                                       : tdpe_cbn(Context{}, Annot::zero, t, ty);
    CHECK(classify(r.term) != NfClass::NotInGrammar);
  }
}

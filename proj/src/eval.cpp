#include "tdpe/eval.hpp"

namespace tdpe {

// Call-by-name. Environment entries are forcing values.
ForcingValue eval_cbn(const Derivation& d, const CbnEnv& env, Annot b) {
  assert(annot_value(d.annot()) <= annot_value(b));
  assert(env.size() == d.ctx().size());
  const DbTerm& t = d.term();
  switch (t.kind()) {
    case TermKind::Hyp:
      return env.fst();
    case TermKind::Wkn:
      return eval_cbn(d.premise(0), env.snd(), b);
    case TermKind::Lam: {
      Derivation body = d.premise(0);
      return ret(StrongValue::fun_n(
          [body, env, b](const Context& w, const ForcingValue& arg) {
            return eval_cbn(body, env.weakened(w).pushed(weaken_sem(arg, w)), b);
          },
          env.world(), b));
    }
    case TermKind::App: {
      ForcingValue arg = eval_cbn(d.premise(1), env, b);
      return bind(
          [arg](const Context& w2, const StrongValue& sv) {
            assert(sv.kind() == SvKind::FunN);
            return sv.cbn_fun()(w2, weaken_sem(arg, w2));
          },
          eval_cbn(d.premise(0), env, b));
    }
    case TermKind::Inl:
      return ret(StrongValue::inl_n(eval_cbn(d.premise(0), env, b)));
    case TermKind::Inr:
      return ret(StrongValue::inr_n(eval_cbn(d.premise(0), env, b)));
    case TermKind::Case: {
      Derivation lbr = d.premise(1);
      Derivation rbr = d.premise(2);
      return bind(
          [lbr, rbr, env, b](const Context& w2, const StrongValue& sv) {
            const CbnEnv extended = env.weakened(w2);
            if (sv.kind() == SvKind::InlN) {
              return eval_cbn(lbr, extended.pushed(sv.inj_forcing()), b);
            }
            assert(sv.kind() == SvKind::InrN);
            return eval_cbn(rbr, extended.pushed(sv.inj_forcing()), b);
          },
          eval_cbn(d.premise(0), env, b));
    }
    case TermKind::Shift: {
      assert(b == Annot::one);
      Derivation body = d.premise(0);
      return ForcingValue(
          [body, env](const Context& w1, const Continuation& k) {
            // the captured continuation, re-entered each time the bound
            // variable is applied
            ForcingValue entry = ret(StrongValue::fun_n(
                [k](const Context& w, const ForcingValue& arg) {
                  return ret(StrongValue::atom(arg.invoke(w, k)));
                },
                w1, Annot::one));
            return run(eval_cbn(body, env.weakened(w1).pushed(std::move(entry)), Annot::one));
          },
          env.world(), Annot::one);
    }
    case TermKind::Reset: {
      if (b == Annot::one) {
        return ret(StrongValue::atom(run(eval_cbn(d.premise(0), env, Annot::one))));
      }
      return ret(StrongValue::atom(
          meta_reset(run(eval_cbn(d.premise(0), coerce01_env(env), Annot::one)))));
    }
    case TermKind::Ascribe:
      return eval_cbn(d.premise(0), env, b);
  }
  assert(false);
  return {};
}

// Call-by-value. Environment entries are strong values.
ForcingValue eval_cbv(const Derivation& d, const CbvEnv& env, Annot b) {
  assert(annot_value(d.annot()) <= annot_value(b));
  assert(env.size() == d.ctx().size());
  const DbTerm& t = d.term();
  switch (t.kind()) {
    case TermKind::Hyp:
      return ret(env.fst());
    case TermKind::Wkn:
      return eval_cbv(d.premise(0), env.snd(), b);
    case TermKind::Lam: {
      Derivation body = d.premise(0);
      return ret(StrongValue::fun_v(
          [body, env, b](const Context& w, const StrongValue& arg) {
            return eval_cbv(body, env.weakened(w).pushed(weaken_sem(arg, w)), b);
          },
          env.world(), b));
    }
    case TermKind::App: {
      ForcingValue arg = eval_cbv(d.premise(1), env, b);
      return bind(
          [arg](const Context& w2, const StrongValue& sv) {
            assert(sv.kind() == SvKind::FunV);
            return bind(sv.cbv_fun(), weaken_sem(arg, w2));
          },
          eval_cbv(d.premise(0), env, b));
    }
    case TermKind::Inl:
      return bind([](const Context&, const StrongValue& sv) { return ret(StrongValue::inl_v(sv)); },
                  eval_cbv(d.premise(0), env, b));
    case TermKind::Inr:
      return bind([](const Context&, const StrongValue& sv) { return ret(StrongValue::inr_v(sv)); },
                  eval_cbv(d.premise(0), env, b));
    case TermKind::Case: {
      Derivation lbr = d.premise(1);
      Derivation rbr = d.premise(2);
      return bind(
          [lbr, rbr, env, b](const Context& w2, const StrongValue& sv) {
            const CbvEnv extended = env.weakened(w2);
            if (sv.kind() == SvKind::InlV) {
              return eval_cbv(lbr, extended.pushed(sv.inj_value()), b);
            }
            assert(sv.kind() == SvKind::InrV);
            return eval_cbv(rbr, extended.pushed(sv.inj_value()), b);
          },
          eval_cbv(d.premise(0), env, b));
    }
    case TermKind::Shift: {
      assert(b == Annot::one);
      Derivation body = d.premise(0);
      return ForcingValue(
          [body, env](const Context& w1, const Continuation& k) {
            StrongValue entry = StrongValue::fun_v(
                [k](const Context& w, const StrongValue& arg) {
                  return ret(StrongValue::atom(k(w, arg)));
                },
                w1, Annot::one);
            return run(eval_cbv(body, env.weakened(w1).pushed(std::move(entry)), Annot::one));
          },
          env.world(), Annot::one);
    }
    case TermKind::Reset: {
      if (b == Annot::one) {
        return ret(StrongValue::atom(run(eval_cbv(d.premise(0), env, Annot::one))));
      }
      return ret(StrongValue::atom(
          meta_reset(run(eval_cbv(d.premise(0), coerce01_env(env), Annot::one)))));
    }
    case TermKind::Ascribe:
      return eval_cbv(d.premise(0), env, b);
  }
  assert(false);
  return {};
}

}  // namespace tdpe

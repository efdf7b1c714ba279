#include "tdpe/semantics.hpp"

namespace tdpe {

ForcingValue::ForcingValue(Fn fn, Context world, Annot annot) {
  auto r = std::make_shared<Rep>();
  r->fn = std::move(fn);
  r->world = std::move(world);
  r->annot = annot;
  rep_ = std::move(r);
}

Answer ForcingValue::invoke(const Context& w1, const Continuation& k) const {
  assert(rep_ && w1.extends(rep_->world));
  return rep_->fn(w1, k);
}

StrongValue StrongValue::atom(Answer a) {
  auto r = std::make_shared<Rep>();
  r->kind = SvKind::Atom;
  r->world = a.world;
  r->annot = a.annot;
  r->atom = std::move(a);
  return StrongValue(std::move(r));
}

StrongValue StrongValue::inl_v(StrongValue v) {
  auto r = std::make_shared<Rep>();
  r->kind = SvKind::InlV;
  r->world = v.world();
  r->annot = v.annot();
  r->child_sv = std::make_shared<StrongValue>(std::move(v));
  return StrongValue(std::move(r));
}

StrongValue StrongValue::inr_v(StrongValue v) {
  auto r = std::make_shared<Rep>();
  r->kind = SvKind::InrV;
  r->world = v.world();
  r->annot = v.annot();
  r->child_sv = std::make_shared<StrongValue>(std::move(v));
  return StrongValue(std::move(r));
}

StrongValue StrongValue::fun_v(CbvFun f, Context world, Annot annot) {
  auto r = std::make_shared<Rep>();
  r->kind = SvKind::FunV;
  r->cbv_fun = std::move(f);
  r->world = std::move(world);
  r->annot = annot;
  return StrongValue(std::move(r));
}

StrongValue StrongValue::inl_n(ForcingValue v) {
  auto r = std::make_shared<Rep>();
  r->kind = SvKind::InlN;
  r->world = v.world();
  r->annot = v.annot();
  r->child_fv = std::move(v);
  return StrongValue(std::move(r));
}

StrongValue StrongValue::inr_n(ForcingValue v) {
  auto r = std::make_shared<Rep>();
  r->kind = SvKind::InrN;
  r->world = v.world();
  r->annot = v.annot();
  r->child_fv = std::move(v);
  return StrongValue(std::move(r));
}

StrongValue StrongValue::fun_n(CbnFun f, Context world, Annot annot) {
  auto r = std::make_shared<Rep>();
  r->kind = SvKind::FunN;
  r->cbn_fun = std::move(f);
  r->world = std::move(world);
  r->annot = annot;
  return StrongValue(std::move(r));
}

const Context& StrongValue::world() const { return rep_->world; }

ForcingValue ret(StrongValue sv) {
  Context world = sv.world();
  Annot annot = sv.annot();
  return ForcingValue(
      [sv = std::move(sv)](const Context& w1, const Continuation& k) {
        return k(w1, weaken_sem(sv, w1));
      },
      std::move(world), annot);
}

ForcingValue bind(StrongValue::CbvFun f, ForcingValue v) {
  Context world = v.world();
  Annot annot = v.annot();
  return ForcingValue(
      [f = std::move(f), v](const Context& w1, const Continuation& k) {
        return v.invoke(w1, [f, k](const Context& w2, const StrongValue& sv) {
          return f(w2, sv).invoke(w2, k);
        });
      },
      std::move(world), annot);
}

Answer run(const ForcingValue& v) {
  return v.invoke(v.world(), [](const Context& w2, const StrongValue& sv) {
    assert(sv.kind() == SvKind::Atom);
    (void)w2;
    return sv.answer();
  });
}

Answer meta_reset(const Answer& a) {
  return Answer{DbTerm::reset(a.term), a.world, Annot::zero};
}

Answer weaken_answer(const Answer& a, const Context& to) {
  assert(to.extends(a.world));
  int dist = to.size() - a.world.size();
  if (dist == 0) return a;
  return Answer{weaken(a.term, dist), to, a.annot};
}

StrongValue weaken_sem(const StrongValue& sv, const Context& to) {
  if (to == sv.world()) return sv;
  switch (sv.kind()) {
    case SvKind::Atom:
      return StrongValue::atom(weaken_answer(sv.answer(), to));
    case SvKind::InlV:
      return StrongValue::inl_v(weaken_sem(sv.inj_value(), to));
    case SvKind::InrV:
      return StrongValue::inr_v(weaken_sem(sv.inj_value(), to));
    case SvKind::InlN:
      return StrongValue::inl_n(weaken_sem(sv.inj_forcing(), to));
    case SvKind::InrN:
      return StrongValue::inr_n(weaken_sem(sv.inj_forcing(), to));
    case SvKind::FunV:
      assert(to.extends(sv.world()));
      return StrongValue::fun_v(sv.cbv_fun(), to, sv.annot());
    case SvKind::FunN:
      assert(to.extends(sv.world()));
      return StrongValue::fun_n(sv.cbn_fun(), to, sv.annot());
  }
  return sv;
}

ForcingValue weaken_sem(const ForcingValue& v, const Context& to) {
  if (to == v.world()) return v;
  assert(to.extends(v.world()));
  return ForcingValue([v](const Context& w1, const Continuation& k) { return v.invoke(w1, k); },
                      to, v.annot());
}

ForcingValue coerce01_cbn(const ForcingValue& v) {
  return ForcingValue(
      [v](const Context& w1, const Continuation& k) {
        Answer out = v.invoke(w1, [k](const Context& w2, const StrongValue& sv) {
          Answer a = k(w2, coerce01_sv_cbn(sv));
          return Answer{DbTerm::reset(a.term), a.world, Annot::zero};
        });
        out.annot = Annot::one;
        return out;
      },
      v.world(), Annot::one);
}

StrongValue coerce01_sv_cbn(const StrongValue& sv) {
  switch (sv.kind()) {
    case SvKind::Atom: {
      Answer a = sv.answer();
      a.annot = Annot::one;
      return StrongValue::atom(std::move(a));
    }
    case SvKind::InlN:
      return StrongValue::inl_n(coerce01_cbn(sv.inj_forcing()));
    case SvKind::InrN:
      return StrongValue::inr_n(coerce01_cbn(sv.inj_forcing()));
    case SvKind::FunN:
      return StrongValue::fun_n(sv.cbn_fun(), sv.world(), Annot::one);
    default:
      assert(false && "call-by-value strong value in a call-by-name coercion");
      return sv;
  }
}

StrongValue coerce01_sv_cbv(const StrongValue& sv) {
  switch (sv.kind()) {
    case SvKind::Atom: {
      Answer a = sv.answer();
      a.annot = Annot::one;
      return StrongValue::atom(std::move(a));
    }
    case SvKind::InlV:
      return StrongValue::inl_v(coerce01_sv_cbv(sv.inj_value()));
    case SvKind::InrV:
      return StrongValue::inr_v(coerce01_sv_cbv(sv.inj_value()));
    case SvKind::FunV:
      return StrongValue::fun_v(sv.cbv_fun(), sv.world(), Annot::one);
    default:
      assert(false && "call-by-name strong value in a call-by-value coercion");
      return sv;
  }
}

CbnEnv coerce01_env(const CbnEnv& env) {
  return env.mapped([](const ForcingValue& v) { return coerce01_cbn(v); });
}

CbvEnv coerce01_env(const CbvEnv& env) {
  return env.mapped([](const StrongValue& v) { return coerce01_sv_cbv(v); });
}

}  // namespace tdpe

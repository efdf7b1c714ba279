#include "tdpe/typing.hpp"

#include <utility>

namespace tdpe {

Derivation::Derivation(DbTerm term, Judgment judgment, std::vector<Derivation> premises) {
  auto n = std::make_shared<Node>();
  n->term = std::move(term);
  n->judgment = std::move(judgment);
  n->premises = std::move(premises);
  node_ = std::move(n);
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw CheckError(msg); }

std::string show(const Formula& f) { return f.to_string(); }

Derivation conclude(DbTerm term, Judgment judgment, std::vector<Derivation> premises = {}) {
  return Derivation(std::move(term), std::move(judgment), std::move(premises));
}

std::vector<Derivation> one(Derivation d) {
  std::vector<Derivation> out;
  out.push_back(std::move(d));
  return out;
}

Derivation check_at(const Context& ctx, Annot b, const DbTerm& t, const Formula& ty);

// Synthesis mode: hyp, wkn, application and ascription.
Derivation synth(const Context& ctx, Annot b, const DbTerm& t) {
  switch (t.kind()) {
    case TermKind::Hyp: {
      if (ctx.empty()) fail("unbound index: hyp in empty context");
      return conclude(t, Judgment{ctx, b, ctx.at(0)});
    }
    case TermKind::Wkn: {
      if (ctx.empty()) fail("unbound index: wkn in empty context");
      Derivation p = synth(ctx.tail(), b, t.body());
      Judgment j{ctx, b, p.type()};
      DbTerm term = DbTerm::wkn(p.term());
      return conclude(std::move(term), std::move(j), one(std::move(p)));
    }
    case TermKind::App: {
      Derivation pf = synth(ctx, b, t.fun());
      if (pf.type().kind() != FormulaKind::Arrow) {
        fail("application of a non-function of type " + show(pf.type()));
      }
      Formula cod = pf.type().cod();
      Derivation pa = check_at(ctx, b, t.arg(), pf.type().dom());
      DbTerm term = DbTerm::app(pf.term(), pa.term());
      std::vector<Derivation> prems;
      prems.push_back(std::move(pf));
      prems.push_back(std::move(pa));
      return conclude(std::move(term), Judgment{ctx, b, std::move(cod)}, std::move(prems));
    }
    case TermKind::Lam: {
      // the binder is annotated, so a lambda synthesizes when its body does
      Derivation p = synth(ctx.extended(*t.binder_type()), b, t.body());
      Judgment j{ctx, b, Formula::arrow(*t.binder_type(), p.type())};
      DbTerm term = DbTerm::lam(*t.binder_type(), p.term());
      return conclude(std::move(term), std::move(j), one(std::move(p)));
    }
    case TermKind::Ascribe: {
      Derivation p = check_at(ctx, b, t.body(), t.ascribed_type());
      Judgment j{ctx, b, p.type()};
      DbTerm term = DbTerm::ascribe(p.term(), p.type());
      return conclude(std::move(term), std::move(j), one(std::move(p)));
    }
    default:
      fail("cannot synthesize a type for this term; add an ascription");
  }
}

Derivation check_at(const Context& ctx, Annot b, const DbTerm& t, const Formula& ty) {
  switch (t.kind()) {
    case TermKind::Lam: {
      if (ty.kind() != FormulaKind::Arrow) {
        fail("lambda checked against non-arrow type " + show(ty));
      }
      if (*t.binder_type() != ty.dom()) {
        fail("binder annotation " + show(*t.binder_type()) + " does not match domain " +
             show(ty.dom()));
      }
      Derivation p = check_at(ctx.extended(ty.dom()), b, t.body(), ty.cod());
      DbTerm term = DbTerm::lam(ty.dom(), p.term());
      return conclude(std::move(term), Judgment{ctx, b, ty}, one(std::move(p)));
    }
    case TermKind::Inl: {
      if (ty.kind() != FormulaKind::Sum) fail("inl checked against non-sum type " + show(ty));
      Derivation p = check_at(ctx, b, t.body(), ty.left());
      DbTerm term = DbTerm::inl(p.term());
      return conclude(std::move(term), Judgment{ctx, b, ty}, one(std::move(p)));
    }
    case TermKind::Inr: {
      if (ty.kind() != FormulaKind::Sum) fail("inr checked against non-sum type " + show(ty));
      Derivation p = check_at(ctx, b, t.body(), ty.right());
      DbTerm term = DbTerm::inr(p.term());
      return conclude(std::move(term), Judgment{ctx, b, ty}, one(std::move(p)));
    }
    case TermKind::Case: {
      Derivation ps = synth(ctx, b, t.scrutinee());
      if (ps.type().kind() != FormulaKind::Sum) {
        fail("case scrutinee has non-sum type " + show(ps.type()));
      }
      Formula a = ps.type().left();
      Formula c = ps.type().right();
      Derivation pl = check_at(ctx.extended(a), b, t.left_branch(), ty);
      Derivation pr = check_at(ctx.extended(c), b, t.right_branch(), ty);
      DbTerm term = DbTerm::case_of(ps.term(), pl.term(), pr.term(), a, c);
      std::vector<Derivation> prems;
      prems.push_back(std::move(ps));
      prems.push_back(std::move(pl));
      prems.push_back(std::move(pr));
      return conclude(std::move(term), Judgment{ctx, b, ty}, std::move(prems));
    }
    case TermKind::Shift: {
      if (b != Annot::one) fail("shift outside a delimiter (annotation is 0)");
      Formula kty = Formula::arrow(ty, Formula::bot());
      Derivation p = check_at(ctx.extended(kty), Annot::one, t.body(), Formula::bot());
      DbTerm term = DbTerm::shift(p.term(), kty);
      return conclude(std::move(term), Judgment{ctx, Annot::one, ty}, one(std::move(p)));
    }
    case TermKind::Reset: {
      if (!ty.is_bot()) fail("reset checked against non-bot type " + show(ty));
      Derivation p = check_at(ctx, Annot::one, t.body(), Formula::bot());
      DbTerm term = DbTerm::reset(p.term());
      return conclude(std::move(term), Judgment{ctx, b, ty}, one(std::move(p)));
    }
    case TermKind::Wkn: {
      if (ctx.empty()) fail("unbound index: wkn in empty context");
      Derivation p = check_at(ctx.tail(), b, t.body(), ty);
      DbTerm term = DbTerm::wkn(p.term());
      return conclude(std::move(term), Judgment{ctx, b, ty}, one(std::move(p)));
    }
    case TermKind::App: {
      // prefer synthesizing the function; a redex whose head cannot
      // synthesize still checks when its argument synthesizes, or when the
      // head is an annotated lambda (its body checks at the goal directly)
      try {
        Derivation p = synth(ctx, b, t);
        if (p.type() != ty) {
          fail("type mismatch: expected " + show(ty) + ", found " + show(p.type()));
        }
        return p;
      } catch (const CheckError& head_error) {
        std::optional<Formula> arg_ty;
        try {
          arg_ty = synth(ctx, b, t.arg()).type();
        } catch (const CheckError&) {
        }
        if (!arg_ty && t.fun().kind() == TermKind::Lam) arg_ty = *t.fun().binder_type();
        if (!arg_ty) throw head_error;
        Derivation pf = check_at(ctx, b, t.fun(), Formula::arrow(*arg_ty, ty));
        Derivation pa = check_at(ctx, b, t.arg(), *arg_ty);
        DbTerm term = DbTerm::app(pf.term(), pa.term());
        std::vector<Derivation> prems;
        prems.push_back(std::move(pf));
        prems.push_back(std::move(pa));
        return conclude(std::move(term), Judgment{ctx, b, ty}, std::move(prems));
      }
    }
    default: {
      Derivation p = synth(ctx, b, t);
      if (p.type() != ty) {
        fail("type mismatch: expected " + show(ty) + ", found " + show(p.type()));
      }
      return p;
    }
  }
}

}  // namespace

Derivation check(const Context& ctx, Annot b, const DbTerm& t, const Formula& ty) {
  return check_at(ctx, b, t, ty);
}

Derivation annot_weaken(const Derivation& d) {
  if (d.annot() != Annot::zero) {
    throw CheckError("annot_weaken expects a derivation at annotation 0");
  }
  return check(d.ctx(), Annot::one, d.term(), d.type());
}

}  // namespace tdpe

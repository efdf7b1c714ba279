#include "tdpe/rewrite.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>

namespace tdpe {

EqTerm EqTerm::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = EqKind::Var;
  n->name = std::move(name);
  return EqTerm(std::move(n));
}

EqTerm EqTerm::lam(std::string name, std::optional<Formula> ann, EqTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = EqKind::Lam;
  n->name = std::move(name);
  n->ann = std::move(ann);
  n->child0 = std::move(body);
  return EqTerm(std::move(n));
}

EqTerm EqTerm::app(EqTerm fun, EqTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = EqKind::App;
  n->child0 = std::move(fun);
  n->child1 = std::move(arg);
  return EqTerm(std::move(n));
}

EqTerm EqTerm::inl(EqTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = EqKind::Inl;
  n->child0 = std::move(body);
  return EqTerm(std::move(n));
}

EqTerm EqTerm::inr(EqTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = EqKind::Inr;
  n->child0 = std::move(body);
  return EqTerm(std::move(n));
}

EqTerm EqTerm::case_of(EqTerm scrutinee, std::string lname, EqTerm lbranch, std::string rname,
                       EqTerm rbranch) {
  auto n = std::make_shared<Node>();
  n->kind = EqKind::Case;
  n->name = std::move(lname);
  n->name2 = std::move(rname);
  n->child0 = std::move(scrutinee);
  n->child1 = std::move(lbranch);
  n->child2 = std::move(rbranch);
  return EqTerm(std::move(n));
}

EqTerm EqTerm::shift(std::string kname, EqTerm body, std::optional<Formula> kann) {
  auto n = std::make_shared<Node>();
  n->kind = EqKind::Shift;
  n->name = std::move(kname);
  n->ann = std::move(kann);
  n->child0 = std::move(body);
  return EqTerm(std::move(n));
}

EqTerm EqTerm::reset(EqTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = EqKind::Reset;
  n->child0 = std::move(body);
  return EqTerm(std::move(n));
}

EqTerm EqTerm::kapp(std::string kname, EqTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = EqKind::KApp;
  n->name = std::move(kname);
  n->child0 = std::move(arg);
  return EqTerm(std::move(n));
}

EqTerm eq_from_surface(const SurfaceTerm& t) {
  switch (t.kind()) {
    case SurfaceKind::Var:
      return EqTerm::var(t.name());
    case SurfaceKind::Lam:
      return EqTerm::lam(t.name(), t.annotation(), eq_from_surface(t.body()));
    case SurfaceKind::App:
      return EqTerm::app(eq_from_surface(t.fun()), eq_from_surface(t.arg()));
    case SurfaceKind::Inl:
      return EqTerm::inl(eq_from_surface(t.body()));
    case SurfaceKind::Inr:
      return EqTerm::inr(eq_from_surface(t.body()));
    case SurfaceKind::Case:
      return EqTerm::case_of(eq_from_surface(t.scrutinee()), t.left_name(),
                             eq_from_surface(t.left_branch()), t.right_name(),
                             eq_from_surface(t.right_branch()));
    case SurfaceKind::Shift:
      return EqTerm::shift(t.name(), eq_from_surface(t.body()));
    case SurfaceKind::Reset:
      return EqTerm::reset(eq_from_surface(t.body()));
    case SurfaceKind::Ascribe:
      return eq_from_surface(t.body());  // the theories have no ascription form
  }
  throw RewriteError("malformed surface term");
}

EqTerm eq_from_db(const DbTerm& t, int scope) {
  auto name_at = [](int level) { return "x" + std::to_string(level); };
  switch (t.kind()) {
    case TermKind::Hyp:
      if (scope <= 0) throw RewriteError("open term: hyp outside the declared scope");
      return EqTerm::var(name_at(scope - 1));
    case TermKind::Wkn:
      if (scope <= 0) throw RewriteError("open term: wkn outside the declared scope");
      return eq_from_db(t.body(), scope - 1);
    case TermKind::Lam:
      return EqTerm::lam(name_at(scope), t.binder_type(), eq_from_db(t.body(), scope + 1));
    case TermKind::App:
      return EqTerm::app(eq_from_db(t.fun(), scope), eq_from_db(t.arg(), scope));
    case TermKind::Inl:
      return EqTerm::inl(eq_from_db(t.body(), scope));
    case TermKind::Inr:
      return EqTerm::inr(eq_from_db(t.body(), scope));
    case TermKind::Case:
      return EqTerm::case_of(eq_from_db(t.scrutinee(), scope), name_at(scope),
                             eq_from_db(t.left_branch(), scope + 1), name_at(scope),
                             eq_from_db(t.right_branch(), scope + 1));
    case TermKind::Shift:
      return EqTerm::shift(name_at(scope), eq_from_db(t.body(), scope + 1), t.binder_type());
    case TermKind::Reset:
      return EqTerm::reset(eq_from_db(t.body(), scope));
    case TermKind::Ascribe:
      return eq_from_db(t.body(), scope);
  }
  throw RewriteError("malformed term");
}

namespace {

SurfaceTerm eq_to_surface(const EqTerm& t) {
  switch (t.kind()) {
    case EqKind::Var:
      return SurfaceTerm::var(t.name());
    case EqKind::Lam:
      if (!t.annotation()) {
        throw RewriteError(
            "lambda binder has no annotation; rewrite against a judgment to compare with tdpe");
      }
      return SurfaceTerm::lam(t.name(), t.annotation(), eq_to_surface(t.body()));
    case EqKind::App:
      return SurfaceTerm::app(eq_to_surface(t.fun()), eq_to_surface(t.arg()));
    case EqKind::Inl:
      return SurfaceTerm::inl(eq_to_surface(t.body()));
    case EqKind::Inr:
      return SurfaceTerm::inr(eq_to_surface(t.body()));
    case EqKind::Case:
      return SurfaceTerm::case_of(eq_to_surface(t.scrutinee()), t.name(),
                                  eq_to_surface(t.left_branch()), t.right_name(),
                                  eq_to_surface(t.right_branch()));
    case EqKind::Shift: {
      SurfaceTerm s = SurfaceTerm::shift(t.name(), eq_to_surface(t.body()));
      // restore the shift's type as an ascription so conversions check
      // without inference even in application positions
      if (t.annotation() && t.annotation()->kind() == FormulaKind::Arrow) {
        return SurfaceTerm::ascribe(std::move(s), t.annotation()->dom());
      }
      return s;
    }
    case EqKind::Reset:
      return SurfaceTerm::reset(eq_to_surface(t.body()));
    case EqKind::KApp:
      return SurfaceTerm::app(SurfaceTerm::var(t.name()), eq_to_surface(t.karg()));
  }
  throw RewriteError("malformed term");
}

}  // namespace

DbTerm eq_to_db(const EqTerm& t, const std::vector<std::string>& ctx) {
  return to_debruijn(eq_to_surface(t), ctx);
}

namespace {

void collect_free(const EqTerm& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case EqKind::Var:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case EqKind::Lam:
    case EqKind::Shift: {
      bool added = bound.insert(t.name()).second;
      collect_free(t.body(), bound, out);
      if (added) bound.erase(t.name());
      return;
    }
    case EqKind::App:
      collect_free(t.fun(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
    case EqKind::Inl:
    case EqKind::Inr:
    case EqKind::Reset:
      collect_free(t.body(), bound, out);
      return;
    case EqKind::Case: {
      collect_free(t.scrutinee(), bound, out);
      bool la = bound.insert(t.name()).second;
      collect_free(t.left_branch(), bound, out);
      if (la) bound.erase(t.name());
      bool ra = bound.insert(t.right_name()).second;
      collect_free(t.right_branch(), bound, out);
      if (ra) bound.erase(t.right_name());
      return;
    }
    case EqKind::KApp:
      if (!bound.count(t.name())) out.insert(t.name());
      collect_free(t.karg(), bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const EqTerm& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

bool contains_kapp(const EqTerm& t) {
  switch (t.kind()) {
    case EqKind::Var:
      return false;
    case EqKind::KApp:
      return true;
    case EqKind::App:
      return contains_kapp(t.fun()) || contains_kapp(t.arg());
    case EqKind::Case:
      return contains_kapp(t.scrutinee()) || contains_kapp(t.left_branch()) ||
             contains_kapp(t.right_branch());
    default:
      return contains_kapp(t.body());
  }
}

namespace {

EqTerm mark(const EqTerm& t, std::set<std::string> kvars) {
  switch (t.kind()) {
    case EqKind::Var:
      return t;
    case EqKind::Lam: {
      auto inner = kvars;
      inner.erase(t.name());
      return EqTerm::lam(t.name(), t.annotation(), mark(t.body(), inner));
    }
    case EqKind::App: {
      if (t.fun().kind() == EqKind::Var && kvars.count(t.fun().name())) {
        return EqTerm::kapp(t.fun().name(), mark(t.arg(), kvars));
      }
      return EqTerm::app(mark(t.fun(), kvars), mark(t.arg(), kvars));
    }
    case EqKind::Inl:
      return EqTerm::inl(mark(t.body(), kvars));
    case EqKind::Inr:
      return EqTerm::inr(mark(t.body(), kvars));
    case EqKind::Case: {
      auto li = kvars;
      li.erase(t.name());
      auto ri = kvars;
      ri.erase(t.right_name());
      return EqTerm::case_of(mark(t.scrutinee(), kvars), t.name(), mark(t.left_branch(), li),
                             t.right_name(), mark(t.right_branch(), ri));
    }
    case EqKind::Shift: {
      auto inner = kvars;
      inner.insert(t.name());
      return EqTerm::shift(t.name(), mark(t.body(), inner), t.annotation());
    }
    case EqKind::Reset:
      return EqTerm::reset(mark(t.body(), kvars));
    case EqKind::KApp:
      return EqTerm::kapp(t.name(), mark(t.karg(), kvars));
  }
  throw RewriteError("malformed term");
}

}  // namespace

EqTerm mark_kapps(const EqTerm& t) { return mark(t, {}); }

EqTerm unmark_kapps(const EqTerm& t) {
  switch (t.kind()) {
    case EqKind::Var:
      return t;
    case EqKind::Lam:
      return EqTerm::lam(t.name(), t.annotation(), unmark_kapps(t.body()));
    case EqKind::App:
      return EqTerm::app(unmark_kapps(t.fun()), unmark_kapps(t.arg()));
    case EqKind::Inl:
      return EqTerm::inl(unmark_kapps(t.body()));
    case EqKind::Inr:
      return EqTerm::inr(unmark_kapps(t.body()));
    case EqKind::Case:
      return EqTerm::case_of(unmark_kapps(t.scrutinee()), t.name(), unmark_kapps(t.left_branch()),
                             t.right_name(), unmark_kapps(t.right_branch()));
    case EqKind::Shift:
      return EqTerm::shift(t.name(), unmark_kapps(t.body()), t.annotation());
    case EqKind::Reset:
      return EqTerm::reset(unmark_kapps(t.body()));
    case EqKind::KApp:
      return EqTerm::app(EqTerm::var(t.name()), unmark_kapps(t.karg()));
  }
  throw RewriteError("malformed term");
}

namespace {

void key_of(const EqTerm& t, std::vector<std::string>& stack, std::string& out) {
  auto var_key = [&](const std::string& name) {
    for (size_t i = 0; i < stack.size(); ++i) {
      if (stack[stack.size() - 1 - i] == name) return "#" + std::to_string(i);
    }
    return "$" + name;
  };
  switch (t.kind()) {
    case EqKind::Var:
      out += var_key(t.name());
      return;
    case EqKind::Lam:
      out += "(L ";
      stack.push_back(t.name());
      key_of(t.body(), stack, out);
      stack.pop_back();
      out += ')';
      return;
    case EqKind::App:
      out += "(A ";
      key_of(t.fun(), stack, out);
      out += ' ';
      key_of(t.arg(), stack, out);
      out += ')';
      return;
    case EqKind::Inl:
    case EqKind::Inr:
      out += t.kind() == EqKind::Inl ? "(il " : "(ir ";
      key_of(t.body(), stack, out);
      out += ')';
      return;
    case EqKind::Case:
      out += "(C ";
      key_of(t.scrutinee(), stack, out);
      out += ' ';
      stack.push_back(t.name());
      key_of(t.left_branch(), stack, out);
      stack.pop_back();
      out += ' ';
      stack.push_back(t.right_name());
      key_of(t.right_branch(), stack, out);
      stack.pop_back();
      out += ')';
      return;
    case EqKind::Shift:
      out += "(S ";
      stack.push_back(t.name());
      key_of(t.body(), stack, out);
      stack.pop_back();
      out += ')';
      return;
    case EqKind::Reset:
      out += "(R ";
      key_of(t.body(), stack, out);
      out += ')';
      return;
    case EqKind::KApp:
      out += "(K ";
      out += var_key(t.name());
      out += ' ';
      key_of(t.karg(), stack, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string alpha_key(const EqTerm& t) {
  std::string out;
  std::vector<std::string> stack;
  key_of(t, stack, out);
  return out;
}

bool classify_value(Theory th, const EqTerm& t) {
  if (t.kind() == EqKind::Lam) return true;
  return th == Theory::Cbv && t.kind() == EqKind::Var;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

// renames one binder occurrence to avoid capture
EqTerm rename_binder(const EqTerm& body, const std::string& from, const std::string& to) {
  return substitute(body, from, EqTerm::var(to));
}

}  // namespace

EqTerm substitute(const EqTerm& t, const std::string& x, const EqTerm& s) {
  switch (t.kind()) {
    case EqKind::Var:
      return t.name() == x ? s : t;
    case EqKind::Lam: {
      if (t.name() == x) return t;
      std::set<std::string> fs = free_vars(s);
      if (fs.count(t.name())) {
        std::set<std::string> avoid = fs;
        for (auto& v : free_vars(t.body())) avoid.insert(v);
        avoid.insert(x);
        std::string fresh = fresh_name(t.name() + "'", avoid);
        return EqTerm::lam(fresh, t.annotation(),
                           substitute(rename_binder(t.body(), t.name(), fresh), x, s));
      }
      return EqTerm::lam(t.name(), t.annotation(), substitute(t.body(), x, s));
    }
    case EqKind::App:
      return EqTerm::app(substitute(t.fun(), x, s), substitute(t.arg(), x, s));
    case EqKind::Inl:
      return EqTerm::inl(substitute(t.body(), x, s));
    case EqKind::Inr:
      return EqTerm::inr(substitute(t.body(), x, s));
    case EqKind::Case: {
      EqTerm scrut = substitute(t.scrutinee(), x, s);
      std::set<std::string> fs = free_vars(s);
      auto do_branch = [&](const std::string& name, const EqTerm& branch,
                           std::string& out_name) -> EqTerm {
        if (name == x) {
          out_name = name;
          return branch;
        }
        if (fs.count(name)) {
          std::set<std::string> avoid = fs;
          for (auto& v : free_vars(branch)) avoid.insert(v);
          avoid.insert(x);
          out_name = fresh_name(name + "'", avoid);
          return substitute(rename_binder(branch, name, out_name), x, s);
        }
        out_name = name;
        return substitute(branch, x, s);
      };
      std::string ln, rn;
      EqTerm lb = do_branch(t.name(), t.left_branch(), ln);
      EqTerm rb = do_branch(t.right_name(), t.right_branch(), rn);
      return EqTerm::case_of(std::move(scrut), ln, std::move(lb), rn, std::move(rb));
    }
    case EqKind::Shift: {
      if (t.name() == x) return t;
      std::set<std::string> fs = free_vars(s);
      if (fs.count(t.name())) {
        std::set<std::string> avoid = fs;
        for (auto& v : free_vars(t.body())) avoid.insert(v);
        avoid.insert(x);
        std::string fresh = fresh_name(t.name() + "'", avoid);
        return EqTerm::shift(fresh, substitute(rename_binder(t.body(), t.name(), fresh), x, s),
                             t.annotation());
      }
      return EqTerm::shift(t.name(), substitute(t.body(), x, s), t.annotation());
    }
    case EqKind::Reset:
      return EqTerm::reset(substitute(t.body(), x, s));
    case EqKind::KApp: {
      if (t.name() == x) {
        // continuation positions take contexts, not terms
        if (s.kind() == EqKind::Var) {
          return EqTerm::kapp(s.name(), substitute(t.karg(), x, s));
        }
        throw RewriteError("cannot substitute a term for continuation variable " + x);
      }
      return EqTerm::kapp(t.name(), substitute(t.karg(), x, s));
    }
  }
  throw RewriteError("malformed term");
}

EqTerm PureContext::plug(EqTerm t) const {
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    t = it->hole_in_fun ? EqTerm::app(std::move(t), it->other)
                        : EqTerm::app(it->other, std::move(t));
  }
  return t;
}

EqTerm PureContext::plug_with_head(EqTerm t) const {
  EqTerm plugged = plug(std::move(t));
  if (khead) return EqTerm::kapp(*khead, std::move(plugged));
  return plugged;
}

bool PureContext::mentions(const std::string& x) const {
  if (khead && *khead == x) return true;
  for (const auto& f : frames) {
    if (free_vars(f.other).count(x)) return true;
  }
  return false;
}

namespace {

std::set<std::string> context_free_vars(const PureContext& c) {
  std::set<std::string> out;
  if (c.khead) out.insert(*c.khead);
  for (const auto& f : c.frames) {
    for (auto& v : free_vars(f.other)) out.insert(v);
  }
  return out;
}

}  // namespace

EqTerm ksubstitute(const EqTerm& t, const std::string& k, const PureContext& target) {
  switch (t.kind()) {
    case EqKind::Var:
      return t;
    case EqKind::Lam: {
      if (t.name() == k) return t;
      std::set<std::string> fs = context_free_vars(target);
      if (fs.count(t.name())) {
        std::set<std::string> avoid = fs;
        for (auto& v : free_vars(t.body())) avoid.insert(v);
        avoid.insert(k);
        std::string fresh = fresh_name(t.name() + "'", avoid);
        return EqTerm::lam(fresh, t.annotation(),
                           ksubstitute(rename_binder(t.body(), t.name(), fresh), k, target));
      }
      return EqTerm::lam(t.name(), t.annotation(), ksubstitute(t.body(), k, target));
    }
    case EqKind::App:
      return EqTerm::app(ksubstitute(t.fun(), k, target), ksubstitute(t.arg(), k, target));
    case EqKind::Inl:
      return EqTerm::inl(ksubstitute(t.body(), k, target));
    case EqKind::Inr:
      return EqTerm::inr(ksubstitute(t.body(), k, target));
    case EqKind::Case: {
      EqTerm scrut = ksubstitute(t.scrutinee(), k, target);
      std::set<std::string> fs = context_free_vars(target);
      auto do_branch = [&](const std::string& name, const EqTerm& branch,
                           std::string& out_name) -> EqTerm {
        if (name == k) {
          out_name = name;
          return branch;
        }
        if (fs.count(name)) {
          std::set<std::string> avoid = fs;
          for (auto& v : free_vars(branch)) avoid.insert(v);
          avoid.insert(k);
          out_name = fresh_name(name + "'", avoid);
          return ksubstitute(rename_binder(branch, name, out_name), k, target);
        }
        out_name = name;
        return ksubstitute(branch, k, target);
      };
      std::string ln, rn;
      EqTerm lb = do_branch(t.name(), t.left_branch(), ln);
      EqTerm rb = do_branch(t.right_name(), t.right_branch(), rn);
      return EqTerm::case_of(std::move(scrut), ln, std::move(lb), rn, std::move(rb));
    }
    case EqKind::Shift: {
      if (t.name() == k) return t;
      std::set<std::string> fs = context_free_vars(target);
      if (fs.count(t.name())) {
        std::set<std::string> avoid = fs;
        for (auto& v : free_vars(t.body())) avoid.insert(v);
        avoid.insert(k);
        std::string fresh = fresh_name(t.name() + "'", avoid);
        return EqTerm::shift(fresh, ksubstitute(rename_binder(t.body(), t.name(), fresh), k, target),
                             t.annotation());
      }
      return EqTerm::shift(t.name(), ksubstitute(t.body(), k, target), t.annotation());
    }
    case EqKind::Reset:
      return EqTerm::reset(ksubstitute(t.body(), k, target));
    case EqKind::KApp: {
      EqTerm inner = ksubstitute(t.karg(), k, target);
      if (t.name() == k) return EqTerm::reset(target.plug_with_head(std::move(inner)));
      return EqTerm::kapp(t.name(), std::move(inner));
    }
  }
  throw RewriteError("malformed term");
}

namespace {

// All ways to split t as F[S k. p] with F a pure context of the theory,
// leftmost-outermost holes first.
void decomp_shift(Theory th, const EqTerm& t, std::vector<PureContext::Frame>& acc,
                  std::vector<std::pair<PureContext, EqTerm>>& out) {
  if (t.kind() == EqKind::Shift) {
    out.push_back({PureContext{acc, std::nullopt}, t});
  }
  if (t.kind() == EqKind::App) {
    acc.push_back({true, t.arg()});
    decomp_shift(th, t.fun(), acc, out);
    acc.pop_back();
    if (th == Theory::Cbv && classify_value(th, t.fun())) {
      acc.push_back({false, t.fun()});
      decomp_shift(th, t.arg(), acc, out);
      acc.pop_back();
    }
  }
}

// All ways to split t as F[x] for the given variable (call-by-value only).
void decomp_var(const EqTerm& t, const std::string& x, std::vector<PureContext::Frame>& acc,
                std::vector<PureContext>& out) {
  if (t.kind() == EqKind::Var && t.name() == x) {
    out.push_back(PureContext{acc, std::nullopt});
  }
  if (t.kind() == EqKind::App) {
    acc.push_back({true, t.arg()});
    decomp_var(t.fun(), x, acc, out);
    acc.pop_back();
    if (classify_value(Theory::Cbv, t.fun())) {
      acc.push_back({false, t.fun()});
      decomp_var(t.arg(), x, acc, out);
      acc.pop_back();
    }
  }
}

void matches_cbv(const EqTerm& t, std::vector<std::pair<int, EqTerm>>& out) {
  // (1) (\x.p) V = p{V/x}
  if (t.kind() == EqKind::App && t.fun().kind() == EqKind::Lam &&
      classify_value(Theory::Cbv, t.arg())) {
    out.push_back({1, substitute(t.fun().body(), t.fun().name(), t.arg())});
  }
  // (2) \x. V x = V, x not free in V
  if (t.kind() == EqKind::Lam && t.body().kind() == EqKind::App &&
      t.body().arg().kind() == EqKind::Var && t.body().arg().name() == t.name() &&
      classify_value(Theory::Cbv, t.body().fun()) && !free_vars(t.body().fun()).count(t.name())) {
    out.push_back({2, t.body().fun()});
  }
  // (3) (\x. F[x]) p = F[p], x not free in F
  if (t.kind() == EqKind::App && t.fun().kind() == EqKind::Lam) {
    const std::string& x = t.fun().name();
    std::vector<PureContext::Frame> acc;
    std::vector<PureContext> holes;
    decomp_var(t.fun().body(), x, acc, holes);
    for (const auto& f : holes) {
      if (!f.mentions(x)) out.push_back({3, f.plug(t.arg())});
    }
  }
  // (4) <V> = V
  if (t.kind() == EqKind::Reset && classify_value(Theory::Cbv, t.body())) {
    out.push_back({4, t.body()});
  }
  // (5) <(\x.p) <q>> = (\x.<p>) <q>
  if (t.kind() == EqKind::Reset && t.body().kind() == EqKind::App &&
      t.body().fun().kind() == EqKind::Lam && t.body().arg().kind() == EqKind::Reset) {
    const EqTerm& lamt = t.body().fun();
    out.push_back({5, EqTerm::app(EqTerm::lam(lamt.name(), lamt.annotation(),
                                              EqTerm::reset(lamt.body())),
                                  t.body().arg())});
  }
  // (6) S k. <p> = S k. p
  if (t.kind() == EqKind::Shift && t.body().kind() == EqKind::Reset) {
    out.push_back({6, EqTerm::shift(t.name(), t.body().body(), t.annotation())});
  }
  // (7) S k. k <p> = <p>, k not free in p
  if (t.kind() == EqKind::Shift && t.body().kind() == EqKind::App &&
      t.body().fun().kind() == EqKind::Var && t.body().fun().name() == t.name() &&
      t.body().arg().kind() == EqKind::Reset &&
      !free_vars(t.body().arg().body()).count(t.name())) {
    out.push_back({7, t.body().arg()});
  }
  // (8) S k. k p = p, k not free in p
  if (t.kind() == EqKind::Shift && t.body().kind() == EqKind::App &&
      t.body().fun().kind() == EqKind::Var && t.body().fun().name() == t.name() &&
      !free_vars(t.body().arg()).count(t.name())) {
    out.push_back({8, t.body().arg()});
  }
  // (9) <F[S k. p]> = <p{(\x.<F[x]>)/k}>, x fresh
  if (t.kind() == EqKind::Reset) {
    std::vector<PureContext::Frame> acc;
    std::vector<std::pair<PureContext, EqTerm>> holes;
    decomp_shift(Theory::Cbv, t.body(), acc, holes);
    for (const auto& [f, sh] : holes) {
      std::set<std::string> avoid = context_free_vars(f);
      for (auto& v : free_vars(sh.body())) avoid.insert(v);
      avoid.insert(sh.name());
      std::string x = fresh_name("a", avoid);
      std::optional<Formula> xann;
      if (sh.annotation() && sh.annotation()->kind() == FormulaKind::Arrow) {
        xann = sh.annotation()->dom();
      }
      EqTerm cont = EqTerm::lam(x, xann, EqTerm::reset(f.plug(EqTerm::var(x))));
      out.push_back({9, EqTerm::reset(substitute(sh.body(), sh.name(), cont))});
    }
  }
}

void matches_cbn(const EqTerm& t, std::vector<std::pair<int, EqTerm>>& out) {
  // (10) (\x.p) q = p{q/x}
  if (t.kind() == EqKind::App && t.fun().kind() == EqKind::Lam) {
    out.push_back({10, substitute(t.fun().body(), t.fun().name(), t.arg())});
  }
  // (11) <U> = U, where U is a lambda
  if (t.kind() == EqKind::Reset && classify_value(Theory::Cbn, t.body())) {
    out.push_back({11, t.body()});
  }
  // (12) k' <- E[S k. p] = <p{k => (k' <- E)}>
  if (t.kind() == EqKind::KApp) {
    std::vector<PureContext::Frame> acc;
    std::vector<std::pair<PureContext, EqTerm>> holes;
    decomp_shift(Theory::Cbn, t.karg(), acc, holes);
    for (auto& [e, sh] : holes) {
      PureContext target = e;
      target.khead = t.name();
      out.push_back({12, EqTerm::reset(ksubstitute(sh.body(), sh.name(), target))});
    }
  }
  // (13) S k. <p> = S k. p
  if (t.kind() == EqKind::Shift && t.body().kind() == EqKind::Reset) {
    out.push_back({13, EqTerm::shift(t.name(), t.body().body(), t.annotation())});
  }
  // (14) S k. k <- p = p, k not free in p
  if (t.kind() == EqKind::Shift && t.body().kind() == EqKind::KApp &&
      t.body().name() == t.name() && !free_vars(t.body().karg()).count(t.name())) {
    out.push_back({14, t.body().karg()});
  }
  // (15) <E[S k. p]> = <p{k => E}>
  if (t.kind() == EqKind::Reset) {
    std::vector<PureContext::Frame> acc;
    std::vector<std::pair<PureContext, EqTerm>> holes;
    decomp_shift(Theory::Cbn, t.body(), acc, holes);
    for (const auto& [e, sh] : holes) {
      out.push_back({15, EqTerm::reset(ksubstitute(sh.body(), sh.name(), e))});
    }
  }
}

int child_count(const EqTerm& t) {
  switch (t.kind()) {
    case EqKind::Var:
      return 0;
    case EqKind::App:
      return 2;
    case EqKind::Case:
      return 3;
    case EqKind::KApp:
      return 1;
    default:
      return 1;
  }
}

const EqTerm& child_at(const EqTerm& t, int i) {
  switch (t.kind()) {
    case EqKind::App:
      return i == 0 ? t.fun() : t.arg();
    case EqKind::Case:
      return i == 0 ? t.scrutinee() : (i == 1 ? t.left_branch() : t.right_branch());
    case EqKind::KApp:
      return t.karg();
    default:
      return t.body();
  }
}

EqTerm with_child(const EqTerm& t, int i, EqTerm c) {
  switch (t.kind()) {
    case EqKind::Lam:
      return EqTerm::lam(t.name(), t.annotation(), std::move(c));
    case EqKind::App:
      return i == 0 ? EqTerm::app(std::move(c), t.arg()) : EqTerm::app(t.fun(), std::move(c));
    case EqKind::Inl:
      return EqTerm::inl(std::move(c));
    case EqKind::Inr:
      return EqTerm::inr(std::move(c));
    case EqKind::Case:
      if (i == 0) {
        return EqTerm::case_of(std::move(c), t.name(), t.left_branch(), t.right_name(),
                               t.right_branch());
      }
      if (i == 1) {
        return EqTerm::case_of(t.scrutinee(), t.name(), std::move(c), t.right_name(),
                               t.right_branch());
      }
      return EqTerm::case_of(t.scrutinee(), t.name(), t.left_branch(), t.right_name(),
                             std::move(c));
    case EqKind::Shift:
      return EqTerm::shift(t.name(), std::move(c), t.annotation());
    case EqKind::Reset:
      return EqTerm::reset(std::move(c));
    case EqKind::KApp:
      return EqTerm::kapp(t.name(), std::move(c));
    default:
      throw RewriteError("node has no children");
  }
}

EqTerm replace_at(const EqTerm& t, const std::vector<int>& path, size_t i, const EqTerm& repl) {
  if (i == path.size()) return repl;
  return with_child(t, path[i], replace_at(child_at(t, path[i]), path, i + 1, repl));
}

std::string path_string(const std::vector<int>& path) {
  std::string out;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

void walk(Theory th, const EqTerm& root, const EqTerm& t, std::vector<int>& path,
          std::vector<RewriteEdge>& out) {
  std::vector<std::pair<int, EqTerm>> local;
  if (th == Theory::Cbv) {
    matches_cbv(t, local);
  } else {
    matches_cbn(t, local);
  }
  std::stable_sort(local.begin(), local.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [rule, result] : local) {
    out.push_back({rule, path_string(path), replace_at(root, path, 0, result)});
  }
  for (int i = 0; i < child_count(t); ++i) {
    path.push_back(i);
    walk(th, root, child_at(t, i), path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<RewriteEdge> rewrite_step(Theory th, const EqTerm& t) {
  std::vector<RewriteEdge> out;
  std::vector<int> path;
  walk(th, t, t, path, out);
  return out;
}

SearchResult rewrite_search(Theory th, const EqTerm& t, int max_steps) {
  SearchResult result;
  std::map<std::string, size_t> seen;
  std::deque<size_t> frontier;

  result.terms.push_back(ReachedTerm{t, 0, {}});
  seen[alpha_key(t)] = 0;
  frontier.push_back(0);

  while (!frontier.empty()) {
    size_t idx = frontier.front();
    frontier.pop_front();
    ReachedTerm current = result.terms[idx];
    std::vector<RewriteEdge> edges = rewrite_step(th, current.term);
    if (edges.empty()) {
      result.normal_form_reached = true;
      continue;
    }
    for (auto& e : edges) {
      std::string key = alpha_key(e.result);
      if (seen.count(key)) continue;
      if (current.depth >= max_steps) {
        result.budget_exhausted = true;
        continue;
      }
      size_t new_idx = result.terms.size();
      seen[key] = new_idx;
      std::vector<RewriteStep> trace = current.trace;
      trace.push_back(RewriteStep{e.rule, e.path, e.result});
      result.terms.push_back(ReachedTerm{e.result, current.depth + 1, std::move(trace)});
      frontier.push_back(new_idx);
    }
  }
  return result;
}

namespace {

// precedence mirrors the canonical term printer
void print_eq_at(std::ostream& out, const EqTerm& t, int prec) {
  switch (t.kind()) {
    case EqKind::Var:
      out << t.name();
      return;
    case EqKind::Lam:
      if (prec > 0) out << '(';
      out << '\\' << t.name();
      if (t.annotation()) out << ':' << t.annotation()->to_string();
      out << ". ";
      print_eq_at(out, t.body(), 0);
      if (prec > 0) out << ')';
      return;
    case EqKind::App:
      if (prec > 1) out << '(';
      print_eq_at(out, t.fun(), 1);
      out << ' ';
      print_eq_at(out, t.arg(), 2);
      if (prec > 1) out << ')';
      return;
    case EqKind::Inl:
    case EqKind::Inr:
      if (prec > 0) out << '(';
      out << (t.kind() == EqKind::Inl ? "inl " : "inr ");
      print_eq_at(out, t.body(), 2);
      if (prec > 0) out << ')';
      return;
    case EqKind::Case:
      if (prec > 0) out << '(';
      out << "case ";
      print_eq_at(out, t.scrutinee(), 1);
      out << " of inl " << t.name() << ". ";
      print_eq_at(out, t.left_branch(), 0);
      out << " | inr " << t.right_name() << ". ";
      print_eq_at(out, t.right_branch(), 0);
      if (prec > 0) out << ')';
      return;
    case EqKind::Shift:
      if (prec > 0) out << '(';
      out << "S " << t.name() << ". ";
      print_eq_at(out, t.body(), 0);
      if (prec > 0) out << ')';
      return;
    case EqKind::Reset:
      out << '<';
      print_eq_at(out, t.body(), 0);
      out << '>';
      return;
    case EqKind::KApp:
      // continuation application prints as an ordinary one
      if (prec > 1) out << '(';
      out << t.name() << ' ';
      print_eq_at(out, t.karg(), 2);
      if (prec > 1) out << ')';
      return;
  }
}

}  // namespace

std::string print_eq(const EqTerm& t) {
  std::ostringstream out;
  print_eq_at(out, t, 0);
  return out.str();
}

}  // namespace tdpe

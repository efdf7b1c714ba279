#include "tdpe/term.hpp"

#include <cassert>
#include <sstream>

namespace tdpe {

DbTerm DbTerm::hyp() {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Hyp;
  return DbTerm(std::move(n));
}

DbTerm DbTerm::wkn(DbTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Wkn;
  n->child0 = std::move(body);
  return DbTerm(std::move(n));
}

DbTerm DbTerm::lam(Formula binder, DbTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lam;
  n->ann0 = std::move(binder);
  n->child0 = std::move(body);
  return DbTerm(std::move(n));
}

DbTerm DbTerm::app(DbTerm fun, DbTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->child0 = std::move(fun);
  n->child1 = std::move(arg);
  return DbTerm(std::move(n));
}

DbTerm DbTerm::inl(DbTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Inl;
  n->child0 = std::move(body);
  return DbTerm(std::move(n));
}

DbTerm DbTerm::inr(DbTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Inr;
  n->child0 = std::move(body);
  return DbTerm(std::move(n));
}

DbTerm DbTerm::case_of(DbTerm scrutinee, DbTerm left_branch, DbTerm right_branch,
                       std::optional<Formula> left_binder, std::optional<Formula> right_binder) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Case;
  n->child0 = std::move(scrutinee);
  n->child1 = std::move(left_branch);
  n->child2 = std::move(right_branch);
  n->ann0 = std::move(left_binder);
  n->ann1 = std::move(right_binder);
  return DbTerm(std::move(n));
}

DbTerm DbTerm::shift(DbTerm body, std::optional<Formula> binder) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Shift;
  n->child0 = std::move(body);
  n->ann0 = std::move(binder);
  return DbTerm(std::move(n));
}

DbTerm DbTerm::reset(DbTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Reset;
  n->child0 = std::move(body);
  return DbTerm(std::move(n));
}

DbTerm DbTerm::ascribe(DbTerm body, Formula type) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Ascribe;
  n->child0 = std::move(body);
  n->ann0 = std::move(type);
  return DbTerm(std::move(n));
}

namespace {

bool ann_equal(const std::optional<Formula>& a, const std::optional<Formula>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a.has_value() || *a == *b;
}

}  // namespace

bool operator==(const DbTerm& a, const DbTerm& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->kind != b.node_->kind) return false;
  if (!ann_equal(a.node_->ann0, b.node_->ann0) || !ann_equal(a.node_->ann1, b.node_->ann1)) {
    return false;
  }
  switch (a.node_->kind) {
    case TermKind::Hyp:
      return true;
    case TermKind::Wkn:
    case TermKind::Lam:
    case TermKind::Inl:
    case TermKind::Inr:
    case TermKind::Shift:
    case TermKind::Reset:
    case TermKind::Ascribe:
      return a.node_->child0 == b.node_->child0;
    case TermKind::App:
      return a.node_->child0 == b.node_->child0 && a.node_->child1 == b.node_->child1;
    case TermKind::Case:
      return a.node_->child0 == b.node_->child0 && a.node_->child1 == b.node_->child1 &&
             a.node_->child2 == b.node_->child2;
  }
  return false;
}

namespace {

bool is_normal(const DbTerm& t);
bool is_neutral(const DbTerm& t);

bool is_neutral(const DbTerm& t) {
  switch (t.kind()) {
    case TermKind::Hyp:
      return true;
    case TermKind::Wkn:
      return is_normal(t.body());
    case TermKind::App:
      return is_neutral(t.fun()) && is_normal(t.arg());
    case TermKind::Case:
      return is_neutral(t.scrutinee()) && is_normal(t.left_branch()) &&
             is_normal(t.right_branch());
    case TermKind::Reset:
      return is_neutral(t.body());
    default:
      return false;
  }
}

bool is_normal(const DbTerm& t) {
  switch (t.kind()) {
    case TermKind::Lam:
    case TermKind::Inl:
    case TermKind::Inr:
    case TermKind::Shift:
      return is_normal(t.body());
    default:
      return is_neutral(t);
  }
}

}  // namespace

NfClass classify(const DbTerm& t) {
  if (is_neutral(t)) return NfClass::Neutral;
  if (is_normal(t)) return NfClass::Normal;
  return NfClass::NotInGrammar;
}

DbTerm weaken(const DbTerm& t, int n) {
  assert(n >= 0);
  DbTerm out = t;
  for (int i = 0; i < n; ++i) out = DbTerm::wkn(out);
  return out;
}

namespace {

// precedence: 0 = binders and injections, 1 = application, 2 = atoms
void print(std::ostream& out, const DbTerm& t, int scope, int prec) {
  switch (t.kind()) {
    case TermKind::Hyp:
      out << 'x' << scope - 1;
      return;
    case TermKind::Wkn:
      // a weakened term reads in the scope minus its head
      print(out, t.body(), scope - 1, prec);
      return;
    case TermKind::Lam: {
      if (prec > 0) out << '(';
      out << "\\x" << scope << ':' << t.binder_type()->to_string() << ". ";
      print(out, t.body(), scope + 1, 0);
      if (prec > 0) out << ')';
      return;
    }
    case TermKind::App: {
      if (prec > 1) out << '(';
      print(out, t.fun(), scope, 1);
      out << ' ';
      print(out, t.arg(), scope, 2);
      if (prec > 1) out << ')';
      return;
    }
    case TermKind::Inl:
    case TermKind::Inr: {
      if (prec > 0) out << '(';
      out << (t.kind() == TermKind::Inl ? "inl " : "inr ");
      print(out, t.body(), scope, 2);
      if (prec > 0) out << ')';
      return;
    }
    case TermKind::Case: {
      if (prec > 0) out << '(';
      out << "case ";
      print(out, t.scrutinee(), scope, 1);
      out << " of inl x" << scope << ". ";
      print(out, t.left_branch(), scope + 1, 0);
      out << " | inr x" << scope << ". ";
      print(out, t.right_branch(), scope + 1, 0);
      if (prec > 0) out << ')';
      return;
    }
    case TermKind::Shift: {
      if (prec > 0) out << '(';
      out << "S x" << scope << ". ";
      print(out, t.body(), scope + 1, 0);
      if (prec > 0) out << ')';
      return;
    }
    case TermKind::Reset: {
      out << '<';
      print(out, t.body(), scope, 0);
      out << '>';
      return;
    }
    case TermKind::Ascribe: {
      out << '(';
      print(out, t.body(), scope, 0);
      out << " : " << t.ascribed_type().to_string() << ')';
      return;
    }
  }
}

}  // namespace

std::string print_term(const DbTerm& t, int scope) {
  std::ostringstream out;
  print(out, t, scope, 0);
  return out.str();
}

}  // namespace tdpe

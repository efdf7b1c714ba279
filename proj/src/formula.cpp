#include "tdpe/formula.hpp"

#include <cassert>
#include <sstream>

namespace tdpe {

Formula Formula::atom(std::string name) {
  assert(name != "bot");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::bot() {
  static const Formula instance = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Bot;
    return Formula(std::move(n));
  }();
  return instance;
}

Formula Formula::arrow(Formula dom, Formula cod) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Arrow;
  n->child0 = std::move(dom);
  n->child1 = std::move(cod);
  return Formula(std::move(n));
}

Formula Formula::sum(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Sum;
  n->child0 = std::move(left);
  n->child1 = std::move(right);
  return Formula(std::move(n));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->kind != b.node_->kind) return false;
  switch (a.node_->kind) {
    case FormulaKind::Atom:
      return a.node_->name == b.node_->name;
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Arrow:
    case FormulaKind::Sum:
      return a.node_->child0 == b.node_->child0 && a.node_->child1 == b.node_->child1;
  }
  return false;
}

namespace {

// precedence: 0 = arrow (right assoc), 1 = sum (left assoc), 2 = atom
void print_formula(std::ostream& out, const Formula& f, int prec) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out << f.atom_name();
      return;
    case FormulaKind::Bot:
      out << "bot";
      return;
    case FormulaKind::Arrow: {
      if (prec > 0) out << '(';
      print_formula(out, f.dom(), 1);
      out << "->";
      print_formula(out, f.cod(), 0);
      if (prec > 0) out << ')';
      return;
    }
    case FormulaKind::Sum: {
      if (prec > 1) out << '(';
      print_formula(out, f.left(), 1);
      out << '+';
      print_formula(out, f.right(), 2);
      if (prec > 1) out << ')';
      return;
    }
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::ostringstream out;
  print_formula(out, *this, 0);
  return out.str();
}

Context Context::of(std::vector<Formula> head_first) {
  Context c;
  c.slots_.assign(head_first.rbegin(), head_first.rend());
  return c;
}

Context Context::extended(const Formula& f) const {
  Context c = *this;
  c.slots_.push_back(f);
  return c;
}

Context Context::tail() const {
  assert(!slots_.empty());
  Context c = *this;
  c.slots_.pop_back();
  return c;
}

bool Context::extends(const Context& shorter) const {
  if (shorter.slots_.size() > slots_.size()) return false;
  for (size_t i = 0; i < shorter.slots_.size(); ++i) {
    if (!(shorter.slots_[i] == slots_[i])) return false;
  }
  return true;
}

std::string Context::to_string() const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (i > 0) out += ",";
    out += at(i).to_string();
  }
  return out;
}

}  // namespace tdpe

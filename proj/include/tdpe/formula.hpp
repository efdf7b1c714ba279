#pragma once

#include <memory>
#include <string>
#include <vector>

namespace tdpe {

// Object-language types: atoms, the distinguished atom `bot` that delimiters
// are set on, arrows and sums. Immutable, structurally shared.
enum class FormulaKind { Atom, Bot, Arrow, Sum };

class Formula {
 public:
  static Formula atom(std::string name);
  static Formula bot();
  static Formula arrow(Formula dom, Formula cod);
  static Formula sum(Formula left, Formula right);

  FormulaKind kind() const;
  bool is_atomic() const {
    return kind() == FormulaKind::Atom || kind() == FormulaKind::Bot;
  }
  bool is_bot() const { return kind() == FormulaKind::Bot; }

  const std::string& atom_name() const;
  const Formula& dom() const;
  const Formula& cod() const;
  const Formula& left() const;
  const Formula& right() const;

  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  Formula() = default;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  FormulaKind kind;
  std::string name;  // Atom only
  Formula child0, child1;
};

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::atom_name() const { return node_->name; }
inline const Formula& Formula::dom() const { return node_->child0; }
inline const Formula& Formula::cod() const { return node_->child1; }
inline const Formula& Formula::left() const { return node_->child0; }
inline const Formula& Formula::right() const { return node_->child1; }

// A typing context; entry 0 is the most recently bound hypothesis. Contexts
// double as the worlds of the semantic domain: w <= w' iff w' extends w by
// binding extra hypotheses at the front.
class Context {
 public:
  Context() = default;
  // entries listed head-first (index 0 first)
  static Context of(std::vector<Formula> head_first);

  int size() const { return static_cast<int>(slots_.size()); }
  bool empty() const { return slots_.empty(); }
  // de Bruijn access: at(0) is the head
  const Formula& at(int index) const { return slots_[slots_.size() - 1 - index]; }

  Context extended(const Formula& f) const;
  Context tail() const;  // drop the head

  // true iff *this extends `shorter` (possibly trivially)
  bool extends(const Context& shorter) const;

  std::string to_string() const;  // head-first, comma separated

  friend bool operator==(const Context& a, const Context& b) { return a.slots_ == b.slots_; }
  friend bool operator!=(const Context& a, const Context& b) { return !(a == b); }

 private:
  std::vector<Formula> slots_;  // oldest first; head is slots_.back()
};

}  // namespace tdpe

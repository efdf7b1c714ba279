#pragma once

#include <memory>
#include <optional>
#include <string>

#include "tdpe/formula.hpp"

namespace tdpe {

// Core term language in de Bruijn style: `hyp` is the head of the context
// and `wkn` its successor. Lambda and shift are unary binders; case binds one
// variable in each branch. Binder types are recorded where the surface syntax
// provides them (lambda) or where elaboration fills them in (shift, case).
// `ascribe` is a checker-level mode switch and never part of normal forms.
enum class TermKind { Hyp, Wkn, Lam, App, Inl, Inr, Case, Shift, Reset, Ascribe };

class DbTerm {
 public:
  DbTerm() = default;  // empty handle; only factory-built terms are usable
  static DbTerm hyp();
  static DbTerm wkn(DbTerm body);
  static DbTerm lam(Formula binder, DbTerm body);
  static DbTerm app(DbTerm fun, DbTerm arg);
  static DbTerm inl(DbTerm body);
  static DbTerm inr(DbTerm body);
  static DbTerm case_of(DbTerm scrutinee, DbTerm left_branch, DbTerm right_branch,
                        std::optional<Formula> left_binder = std::nullopt,
                        std::optional<Formula> right_binder = std::nullopt);
  static DbTerm shift(DbTerm body, std::optional<Formula> binder = std::nullopt);
  static DbTerm reset(DbTerm body);
  static DbTerm ascribe(DbTerm body, Formula type);

  TermKind kind() const;

  const DbTerm& body() const;  // Wkn/Lam/Inl/Inr/Shift/Reset/Ascribe
  const DbTerm& fun() const;
  const DbTerm& arg() const;
  const DbTerm& scrutinee() const;
  const DbTerm& left_branch() const;
  const DbTerm& right_branch() const;

  // Lam: binder type; Shift: continuation binder type; Ascribe: the ascription
  const std::optional<Formula>& binder_type() const;
  const std::optional<Formula>& left_binder_type() const;
  const std::optional<Formula>& right_binder_type() const;
  const Formula& ascribed_type() const;

  friend bool operator==(const DbTerm& a, const DbTerm& b);
  friend bool operator!=(const DbTerm& a, const DbTerm& b) { return !(a == b); }

 private:
  struct Node;
  explicit DbTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct DbTerm::Node {
  TermKind kind;
  DbTerm child0, child1, child2;
  std::optional<Formula> ann0, ann1;
};

inline TermKind DbTerm::kind() const { return node_->kind; }
inline const DbTerm& DbTerm::body() const { return node_->child0; }
inline const DbTerm& DbTerm::fun() const { return node_->child0; }
inline const DbTerm& DbTerm::arg() const { return node_->child1; }
inline const DbTerm& DbTerm::scrutinee() const { return node_->child0; }
inline const DbTerm& DbTerm::left_branch() const { return node_->child1; }
inline const DbTerm& DbTerm::right_branch() const { return node_->child2; }
inline const std::optional<Formula>& DbTerm::binder_type() const { return node_->ann0; }
inline const std::optional<Formula>& DbTerm::left_binder_type() const { return node_->ann0; }
inline const std::optional<Formula>& DbTerm::right_binder_type() const { return node_->ann1; }
inline const Formula& DbTerm::ascribed_type() const { return *node_->ann0; }

// Membership in the normal/neutral term grammar:
//   r ::= \r | inl r | inr r | S r | e
//   e ::= e r | case(e, r1, r2) | <e> | hyp | wkn r
// `Neutral` is reported for terms in the e-grammar (the stronger class, since
// every neutral is also normal), `Normal` for the rest of the r-grammar.
enum class NfClass { Normal, Neutral, NotInGrammar };

NfClass classify(const DbTerm& t);

// Wraps t in n `wkn` constructors.
DbTerm weaken(const DbTerm& t, int n);

// Canonical printing with generated names x0, x1, ... where x0 is the
// outermost hypothesis in scope. `scope` is the number of free hypotheses
// (the context size the term lives under).
std::string print_term(const DbTerm& t, int scope = 0);

}  // namespace tdpe

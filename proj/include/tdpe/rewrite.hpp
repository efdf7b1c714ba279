#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdpe/normalize.hpp"
#include "tdpe/parser.hpp"
#include "tdpe/term.hpp"

namespace tdpe {

struct RewriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Named-variable terms for the equational theories. Beyond the surface
// language there is a second application form, to continuation variables
// (KApp), which only the call-by-name theory uses; lambda annotations are
// optional because rules can invent lambdas whose type is only known when the
// input was elaborated against a judgment. Shift nodes carry the continuation
// binder type when known, for the same reason.
enum class EqKind { Var, Lam, App, Inl, Inr, Case, Shift, Reset, KApp };

class EqTerm {
 public:
  EqTerm() = default;  // empty handle; only factory-built terms are usable
  static EqTerm var(std::string name);
  static EqTerm lam(std::string name, std::optional<Formula> ann, EqTerm body);
  static EqTerm app(EqTerm fun, EqTerm arg);
  static EqTerm inl(EqTerm body);
  static EqTerm inr(EqTerm body);
  static EqTerm case_of(EqTerm scrutinee, std::string lname, EqTerm lbranch, std::string rname,
                        EqTerm rbranch);
  static EqTerm shift(std::string kname, EqTerm body, std::optional<Formula> kann = std::nullopt);
  static EqTerm reset(EqTerm body);
  static EqTerm kapp(std::string kname, EqTerm arg);

  EqKind kind() const;
  const std::string& name() const;  // Var/Lam/Shift/KApp, Case left
  const std::string& right_name() const;
  const std::optional<Formula>& annotation() const;  // Lam ann / Shift binder type
  const EqTerm& body() const;
  const EqTerm& fun() const;
  const EqTerm& arg() const;
  const EqTerm& karg() const;
  const EqTerm& scrutinee() const;
  const EqTerm& left_branch() const;
  const EqTerm& right_branch() const;

 private:
  struct Node;
  explicit EqTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct EqTerm::Node {
  EqKind kind;
  std::string name, name2;
  std::optional<Formula> ann;
  EqTerm child0, child1, child2;
};

inline EqKind EqTerm::kind() const { return node_->kind; }
inline const std::string& EqTerm::name() const { return node_->name; }
inline const std::string& EqTerm::right_name() const { return node_->name2; }
inline const std::optional<Formula>& EqTerm::annotation() const { return node_->ann; }
inline const EqTerm& EqTerm::body() const { return node_->child0; }
inline const EqTerm& EqTerm::fun() const { return node_->child0; }
inline const EqTerm& EqTerm::arg() const { return node_->child1; }
inline const EqTerm& EqTerm::karg() const { return node_->child0; }
inline const EqTerm& EqTerm::scrutinee() const { return node_->child0; }
inline const EqTerm& EqTerm::left_branch() const { return node_->child1; }
inline const EqTerm& EqTerm::right_branch() const { return node_->child2; }

using Theory = Strategy;

// Conversions. eq_from_db names binders canonically (x0, x1, ...) and keeps
// whatever binder annotations elaboration recorded; eq_to_db requires all
// lambda annotations and turns continuation applications back into ordinary
// ones.
EqTerm eq_from_surface(const SurfaceTerm& t);
EqTerm eq_from_db(const DbTerm& t, int scope = 0);
DbTerm eq_to_db(const EqTerm& t, const std::vector<std::string>& ctx = {});

std::string print_eq(const EqTerm& t);

std::set<std::string> free_vars(const EqTerm& t);
bool contains_kapp(const EqTerm& t);

// Marks applications of shift-bound variables as continuation applications
// (the call-by-name theory's view); unmark undoes it.
EqTerm mark_kapps(const EqTerm& t);
EqTerm unmark_kapps(const EqTerm& t);

// Alpha-equivalence key: a canonical de Bruijn rendering. Binder annotations
// are not part of the key, so elaborated and bare spellings of a term agree.
std::string alpha_key(const EqTerm& t);

// Value grammars: call-by-value values are variables and lambdas,
// call-by-name values are lambdas only.
bool classify_value(Theory th, const EqTerm& t);

// Capture-avoiding substitution for ordinary variables.
EqTerm substitute(const EqTerm& t, const std::string& x, const EqTerm& s);

// A pure evaluation context: a stack of application frames around the hole,
// listed outermost first. The hole is never under a binder or a delimiter.
// For the call-by-name substitution of rule k' <- E[...] targets, the context
// may carry a continuation-variable head around the whole frame stack.
struct PureContext {
  struct Frame {
    bool hole_in_fun;  // F p (hole left) vs V F (hole right, call-by-value only)
    EqTerm other;
  };
  std::vector<Frame> frames;
  std::optional<std::string> khead;

  EqTerm plug(EqTerm t) const;  // does not apply khead
  EqTerm plug_with_head(EqTerm t) const;
  bool mentions(const std::string& x) const;
};

// Substitution for continuation variables: rewrites k <- p to <E[p']> per the
// call-by-name theory, recursing into p first.
EqTerm ksubstitute(const EqTerm& t, const std::string& k, const PureContext& target);

struct RewriteEdge {
  int rule = 0;
  std::string path;  // dot separated child indices from the root
  EqTerm result;
};

// All single-step rewrites of t, orienting the theory's equations left to
// right, enumerated leftmost-outermost then by ascending rule id.
std::vector<RewriteEdge> rewrite_step(Theory th, const EqTerm& t);

struct RewriteStep {
  int rule = 0;
  std::string path;
  EqTerm term_after;
};

struct ReachedTerm {
  EqTerm term;
  int depth = 0;
  std::vector<RewriteStep> trace;  // replay from the source reproduces term
};

struct SearchResult {
  std::vector<ReachedTerm> terms;  // breadth first, source first
  bool budget_exhausted = false;
  bool normal_form_reached = false;
};

// Breadth-first closure of rewrite_step up to max_steps rewrites deep,
// deduplicated by alpha equivalence.
SearchResult rewrite_search(Theory th, const EqTerm& t, int max_steps);

}  // namespace tdpe

#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tdpe/formula.hpp"
#include "tdpe/term.hpp"

namespace tdpe {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Named front-end AST. Binder annotations are mandatory on lambda in the
// strict grammar; the relaxed entry point (used by the rewrite theories,
// whose invented lambdas may be untyped) leaves them optional.
enum class SurfaceKind { Var, Lam, App, Inl, Inr, Case, Shift, Reset, Ascribe };

class SurfaceTerm {
 public:
  static SurfaceTerm var(std::string name);
  static SurfaceTerm lam(std::string name, std::optional<Formula> ann, SurfaceTerm body);
  static SurfaceTerm app(SurfaceTerm fun, SurfaceTerm arg);
  static SurfaceTerm inl(SurfaceTerm body);
  static SurfaceTerm inr(SurfaceTerm body);
  static SurfaceTerm case_of(SurfaceTerm scrutinee, std::string lname, SurfaceTerm lbranch,
                             std::string rname, SurfaceTerm rbranch);
  static SurfaceTerm shift(std::string kname, SurfaceTerm body);
  static SurfaceTerm reset(SurfaceTerm body);
  static SurfaceTerm ascribe(SurfaceTerm body, Formula type);

  SurfaceKind kind() const;
  const std::string& name() const;        // Var/Lam/Shift
  const std::string& left_name() const;   // Case
  const std::string& right_name() const;
  const std::optional<Formula>& annotation() const;
  const Formula& ascribed_type() const;
  const SurfaceTerm& body() const;
  const SurfaceTerm& fun() const;
  const SurfaceTerm& arg() const;
  const SurfaceTerm& scrutinee() const;
  const SurfaceTerm& left_branch() const;
  const SurfaceTerm& right_branch() const;

  int line() const;
  int col() const;
  SurfaceTerm at(int line, int col) const;

 private:
  struct Node;
  SurfaceTerm() = default;
  explicit SurfaceTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct SurfaceTerm::Node {
  SurfaceKind kind;
  std::string name, name2;
  std::optional<Formula> ann;
  SurfaceTerm child0, child1, child2;
  int line = 0, col = 0;
};

inline SurfaceKind SurfaceTerm::kind() const { return node_->kind; }
inline const std::string& SurfaceTerm::name() const { return node_->name; }
inline const std::string& SurfaceTerm::left_name() const { return node_->name; }
inline const std::string& SurfaceTerm::right_name() const { return node_->name2; }
inline const std::optional<Formula>& SurfaceTerm::annotation() const { return node_->ann; }
inline const Formula& SurfaceTerm::ascribed_type() const { return *node_->ann; }
inline const SurfaceTerm& SurfaceTerm::body() const { return node_->child0; }
inline const SurfaceTerm& SurfaceTerm::fun() const { return node_->child0; }
inline const SurfaceTerm& SurfaceTerm::arg() const { return node_->child1; }
inline const SurfaceTerm& SurfaceTerm::scrutinee() const { return node_->child0; }
inline const SurfaceTerm& SurfaceTerm::left_branch() const { return node_->child1; }
inline const SurfaceTerm& SurfaceTerm::right_branch() const { return node_->child2; }
inline int SurfaceTerm::line() const { return node_->line; }
inline int SurfaceTerm::col() const { return node_->col; }

Formula parse_formula(std::string_view src);

// Strict surface grammar; lambda binders must carry a type annotation.
SurfaceTerm parse_term(std::string_view src);

// Same grammar with optional lambda annotations.
SurfaceTerm parse_term_relaxed(std::string_view src);

// Comma separated formulas, head (de Bruijn index 0) first. Empty input
// yields the empty context.
Context parse_context(std::string_view src);

struct ScopeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Replaces named binders by hyp/wkn chains; index n becomes wkn^n(hyp).
// `ctx` lists the names of the free hypotheses, head first.
DbTerm to_debruijn(const SurfaceTerm& t, const std::vector<std::string>& ctx = {});

// Canonical names for a context of the given size, head first: the oldest
// hypothesis is x0.
std::vector<std::string> canonical_names(int scope);

}  // namespace tdpe

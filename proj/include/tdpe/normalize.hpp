#pragma once

#include <string>
#include <vector>

#include "tdpe/eval.hpp"
#include "tdpe/semantics.hpp"
#include "tdpe/typing.hpp"

namespace tdpe {

enum class Strategy { Cbv, Cbn };

inline const char* strategy_name(Strategy s) { return s == Strategy::Cbv ? "cbv" : "cbn"; }

// Reification reads a normal form back from the semantic domain by recursion
// on the formula; reflection embeds a neutral term into the domain. The two
// strategies differ only in where values are wrapped with ret and in which
// strong-value shapes they build.
DbTerm reify(Strategy st, const Context& ctx, Annot b, const Formula& ty, const ForcingValue& v);
ForcingValue reflect(Strategy st, const Context& ctx, Annot b, const Formula& ty,
                     const DbTerm& neutral);

// The initial environment for open terms: hypothesis i is reflected at the
// world where it is the head, then carried to the full context. Only the
// call-by-name evaluator can consume it.
CbnEnv gamma_reflect(Strategy st, const Context& ctx, Annot b);

struct TdpeResult {
  DbTerm term;
  Judgment judgment;
  Strategy strategy = Strategy::Cbv;
  std::vector<std::string> trace;
};

// Normalization by evaluation: check, evaluate, reify. Call-by-name accepts
// open terms; call-by-value requires a closed input but still normalizes
// under binders.
TdpeResult tdpe_cbn(const Context& ctx, Annot b, const DbTerm& t, const Formula& ty);
TdpeResult tdpe_cbv(const DbTerm& t, Annot b, const Formula& ty);

struct DisjunctResult {
  bool left = false;
  DbTerm component;
  TdpeResult normal_form;
};

// Every closed term of sum type at annotation 0 normalizes to an injection;
// returns the branch and its payload, which checks at the matching disjunct.
DisjunctResult extract_disjunct(const DbTerm& t, const Formula& a, const Formula& c,
                                Strategy st = Strategy::Cbv);

}  // namespace tdpe

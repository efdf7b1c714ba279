#pragma once

#include <cassert>
#include <functional>
#include <memory>
#include <vector>

#include "tdpe/term.hpp"
#include "tdpe/typing.hpp"

namespace tdpe {

// The semantic domain is a continuations monad indexed by worlds, where a
// world is a typing context and worlds only ever grow by suffix extension.
// Everything dependently-typed in the underlying model (worlds, annotations,
// the answer formula) is erased to runtime data here; the signatures keep the
// world threading explicit so monotonicity is a bookkeeping update.

// A term of the normal/neutral grammar together with the world it lives in.
struct Answer {
  DbTerm term;
  Context world;
  Annot annot = Annot::zero;
};

class StrongValue;

// A continuation receives a strong value at some future world and produces an
// answer at that same world.
using Continuation = std::function<Answer(const Context&, const StrongValue&)>;

// A forcing value is invoked at any world extending its creation world and
// must behave uniformly in that world.
class ForcingValue {
 public:
  using Fn = std::function<Answer(const Context&, const Continuation&)>;

  ForcingValue() = default;
  ForcingValue(Fn fn, Context world, Annot annot);

  Answer invoke(const Context& w1, const Continuation& k) const;

  const Context& world() const { return rep_->world; }
  Annot annot() const { return rep_->annot; }
  explicit operator bool() const { return rep_ != nullptr; }

 private:
  struct Rep {
    Fn fn;
    Context world;
    Annot annot;
  };
  std::shared_ptr<const Rep> rep_;
};

// Strong values are the value layer of the domain and their shape follows the
// formula: answers at atomic types, injections at sums, functions at arrows.
// Call-by-value injections and function arguments are strong values; the
// call-by-name variants carry forcing values instead.
enum class SvKind { Atom, InlV, InrV, FunV, InlN, InrN, FunN };

class StrongValue {
 public:
  using CbvFun = std::function<ForcingValue(const Context&, const StrongValue&)>;
  using CbnFun = std::function<ForcingValue(const Context&, const ForcingValue&)>;

  StrongValue() = default;
  static StrongValue atom(Answer a);
  static StrongValue inl_v(StrongValue v);
  static StrongValue inr_v(StrongValue v);
  static StrongValue fun_v(CbvFun f, Context world, Annot annot);
  static StrongValue inl_n(ForcingValue v);
  static StrongValue inr_n(ForcingValue v);
  static StrongValue fun_n(CbnFun f, Context world, Annot annot);

  SvKind kind() const { return rep_->kind; }
  bool is_left() const { return rep_->kind == SvKind::InlV || rep_->kind == SvKind::InlN; }
  const Answer& answer() const { return rep_->atom; }
  const StrongValue& inj_value() const { return *rep_->child_sv; }
  const ForcingValue& inj_forcing() const { return rep_->child_fv; }
  const CbvFun& cbv_fun() const { return rep_->cbv_fun; }
  const CbnFun& cbn_fun() const { return rep_->cbn_fun; }

  const Context& world() const;
  Annot annot() const { return rep_->annot; }
  explicit operator bool() const { return rep_ != nullptr; }

 private:
  struct Rep {
    SvKind kind;
    Answer atom;
    std::shared_ptr<const StrongValue> child_sv;
    ForcingValue child_fv;
    CbvFun cbv_fun;
    CbnFun cbn_fun;
    Context world;
    Annot annot;
  };
  explicit StrongValue(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
  std::shared_ptr<const Rep> rep_;
};

// Monadic glue: unit, sequencing, and escape at the delimiter type.
ForcingValue ret(StrongValue sv);
ForcingValue bind(StrongValue::CbvFun f, ForcingValue v);
Answer run(const ForcingValue& v);

// Wraps a neutral answer at annotation 1 in a syntactic reset, landing at
// annotation 0.
Answer meta_reset(const Answer& a);

// World monotonicity. Answers and atomic values weaken syntactically;
// functions and forcing values are world polymorphic, so only their recorded
// world moves.
Answer weaken_answer(const Answer& a, const Context& to);
StrongValue weaken_sem(const StrongValue& sv, const Context& to);
ForcingValue weaken_sem(const ForcingValue& v, const Context& to);

// Boolean-order coercion 0 -> 1 for call-by-name forcing values. Each answer
// the continuation produces is wrapped in a syntactic reset; this is what
// duplicates delimiters in call-by-name outputs. Atomic strong values pass
// through, injections coerce the forcing value they carry, functions are
// world/annotation bookkeeping only.
ForcingValue coerce01_cbn(const ForcingValue& v);
StrongValue coerce01_sv_cbn(const StrongValue& sv);

// The call-by-value coercion is structural: annotation metadata only.
StrongValue coerce01_sv_cbv(const StrongValue& sv);

// Environments: one semantic entry per hypothesis of the judgment context,
// all living at the environment's world.
template <class V>
class SemEnv {
 public:
  explicit SemEnv(Context world) : world_(std::move(world)) {}

  bool empty() const { return node_ == nullptr; }
  int size() const { return node_ ? node_->size : 0; }
  const Context& world() const { return world_; }

  const V& fst() const {
    assert(node_);
    return node_->head;
  }

  SemEnv snd() const {
    assert(node_);
    SemEnv e(world_);
    e.node_ = node_->tail;
    return e;
  }

  SemEnv pushed(V head) const {
    SemEnv e(world_);
    e.node_ = std::make_shared<Node>(Node{std::move(head), node_, size() + 1});
    return e;
  }

  SemEnv weakened(const Context& to) const {
    if (to == world_) return *this;
    assert(to.extends(world_));
    std::vector<V> entries;
    for (auto n = node_; n != nullptr; n = n->tail) entries.push_back(weaken_sem(n->head, to));
    SemEnv e(to);
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) e = e.pushed(*it);
    return e;
  }

  template <class F>
  SemEnv mapped(F&& f) const {
    std::vector<V> entries;
    for (auto n = node_; n != nullptr; n = n->tail) entries.push_back(f(n->head));
    SemEnv e(world_);
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) e = e.pushed(*it);
    return e;
  }

 private:
  struct Node {
    V head;
    std::shared_ptr<const Node> tail;
    int size;
  };
  std::shared_ptr<const Node> node_;
  Context world_;
};

using CbnEnv = SemEnv<ForcingValue>;
using CbvEnv = SemEnv<StrongValue>;

CbnEnv coerce01_env(const CbnEnv& env);
CbvEnv coerce01_env(const CbvEnv& env);

}  // namespace tdpe

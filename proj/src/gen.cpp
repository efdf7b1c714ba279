#include "tdpe/gen.hpp"

#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace tdpe {

namespace {

// conservative image of the checker's synthesis mode
bool synthesizes_shape(const DbTerm& t) {
  switch (t.kind()) {
    case TermKind::Hyp:
    case TermKind::Ascribe:
      return true;
    case TermKind::Wkn:
    case TermKind::Lam:
      return synthesizes_shape(t.body());
    case TermKind::App:
      return synthesizes_shape(t.fun());
    default:
      return false;
  }
}

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  DbTerm run(const Context& ctx) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      budget_ = 4000;
      if (auto t = gen(ctx, cfg_.annot, cfg_.target, cfg_.max_depth)) return *t;
    }
    throw GenError("failed to generate a term of type " + cfg_.target.to_string() +
                   " in context [" + ctx.to_string() + "]");
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Formula sample_formula(int fuel) {
    if (cfg_.pure_fragment) {
      int r = pick(fuel > 0 ? 4 : 3);
      switch (r) {
        case 0:
        case 1:
          return Formula::atom("a");
        case 2:
          return Formula::atom("b");
        default:
          return Formula::arrow(sample_formula(fuel - 1), sample_formula(fuel - 1));
      }
    }
    int r = pick(fuel > 0 ? 6 : 4);
    switch (r) {
      case 0:
      case 1:
        return Formula::atom("a");
      case 2:
        return Formula::atom("b");
      case 3:
        return Formula::bot();
      case 4:
        return Formula::arrow(sample_formula(fuel - 1), sample_formula(fuel - 1));
      default:
        return Formula::sum(sample_formula(fuel - 1), sample_formula(fuel - 1));
    }
  }

  std::optional<DbTerm> gen(const Context& ctx, Annot b, const Formula& ty, int depth) {
    if (budget_-- <= 0) return std::nullopt;

    struct Cand {
      int weight;
      std::function<std::optional<DbTerm>()> go;
    };
    std::vector<Cand> cands;

    std::vector<int> var_hits;
    for (int i = 0; i < ctx.size(); ++i) {
      if (ctx.at(i) == ty) var_hits.push_back(i);
    }
    if (!var_hits.empty()) {
      cands.push_back({6, [this, var_hits]() -> std::optional<DbTerm> {
                         return weaken(DbTerm::hyp(), var_hits[pick(static_cast<int>(
                                                         var_hits.size()))]);
                       }});
    }

    if (depth > 0) {
      if (ty.kind() == FormulaKind::Arrow) {
        cands.push_back({5, [=, this]() -> std::optional<DbTerm> {
                           auto body = gen(ctx.extended(ty.dom()), b, ty.cod(), depth - 1);
                           if (!body) return std::nullopt;
                           return DbTerm::lam(ty.dom(), *body);
                         }});
      }
      if (ty.kind() == FormulaKind::Sum) {
        cands.push_back({4, [=, this]() -> std::optional<DbTerm> {
                           bool left = pick(2) == 0;
                           auto body = gen(ctx, b, left ? ty.left() : ty.right(), depth - 1);
                           if (!body) return std::nullopt;
                           return left ? DbTerm::inl(*body) : DbTerm::inr(*body);
                         }});
      }
      if (ty.is_bot()) {
        cands.push_back({3, [=, this]() -> std::optional<DbTerm> {
                           auto body = gen(ctx, Annot::one, Formula::bot(), depth - 1);
                           if (!body) return std::nullopt;
                           return DbTerm::reset(*body);
                         }});
      }
      if (b == Annot::one && cfg_.allow_control) {
        cands.push_back({2, [=, this]() -> std::optional<DbTerm> {
                           Context inner = ctx.extended(Formula::arrow(ty, Formula::bot()));
                           auto body = gen(inner, Annot::one, Formula::bot(), depth - 1);
                           if (!body) return std::nullopt;
                           return DbTerm::shift(*body);
                         }});
      }
      // application at a sampled argument type
      cands.push_back({2, [=, this]() -> std::optional<DbTerm> {
                         Formula arg_ty = pick_arg_type(ctx, ty);
                         Formula fun_ty = Formula::arrow(arg_ty, ty);
                         auto fun = gen(ctx, b, fun_ty, depth - 1);
                         if (!fun) return std::nullopt;
                         auto arg = gen(ctx, b, arg_ty, depth - 1);
                         if (!arg) return std::nullopt;
                         // keep the head checkable without inference
                         DbTerm head = *fun;
                         if (!synthesizes_shape(head) && head.kind() != TermKind::Lam) {
                           head = DbTerm::ascribe(std::move(head), fun_ty);
                         }
                         return DbTerm::app(std::move(head), *arg);
                       }});
      // case split over an available or ascribed sum
      cands.push_back({1, [=, this]() -> std::optional<DbTerm> {
                         auto scrut = pick_scrutinee(ctx, b, depth);
                         if (!scrut) return std::nullopt;
                         auto [term, sum_ty] = *scrut;
                         auto lbr = gen(ctx.extended(sum_ty.left()), b, ty, depth - 1);
                         if (!lbr) return std::nullopt;
                         auto rbr = gen(ctx.extended(sum_ty.right()), b, ty, depth - 1);
                         if (!rbr) return std::nullopt;
                         return DbTerm::case_of(term, *lbr, *rbr);
                       }});
    }

    while (!cands.empty()) {
      int total = 0;
      for (const auto& c : cands) total += c.weight;
      int r = pick(total);
      size_t chosen = 0;
      for (size_t i = 0; i < cands.size(); ++i) {
        if (r < cands[i].weight) {
          chosen = i;
          break;
        }
        r -= cands[i].weight;
      }
      if (auto t = cands[chosen].go()) return t;
      cands.erase(cands.begin() + static_cast<long>(chosen));
    }
    return std::nullopt;
  }

  Formula pick_arg_type(const Context& ctx, const Formula& ty) {
    std::vector<Formula> pool;
    for (int i = 0; i < ctx.size(); ++i) pool.push_back(ctx.at(i));
    if (ty.kind() == FormulaKind::Arrow) pool.push_back(ty.dom());
    pool.push_back(sample_formula(1));
    return pool[pick(static_cast<int>(pool.size()))];
  }

  std::optional<std::pair<DbTerm, Formula>> pick_scrutinee(const Context& ctx, Annot b,
                                                           int depth) {
    std::vector<std::pair<DbTerm, Formula>> sums;
    for (int i = 0; i < ctx.size(); ++i) {
      if (ctx.at(i).kind() == FormulaKind::Sum) {
        sums.push_back({weaken(DbTerm::hyp(), i), ctx.at(i)});
      }
    }
    if (!sums.empty()) return sums[pick(static_cast<int>(sums.size()))];
    if (depth < 2) return std::nullopt;
    // no sum in scope: ascribe a fresh injection
    Formula sum_ty = Formula::sum(sample_formula(1), sample_formula(1));
    bool left = pick(2) == 0;
    auto payload = gen(ctx, b, left ? sum_ty.left() : sum_ty.right(), depth - 2);
    if (!payload) return std::nullopt;
    DbTerm inj = left ? DbTerm::inl(*payload) : DbTerm::inr(*payload);
    return std::make_pair(DbTerm::ascribe(std::move(inj), sum_ty), sum_ty);
  }

  GenConfig cfg_;
  std::mt19937_64 rng_;
  int budget_ = 0;
};

}  // namespace

DbTerm gen_typed_term(const GenConfig& cfg, const Context& ctx) {
  Generator g(cfg);
  return g.run(ctx);
}

}  // namespace tdpe

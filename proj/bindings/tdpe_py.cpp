#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tdpe/corpus.hpp"
#include "tdpe/gen.hpp"
#include "tdpe/normalize.hpp"
#include "tdpe/parser.hpp"
#include "tdpe/rewrite.hpp"

namespace py = pybind11;
using namespace tdpe;

namespace {

Annot to_annot(int v) {
  if (v != 0 && v != 1) throw std::invalid_argument("annot must be 0 or 1");
  return v == 0 ? Annot::zero : Annot::one;
}

Strategy to_strategy(const std::string& s) {
  if (s == "cbv") return Strategy::Cbv;
  if (s == "cbn") return Strategy::Cbn;
  throw std::invalid_argument("strategy must be 'cbv' or 'cbn'");
}

DbTerm parse_input(const std::string& expr, const Context& ctx) {
  return to_debruijn(parse_term(expr), canonical_names(ctx.size()));
}

py::dict check_py(const std::string& expr, const std::string& type, const std::string& ctx_text,
                  int annot) {
  py::dict report;
  report["ok"] = false;
  report["annot"] = annot;
  try {
    Context ctx = parse_context(ctx_text);
    Formula ty = parse_formula(type);
    report["type"] = ty.to_string();
    check(ctx, to_annot(annot), parse_input(expr, ctx), ty);
    report["ok"] = true;
  } catch (const std::exception& e) {
    report["error"] = std::string(e.what());
  }
  return report;
}

std::string normalize_py(const std::string& expr, const std::string& type,
                         const std::string& strategy, const std::string& ctx_text, int annot) {
  Strategy st = to_strategy(strategy);
  Context ctx = parse_context(ctx_text);
  Formula ty = parse_formula(type);
  DbTerm t = parse_input(expr, ctx);
  Annot b = to_annot(annot);
  TdpeResult r = st == Strategy::Cbv ? tdpe_cbv(t, b, ty) : tdpe_cbn(ctx, b, t, ty);
  return print_term(r.term, ctx.size());
}

py::tuple disjunct_py(const std::string& expr, const std::string& type,
                      const std::string& strategy) {
  Formula ty = parse_formula(type);
  if (ty.kind() != FormulaKind::Sum) throw std::invalid_argument("disjunct needs a sum type");
  DisjunctResult r =
      extract_disjunct(parse_input(expr, Context{}), ty.left(), ty.right(), to_strategy(strategy));
  return py::make_tuple(r.left ? "inl" : "inr", print_term(r.component));
}

py::dict rewrite_py(const std::string& expr, const std::string& theory, int max_steps,
                    const std::string& type, const std::string& ctx_text) {
  Theory th = to_strategy(theory);
  Context ctx = parse_context(ctx_text);
  EqTerm start = [&] {
    if (!type.empty()) {
      Derivation d = check(ctx, Annot::zero, parse_input(expr, ctx), parse_formula(type));
      return eq_from_db(d.term(), ctx.size());
    }
    return eq_from_surface(parse_term_relaxed(expr));
  }();
  if (th == Theory::Cbn) start = mark_kapps(start);
  SearchResult result = rewrite_search(th, start, max_steps);

  py::list terms;
  py::list traces;
  for (const auto& reached : result.terms) {
    terms.append(print_eq(reached.term));
    py::list steps;
    for (const auto& s : reached.trace) {
      py::dict step;
      step["rule"] = s.rule;
      step["path"] = s.path;
      step["term"] = print_eq(s.term_after);
      steps.append(step);
    }
    traces.append(steps);
  }
  py::dict out;
  out["terms"] = terms;
  out["traces"] = traces;
  out["normal_form_reached"] = result.normal_form_reached;
  out["budget_exhausted"] = result.budget_exhausted;
  return out;
}

std::string gen_py(std::uint64_t seed, int depth, const std::string& type, bool control, int annot,
                   const std::string& ctx_text) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.max_depth = depth;
  cfg.target = parse_formula(type);
  cfg.allow_control = control;
  cfg.annot = to_annot(annot);
  Context ctx = parse_context(ctx_text);
  return print_term(gen_typed_term(cfg, ctx), ctx.size());
}

py::list corpus_paper_py() {
  py::list out;
  for (const auto& e : run_corpus(paper_corpus()).entries) {
    py::dict row;
    row["id"] = e.id;
    row["cbv_ok"] = e.cbv_ok;
    row["cbn_ok"] = e.cbn_ok;
    row["cbv"] = e.cbv_got;
    row["cbn"] = e.cbn_got;
    if (!e.error.empty()) row["error"] = e.error;
    out.append(row);
  }
  return out;
}

std::string classify_py(const std::string& expr) {
  DbTerm t = to_debruijn(parse_term(expr), canonical_names(64));
  switch (classify(t)) {
    case NfClass::Neutral:
      return "neutral";
    case NfClass::Normal:
      return "normal";
    default:
      return "not-in-grammar";
  }
}

}  // namespace

PYBIND11_MODULE(_tdpe, m) {
  m.doc() = "type-directed partial evaluation for shift/reset with sum types";

  m.def("check", &check_py, py::arg("expr"), py::arg("type"), py::arg("ctx") = "",
        py::arg("annot") = 0,
        "Type-check a term; returns {ok, type, annot, error?}.");
  m.def("normalize", &normalize_py, py::arg("expr"), py::arg("type"), py::arg("strategy") = "cbv",
        py::arg("ctx") = "", py::arg("annot") = 0,
        "Normalize a term and return its canonical print.");
  m.def("disjunct", &disjunct_py, py::arg("expr"), py::arg("type"), py::arg("strategy") = "cbv",
        "Extract the injection of a closed sum-typed term: returns (tag, term).");
  m.def("rewrite", &rewrite_py, py::arg("expr"), py::arg("theory"), py::arg("max_steps"),
        py::arg("type") = "", py::arg("ctx") = "",
        "Bounded equational rewriting; returns reachable terms and traces.");
  m.def("gen_term", &gen_py, py::arg("seed"), py::arg("depth"), py::arg("type"),
        py::arg("control") = false, py::arg("annot") = 0, py::arg("ctx") = "",
        "Generate a random well-typed term, deterministically per seed.");
  m.def("corpus_paper", &corpus_paper_py, "Run the built-in golden corpus.");
  m.def("classify", &classify_py, py::arg("expr"),
        "Classify a term as normal, neutral, or not-in-grammar.");
}

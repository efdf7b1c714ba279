#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdpe/corpus.hpp"
#include "tdpe/gen.hpp"
#include "tdpe/normalize.hpp"
#include "tdpe/parser.hpp"
#include "tdpe/rewrite.hpp"

namespace {

using nlohmann::json;
using namespace tdpe;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct TermSource {
  std::string file;
  std::string expr;

  std::string text() const {
    if (!expr.empty()) return expr;
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("file", file, "file with one term");
    cmd->add_option("--expr", expr, "inline term text");
  }

  void validate() const {
    if (expr.empty() && file.empty()) {
      throw CLI::ValidationError("provide a FILE or --expr");
    }
  }
};

Strategy parse_strategy(const std::string& s) {
  if (s == "cbv") return Strategy::Cbv;
  if (s == "cbn") return Strategy::Cbn;
  throw CLI::ValidationError("strategy must be cbv or cbn");
}

int cmd_check(const TermSource& src, const std::string& ctx_text, int annot,
              const std::string& type_text, bool as_json) {
  json report;
  report["ok"] = false;
  report["annot"] = annot;
  int rc = kExitCheckFailure;
  try {
    Context ctx = parse_context(ctx_text);
    Formula ty = parse_formula(type_text);
    report["type"] = ty.to_string();
    DbTerm t = to_debruijn(parse_term(src.text()), canonical_names(ctx.size()));
    check(ctx, annot == 0 ? Annot::zero : Annot::one, t, ty);
    report["ok"] = true;
    rc = kExitOk;
  } catch (const ParseError& e) {
    report["error"] = e.what();
    rc = kExitUsage;
  } catch (const std::exception& e) {
    report["error"] = e.what();
  }
  if (as_json) {
    std::cout << report.dump() << "\n";
  } else if (report["ok"].get<bool>()) {
    std::cout << "ok\n";
  } else {
    std::cout << "error: " << report["error"].get<std::string>() << "\n";
  }
  return rc;
}

int cmd_normalize(const TermSource& src, const std::string& strategy, const std::string& ctx_text,
                  int annot, const std::string& type_text) {
  Strategy st = parse_strategy(strategy);
  Context ctx = parse_context(ctx_text);
  Formula ty = parse_formula(type_text);
  Annot b = annot == 0 ? Annot::zero : Annot::one;
  DbTerm t = to_debruijn(parse_term(src.text()), canonical_names(ctx.size()));
  TdpeResult result = [&] {
    if (st == Strategy::Cbv) {
      if (!ctx.empty()) {
        throw CheckError("call-by-value normalization requires a closed term (empty --ctx)");
      }
      return tdpe_cbv(t, b, ty);
    }
    return tdpe_cbn(ctx, b, t, ty);
  }();
  std::cout << print_term(result.term, ctx.size()) << "\n";
  return kExitOk;
}

int cmd_disjunct(const TermSource& src, const std::string& strategy, const std::string& type_text) {
  Formula ty = parse_formula(type_text);
  if (ty.kind() != FormulaKind::Sum) {
    throw CheckError("disjunct needs a sum type, got " + ty.to_string());
  }
  DbTerm t = to_debruijn(parse_term(src.text()));
  DisjunctResult r = extract_disjunct(t, ty.left(), ty.right(), parse_strategy(strategy));
  std::cout << (r.left ? "inl " : "inr ") << print_term(r.component) << "\n";
  return kExitOk;
}

int cmd_rewrite(const TermSource& src, const std::string& theory_name, int max_steps, bool trace,
                const std::string& ctx_text, const std::string& type_text) {
  Theory th = parse_strategy(theory_name);
  Context ctx = parse_context(ctx_text);
  EqTerm start = [&] {
    if (!type_text.empty()) {
      // elaborate so rewrites that invent lambdas know their binder types
      Formula ty = parse_formula(type_text);
      DbTerm t = to_debruijn(parse_term(src.text()), canonical_names(ctx.size()));
      Derivation d = check(ctx, Annot::zero, t, ty);
      return eq_from_db(d.term(), ctx.size());
    }
    return eq_from_surface(parse_term_relaxed(src.text()));
  }();
  if (th == Theory::Cbn) start = mark_kapps(start);

  SearchResult result = rewrite_search(th, start, max_steps);
  for (const auto& reached : result.terms) {
    std::cout << print_eq(reached.term) << "\n";
    if (trace) {
      for (const auto& step : reached.trace) {
        std::cout << "  (" << step.rule << ") at [" << step.path
                  << "] -> " << print_eq(step.term_after) << "\n";
      }
    }
  }
  std::cerr << result.terms.size() << " term(s) reachable; "
            << (result.normal_form_reached ? "normal form reached" : "no normal form yet")
            << (result.budget_exhausted ? "; budget exhausted" : "") << "\n";
  return kExitOk;
}

int report_corpus(const CorpusReport& report) {
  int failures = 0;
  for (const auto& e : report.entries) {
    for (const char* side : {"cbv", "cbn"}) {
      bool ok = side == std::string("cbv") ? e.cbv_ok : e.cbn_ok;
      const std::string& got = side == std::string("cbv") ? e.cbv_got : e.cbn_got;
      const std::string& want = side == std::string("cbv") ? e.cbv_expected : e.cbn_expected;
      std::cout << (ok ? "pass" : "FAIL") << "  " << e.id << " " << side;
      if (!ok) {
        ++failures;
        std::cout << "\n      got:      " << got << "\n      expected: " << want;
        if (!e.error.empty()) std::cout << "\n      error: " << e.error;
      }
      std::cout << "\n";
    }
  }
  std::cout << (report.all_ok ? "all entries pass" : "failures: " + std::to_string(failures))
            << "\n";
  return report.all_ok ? kExitOk : kExitCheckFailure;
}

int cmd_corpus_run(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_corpus(run_corpus(parse_corpus(buf.str())));
}

int cmd_gen(std::uint64_t seed, int depth, const std::string& type_text, bool control, int annot,
            const std::string& ctx_text) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.max_depth = depth;
  cfg.target = parse_formula(type_text);
  cfg.allow_control = control;
  cfg.annot = annot == 0 ? Annot::zero : Annot::one;
  Context ctx = parse_context(ctx_text);
  DbTerm t = gen_typed_term(cfg, ctx);
  std::cout << print_term(t, ctx.size()) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"type-directed partial evaluation for shift/reset with sums"};
  app.require_subcommand(1);

  // check
  auto* check_cmd = app.add_subcommand("check", "type-check a term");
  TermSource check_src;
  std::string check_ctx, check_type;
  int check_annot = 0;
  bool check_json = false;
  check_src.attach(check_cmd);
  check_cmd->add_option("--ctx", check_ctx, "context, head first, comma separated");
  check_cmd->add_option("--annot", check_annot, "annotation 0|1")->check(CLI::Range(0, 1));
  check_cmd->add_option("--type", check_type, "goal type")->required();
  check_cmd->add_flag("--json", check_json, "machine-readable report");

  // normalize
  auto* norm_cmd = app.add_subcommand("normalize", "normalize by evaluation");
  TermSource norm_src;
  std::string norm_strategy = "cbv", norm_ctx, norm_type;
  int norm_annot = 0;
  norm_src.attach(norm_cmd);
  norm_cmd->add_option("--strategy", norm_strategy, "cbv|cbn")->required();
  norm_cmd->add_option("--ctx", norm_ctx, "context (cbn only)");
  norm_cmd->add_option("--annot", norm_annot, "annotation 0|1")->check(CLI::Range(0, 1));
  norm_cmd->add_option("--type", norm_type, "term type")->required();

  // disjunct
  auto* dis_cmd = app.add_subcommand("disjunct", "extract the witness branch of a closed sum");
  TermSource dis_src;
  std::string dis_type, dis_strategy = "cbv";
  dis_src.attach(dis_cmd);
  dis_cmd->add_option("--type", dis_type, "sum type A+B")->required();
  dis_cmd->add_option("--strategy", dis_strategy, "cbv|cbn");

  // rewrite
  auto* rw_cmd = app.add_subcommand("rewrite", "bounded equational rewriting");
  TermSource rw_src;
  std::string rw_theory, rw_ctx, rw_type;
  int rw_steps = 0;
  bool rw_trace = false;
  rw_src.attach(rw_cmd);
  rw_cmd->add_option("--theory", rw_theory, "cbv|cbn")->required();
  rw_cmd->add_option("--max-steps", rw_steps, "rewrite depth budget")->required();
  rw_cmd->add_flag("--trace", rw_trace, "print rule traces");
  rw_cmd->add_option("--ctx", rw_ctx, "context for typed rewriting");
  rw_cmd->add_option("--type", rw_type, "elaborate against this type first");

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "golden corpus runner");
  corpus_cmd->require_subcommand(1);
  auto* corpus_run = corpus_cmd->add_subcommand("run", "run a corpus file");
  std::string corpus_path;
  corpus_run->add_option("path", corpus_path, "corpus file")->required();
  auto* corpus_paper_cmd = corpus_cmd->add_subcommand("paper", "run the built-in fixture");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a random well-typed term");
  std::uint64_t gen_seed = 0;
  int gen_depth = 4, gen_annot = 0;
  std::string gen_type, gen_ctx;
  bool gen_control = false;
  gen_cmd->add_option("--seed", gen_seed, "rng seed")->required();
  gen_cmd->add_option("--depth", gen_depth, "maximum depth");
  gen_cmd->add_option("--type", gen_type, "target type")->required();
  gen_cmd->add_flag("--control", gen_control, "allow shift (needs --annot 1)");
  gen_cmd->add_option("--annot", gen_annot, "annotation 0|1")->check(CLI::Range(0, 1));
  gen_cmd->add_option("--ctx", gen_ctx, "context, head first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check_cmd->parsed()) {
      check_src.validate();
      return cmd_check(check_src, check_ctx, check_annot, check_type, check_json);
    }
    if (norm_cmd->parsed()) {
      norm_src.validate();
      return cmd_normalize(norm_src, norm_strategy, norm_ctx, norm_annot, norm_type);
    }
    if (dis_cmd->parsed()) {
      dis_src.validate();
      return cmd_disjunct(dis_src, dis_strategy, dis_type);
    }
    if (rw_cmd->parsed()) {
      rw_src.validate();
      return cmd_rewrite(rw_src, rw_theory, rw_steps, rw_trace, rw_ctx, rw_type);
    }
    if (corpus_run->parsed()) return cmd_corpus_run(corpus_path);
    if (corpus_paper_cmd->parsed()) return report_corpus(run_corpus(paper_corpus()));
    if (gen_cmd->parsed()) {
      return cmd_gen(gen_seed, gen_depth, gen_type, gen_control, gen_annot, gen_ctx);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}

#include "tdpe/parser.hpp"

#include <cassert>
#include <cctype>

namespace tdpe {

SurfaceTerm SurfaceTerm::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = SurfaceKind::Var;
  n->name = std::move(name);
  return SurfaceTerm(std::move(n));
}

SurfaceTerm SurfaceTerm::lam(std::string name, std::optional<Formula> ann, SurfaceTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = SurfaceKind::Lam;
  n->name = std::move(name);
  n->ann = std::move(ann);
  n->child0 = std::move(body);
  return SurfaceTerm(std::move(n));
}

SurfaceTerm SurfaceTerm::app(SurfaceTerm fun, SurfaceTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = SurfaceKind::App;
  n->child0 = std::move(fun);
  n->child1 = std::move(arg);
  return SurfaceTerm(std::move(n));
}

SurfaceTerm SurfaceTerm::inl(SurfaceTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = SurfaceKind::Inl;
  n->child0 = std::move(body);
  return SurfaceTerm(std::move(n));
}

SurfaceTerm SurfaceTerm::inr(SurfaceTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = SurfaceKind::Inr;
  n->child0 = std::move(body);
  return SurfaceTerm(std::move(n));
}

SurfaceTerm SurfaceTerm::case_of(SurfaceTerm scrutinee, std::string lname, SurfaceTerm lbranch,
                                 std::string rname, SurfaceTerm rbranch) {
  auto n = std::make_shared<Node>();
  n->kind = SurfaceKind::Case;
  n->name = std::move(lname);
  n->name2 = std::move(rname);
  n->child0 = std::move(scrutinee);
  n->child1 = std::move(lbranch);
  n->child2 = std::move(rbranch);
  return SurfaceTerm(std::move(n));
}

SurfaceTerm SurfaceTerm::shift(std::string kname, SurfaceTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = SurfaceKind::Shift;
  n->name = std::move(kname);
  n->child0 = std::move(body);
  return SurfaceTerm(std::move(n));
}

SurfaceTerm SurfaceTerm::reset(SurfaceTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = SurfaceKind::Reset;
  n->child0 = std::move(body);
  return SurfaceTerm(std::move(n));
}

SurfaceTerm SurfaceTerm::ascribe(SurfaceTerm body, Formula type) {
  auto n = std::make_shared<Node>();
  n->kind = SurfaceKind::Ascribe;
  n->ann = std::move(type);
  n->child0 = std::move(body);
  return SurfaceTerm(std::move(n));
}

SurfaceTerm SurfaceTerm::at(int line, int col) const {
  auto n = std::make_shared<Node>(*node_);
  n->line = line;
  n->col = col;
  return SurfaceTerm(std::move(n));
}

namespace {

enum class Tok {
  Ident,
  Bot,
  Inl,
  Inr,
  Case,
  Of,
  ShiftKw,
  Backslash,
  Dot,
  Colon,
  LParen,
  RParen,
  LAngle,
  RAngle,
  Pipe,
  Arrow,
  Plus,
  End,
};

struct Token {
  Tok tok;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void error(const std::string& msg) const {
    throw ParseError(msg, current_.line, current_.col);
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      bump();
    }
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= src_.size()) {
      current_.tok = Tok::End;
      current_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (c == '\\') return single(Tok::Backslash);
    if (c == '.') return single(Tok::Dot);
    if (c == ':') return single(Tok::Colon);
    if (c == '(') return single(Tok::LParen);
    if (c == ')') return single(Tok::RParen);
    if (c == '<') return single(Tok::LAngle);
    if (c == '>') return single(Tok::RAngle);
    if (c == '|') return single(Tok::Pipe);
    if (c == '+') return single(Tok::Plus);
    if (c == '-') {
      if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        bump();
        bump();
        current_.tok = Tok::Arrow;
        current_.text = "->";
        return;
      }
      throw ParseError("unexpected character '-'", line_, col_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          word += d;
          bump();
        } else {
          break;
        }
      }
      current_.text = word;
      if (word == "bot") {
        current_.tok = Tok::Bot;
      } else if (word == "inl") {
        current_.tok = Tok::Inl;
      } else if (word == "inr") {
        current_.tok = Tok::Inr;
      } else if (word == "case") {
        current_.tok = Tok::Case;
      } else if (word == "of") {
        current_.tok = Tok::Of;
      } else if (word == "S") {
        current_.tok = Tok::ShiftKw;
      } else {
        current_.tok = Tok::Ident;
      }
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  void single(Tok t) {
    current_.tok = t;
    current_.text = src_[pos_];
    bump();
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token current_;
};

class Parser {
 public:
  Parser(std::string_view src, bool strict) : lex_(src), strict_(strict) {}

  Formula formula_all() {
    Formula f = formula();
    expect_end();
    return f;
  }

  SurfaceTerm term_all() {
    SurfaceTerm t = term();
    expect_end();
    return t;
  }

 private:
  Token expect(Tok t, const std::string& what) {
    if (lex_.peek().tok != t) lex_.error("expected " + what);
    return lex_.next();
  }

  void expect_end() {
    if (lex_.peek().tok != Tok::End) lex_.error("unexpected trailing input");
  }

  Formula formula() {
    Formula lhs = sum_formula();
    if (lex_.peek().tok == Tok::Arrow) {
      lex_.next();
      return Formula::arrow(lhs, formula());
    }
    return lhs;
  }

  Formula sum_formula() {
    Formula f = atom_formula();
    while (lex_.peek().tok == Tok::Plus) {
      lex_.next();
      f = Formula::sum(f, atom_formula());
    }
    return f;
  }

  Formula atom_formula() {
    const Token& t = lex_.peek();
    switch (t.tok) {
      case Tok::Bot:
        lex_.next();
        return Formula::bot();
      case Tok::Ident: {
        return Formula::atom(lex_.next().text);
      }
      case Tok::LParen: {
        lex_.next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        lex_.error("expected a formula");
    }
  }

  SurfaceTerm term() {
    const Token& t = lex_.peek();
    switch (t.tok) {
      case Tok::Backslash: {
        Token start = lex_.next();
        Token name = expect(Tok::Ident, "binder name");
        std::optional<Formula> ann;
        if (lex_.peek().tok == Tok::Colon) {
          lex_.next();
          ann = formula();
        } else if (strict_) {
          throw ParseError("missing binder annotation", start.line, start.col);
        }
        expect(Tok::Dot, "'.'");
        return SurfaceTerm::lam(name.text, std::move(ann), term()).at(start.line, start.col);
      }
      case Tok::ShiftKw: {
        Token start = lex_.next();
        Token name = expect(Tok::Ident, "binder name");
        expect(Tok::Dot, "'.'");
        return SurfaceTerm::shift(name.text, term()).at(start.line, start.col);
      }
      case Tok::Case: {
        Token start = lex_.next();
        SurfaceTerm scrut = app_chain();
        expect(Tok::Of, "'of'");
        expect(Tok::Inl, "'inl'");
        Token lname = expect(Tok::Ident, "binder name");
        expect(Tok::Dot, "'.'");
        SurfaceTerm lbr = term();
        expect(Tok::Pipe, "'|'");
        expect(Tok::Inr, "'inr'");
        Token rname = expect(Tok::Ident, "binder name");
        expect(Tok::Dot, "'.'");
        SurfaceTerm rbr = term();
        return SurfaceTerm::case_of(std::move(scrut), lname.text, std::move(lbr), rname.text,
                                    std::move(rbr))
            .at(start.line, start.col);
      }
      case Tok::Inl:
      case Tok::Inr: {
        Token start = lex_.next();
        SurfaceTerm body = atom();
        SurfaceTerm r = start.tok == Tok::Inl ? SurfaceTerm::inl(std::move(body))
                                              : SurfaceTerm::inr(std::move(body));
        return r.at(start.line, start.col);
      }
      default:
        return app_chain();
    }
  }

  bool starts_atom() const {
    switch (lex_.peek().tok) {
      case Tok::Ident:
      case Tok::LParen:
      case Tok::LAngle:
        return true;
      default:
        return false;
    }
  }

  SurfaceTerm app_chain() {
    if (!starts_atom()) lex_.error("expected a term");
    SurfaceTerm t = atom();
    int line = t.line(), col = t.col();
    while (starts_atom()) {
      t = SurfaceTerm::app(std::move(t), atom()).at(line, col);
    }
    return t;
  }

  SurfaceTerm atom() {
    const Token& t = lex_.peek();
    switch (t.tok) {
      case Tok::Ident: {
        Token tok = lex_.next();
        return SurfaceTerm::var(tok.text).at(tok.line, tok.col);
      }
      case Tok::LAngle: {
        Token start = lex_.next();
        SurfaceTerm body = term();
        expect(Tok::RAngle, "'>'");
        return SurfaceTerm::reset(std::move(body)).at(start.line, start.col);
      }
      case Tok::LParen: {
        Token start = lex_.next();
        SurfaceTerm body = term();
        if (lex_.peek().tok == Tok::Colon) {
          lex_.next();
          Formula ty = formula();
          expect(Tok::RParen, "')'");
          return SurfaceTerm::ascribe(std::move(body), std::move(ty)).at(start.line, start.col);
        }
        expect(Tok::RParen, "')'");
        return body;
      }
      default:
        lex_.error("expected a term");
    }
  }

  Lexer lex_;
  bool strict_;
};

}  // namespace

Formula parse_formula(std::string_view src) { return Parser(src, true).formula_all(); }

SurfaceTerm parse_term(std::string_view src) { return Parser(src, true).term_all(); }

SurfaceTerm parse_term_relaxed(std::string_view src) { return Parser(src, false).term_all(); }

Context parse_context(std::string_view src) {
  std::vector<Formula> head_first;
  size_t start = 0;
  auto flush = [&](size_t end) {
    std::string_view piece = src.substr(start, end - start);
    size_t a = piece.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) {
      if (!head_first.empty() || end != src.size()) {
        throw ParseError("empty context entry", 1, static_cast<int>(start) + 1);
      }
      return;
    }
    head_first.push_back(parse_formula(piece));
  };
  for (size_t i = 0; i < src.size(); ++i) {
    if (src[i] == ',') {
      flush(i);
      start = i + 1;
    }
  }
  if (src.find_first_not_of(" \t\r\n") != std::string_view::npos) flush(src.size());
  return Context::of(std::move(head_first));
}

namespace {

DbTerm to_db(const SurfaceTerm& t, std::vector<std::string>& scope) {
  switch (t.kind()) {
    case SurfaceKind::Var: {
      for (size_t i = 0; i < scope.size(); ++i) {
        // scope is innermost-last
        if (scope[scope.size() - 1 - i] == t.name()) {
          return weaken(DbTerm::hyp(), static_cast<int>(i));
        }
      }
      throw ScopeError("unbound variable: " + t.name());
    }
    case SurfaceKind::Lam: {
      assert(t.annotation().has_value());
      scope.push_back(t.name());
      DbTerm body = to_db(t.body(), scope);
      scope.pop_back();
      return DbTerm::lam(*t.annotation(), std::move(body));
    }
    case SurfaceKind::App:
      return DbTerm::app(to_db(t.fun(), scope), to_db(t.arg(), scope));
    case SurfaceKind::Inl:
      return DbTerm::inl(to_db(t.body(), scope));
    case SurfaceKind::Inr:
      return DbTerm::inr(to_db(t.body(), scope));
    case SurfaceKind::Case: {
      DbTerm scrut = to_db(t.scrutinee(), scope);
      scope.push_back(t.left_name());
      DbTerm lbr = to_db(t.left_branch(), scope);
      scope.pop_back();
      scope.push_back(t.right_name());
      DbTerm rbr = to_db(t.right_branch(), scope);
      scope.pop_back();
      return DbTerm::case_of(std::move(scrut), std::move(lbr), std::move(rbr));
    }
    case SurfaceKind::Shift: {
      scope.push_back(t.name());
      DbTerm body = to_db(t.body(), scope);
      scope.pop_back();
      return DbTerm::shift(std::move(body));
    }
    case SurfaceKind::Reset:
      return DbTerm::reset(to_db(t.body(), scope));
    case SurfaceKind::Ascribe:
      return DbTerm::ascribe(to_db(t.body(), scope), t.ascribed_type());
  }
  throw ScopeError("malformed surface term");
}

}  // namespace

DbTerm to_debruijn(const SurfaceTerm& t, const std::vector<std::string>& ctx) {
  // internal scope is innermost-last
  std::vector<std::string> scope(ctx.rbegin(), ctx.rend());
  return to_db(t, scope);
}

std::vector<std::string> canonical_names(int scope) {
  std::vector<std::string> names;
  for (int i = scope - 1; i >= 0; --i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace tdpe

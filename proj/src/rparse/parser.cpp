#include "codeweft/rparse/parser.hpp"

#include <algorithm>
#include <set>

#include "codeweft/rparse/lexer.hpp"
#include "grammar.hpp"

namespace codeweft::rparse {

namespace {

using namespace grammar;

BinaryOp binary_op(const Token &t) {
  if (t.kind == TokenKind::Infix) return {kSpecial, Assoc::Left};
  if (t.kind == TokenKind::Punct) {
    if (t.text == "(" || t.text == "[" || t.text == "[[") return {kPostfix, Assoc::Left};
    return {};
  }
  if (t.kind != TokenKind::Operator) return {};
  return grammar::binary_op(t.text);
}

int prefix_prec(const Token &t) {
  if (t.kind != TokenKind::Operator) return kNone;
  return grammar::prefix_prec(t.text);
}

constexpr int kMaxDepth = 1500;

std::string describe_unexpected(const Token &t) {
  switch (t.kind) {
    case TokenKind::End: return "unexpected end of input";
    case TokenKind::Newline: return "unexpected end of line";
    case TokenKind::Number: return "unexpected numeric constant";
    case TokenKind::String: return "unexpected string constant";
    case TokenKind::Name: return "unexpected symbol";
    case TokenKind::Infix: return "unexpected SPECIAL";
    default: return "unexpected '" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ProgramParse parse_program();
  Expr parse_single();

 private:
  enum class Ctx { Top, Brace, Paren };

  // token access
  [[nodiscard]] bool newlines_ignored() const { return ctx_.back() == Ctx::Paren; }
  const Token &peek() {
    if (newlines_ignored()) skip_newlines();
    return tokens_[pos_];
  }
  const Token &peek_raw() const { return tokens_[pos_]; }
  const Token &advance() {
    const Token &t = peek();
    if (t.kind == TokenKind::Error) fail_lex(t);
    if (t.kind != TokenKind::End) ++pos_;
    last_ = t.span;
    return t;
  }
  void skip_newlines() {
    while (tokens_[pos_].kind == TokenKind::Newline) ++pos_;
  }
  [[noreturn]] void fail_lex(const Token &t) const { throw ParseError(t.error, t.text, t.span); }
  [[noreturn]] void fail_unexpected(const Token &t, std::string hint = {}) const {
    if (t.kind == TokenKind::Error) fail_lex(t);
    const ErrorCode code = t.kind == TokenKind::End ? ErrorCode::Incomplete : ErrorCode::Syntax;
    throw ParseError(code, describe_unexpected(t), t.span, std::move(hint));
  }
  void expect_punct(std::string_view p) {
    const Token &t = peek();
    if (!t.is_punct(p)) fail_unexpected(t, "expected '" + std::string(p) + "'");
    advance();
  }

  struct CtxGuard {
    Parser &p;
    CtxGuard(Parser &parser, Ctx c) : p(parser) { p.ctx_.push_back(c); }
    ~CtxGuard() { p.ctx_.pop_back(); }
    CtxGuard(const CtxGuard &) = delete;
    CtxGuard &operator=(const CtxGuard &) = delete;
  };

  struct DepthGuard {
    Parser &p;
    explicit DepthGuard(Parser &parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) {
        --p.depth_;
        throw ParseError(ErrorCode::Syntax, "expression nested too deeply", p.peek_raw().span);
      }
    }
    ~DepthGuard() { --p.depth_; }
    DepthGuard(const DepthGuard &) = delete;
    DepthGuard &operator=(const DepthGuard &) = delete;
  };

  // grammar
  Expr parse_expr(int min_prec);
  Expr parse_prefix();
  Expr parse_binary(Expr lhs, const Token &op, const BinaryOp &info);
  Expr parse_postfix(Expr lhs, const Token &open);
  std::vector<Arg> parse_sublist(std::string_view close);
  Expr parse_body();
  Expr parse_paren_group(const Token &open);
  Expr parse_brace(const Token &open);
  Expr parse_if(const Token &kw);
  Expr parse_for(const Token &kw);
  Expr parse_while(const Token &kw);
  Expr parse_repeat(const Token &kw);
  Expr parse_function(const Token &kw);
  Expr parse_dollar_rhs();
  Expr parse_namespaced(const Token &lhs);
  void expect_statement_end();
  void recover(std::size_t stmt_start, std::size_t err_pos);

  Expr finish(Expr e, const SrcSpan &first) const {
    e.span = SrcSpan::cover(first, last_);
    return e;
  }
  static Expr sym_at(std::string name, const SrcSpan &span) {
    Expr e = build::sym(std::move(name));
    e.span = span;
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Ctx> ctx_{Ctx::Top};
  SrcSpan last_;
  int depth_ = 0;
};

Expr Parser::parse_expr(int min_prec) {
  DepthGuard guard(*this);
  Expr lhs = parse_prefix();
  int nonassoc_prec = kNone;
  for (;;) {
    const Token &t = peek();
    const BinaryOp info = binary_op(t);
    if (info.prec == kNone || info.prec <= min_prec) break;
    if (info.assoc == Assoc::NonAssoc && info.prec == nonassoc_prec) fail_unexpected(t);
    const Token op = advance();
    if (info.prec == kPostfix) {
      lhs = parse_postfix(std::move(lhs), op);
      nonassoc_prec = kNone;
      continue;
    }
    lhs = parse_binary(std::move(lhs), op, info);
    nonassoc_prec = info.assoc == Assoc::NonAssoc ? info.prec : kNone;
  }
  return lhs;
}

Expr Parser::parse_binary(Expr lhs, const Token &op, const BinaryOp &info) {
  const SrcSpan first = lhs.span;
  if (op.is_op("$") || op.is_op("@")) {
    Expr rhs = parse_dollar_rhs();
    Expr e = build::call(sym_at(op.text, op.span), {build::arg(std::move(lhs)), build::arg(std::move(rhs))});
    return finish(std::move(e), first);
  }
  skip_newlines();
  const int rhs_prec = info.assoc == Assoc::Right ? info.prec - 1 : info.prec;
  Expr rhs = parse_expr(rhs_prec);
  if (op.is_op("->") || op.is_op("->>")) {
    const std::string name = op.text == "->" ? "<-" : "<<-";
    Expr e = build::call(sym_at(name, op.span), {build::arg(std::move(rhs)), build::arg(std::move(lhs))});
    return finish(std::move(e), first);
  }
  if (op.is_op("|>")) {
    if (!rhs.is_call()) {
      throw ParseError(ErrorCode::Syntax, "the pipe operator requires a function call as RHS",
                       rhs.span);
    }
    const Call &c = rhs.call();
    std::vector<Arg> args;
    args.reserve(c.args.size() + 1);
    args.push_back(build::arg(std::move(lhs)));
    args.insert(args.end(), c.args.begin(), c.args.end());
    Expr e = build::call(*c.callee, std::move(args));
    return finish(std::move(e), first);
  }
  Expr e = build::call(sym_at(op.text, op.span), {build::arg(std::move(lhs)), build::arg(std::move(rhs))});
  return finish(std::move(e), first);
}

Expr Parser::parse_dollar_rhs() {
  const Token &t = peek();
  if (t.kind == TokenKind::Name) {
    const Token tok = advance();
    return sym_at(tok.text, tok.span);
  }
  if (t.kind == TokenKind::String) {
    const Token tok = advance();
    Expr e = build::str(tok.text);
    e.span = tok.span;
    return e;
  }
  fail_unexpected(t, "expected a name or string after '$' or '@'");
}

Expr Parser::parse_namespaced(const Token &lhs) {
  const Token op = advance();
  const Token &t = peek();
  if (t.kind != TokenKind::Name && t.kind != TokenKind::String) {
    fail_unexpected(t, "expected a name after '" + op.text + "'");
  }
  const Token rhs_tok = advance();
  auto operand = [](const Token &tok) {
    Expr e = tok.kind == TokenKind::String ? build::str(tok.text) : build::sym(tok.text);
    e.span = tok.span;
    return e;
  };
  Expr e = build::call(sym_at(op.text, op.span),
                       {build::arg(operand(lhs)), build::arg(operand(rhs_tok))});
  return finish(std::move(e), lhs.span);
}

Expr Parser::parse_prefix() {
  const Token &t = peek();
  if (t.kind == TokenKind::Error) fail_lex(t);

  if (const int prec = prefix_prec(t); prec != kNone) {
    const Token op = advance();
    skip_newlines();
    Expr operand = parse_expr(prec);
    return finish(build::call(sym_at(op.text, op.span), {build::arg(std::move(operand))}),
                  op.span);
  }

  switch (t.kind) {
    case TokenKind::Number: {
      const Token tok = advance();
      Expr e = build::num_text(tok.text);
      e.span = tok.span;
      return e;
    }
    case TokenKind::String: {
      const Token tok = advance();
      if (peek().is_op("::") || peek().is_op(":::")) return parse_namespaced(tok);
      Expr e = build::str(tok.text);
      e.span = tok.span;
      return e;
    }
    case TokenKind::Name: {
      const Token tok = advance();
      if (peek().is_op("::") || peek().is_op(":::")) return parse_namespaced(tok);
      return sym_at(tok.text, tok.span);
    }
    case TokenKind::Keyword: {
      const Token tok = advance();
      const std::string &k = tok.text;
      Expr e;
      if (k == "TRUE" || k == "FALSE") {
        e = build::logical(k == "TRUE");
      } else if (k == "NULL") {
        e = build::null();
      } else if (k == "NA") {
        e = build::na(NaType::Logical);
      } else if (k == "NA_integer_") {
        e = build::na(NaType::Integer);
      } else if (k == "NA_real_") {
        e = build::na(NaType::Real);
      } else if (k == "NA_character_") {
        e = build::na(NaType::Character);
      } else if (k == "NA_complex_") {
        e = build::na(NaType::Complex);
      } else if (k == "Inf" || k == "NaN") {
        e = build::num_text(k);
      } else if (k == "break" || k == "next") {
        e = build::call(sym_at(k, tok.span), {});
      } else if (k == "if") {
        return parse_if(tok);
      } else if (k == "for") {
        return parse_for(tok);
      } else if (k == "while") {
        return parse_while(tok);
      } else if (k == "repeat") {
        return parse_repeat(tok);
      } else if (k == "function") {
        return parse_function(tok);
      } else {
        fail_unexpected(tok);
      }
      e.span = tok.span;
      return e;
    }
    case TokenKind::Punct: {
      if (t.is_punct("(")) {
        const Token open = advance();
        return parse_paren_group(open);
      }
      if (t.is_punct("{")) {
        const Token open = advance();
        return parse_brace(open);
      }
      fail_unexpected(t);
    }
    default:
      fail_unexpected(t);
  }
}

Expr Parser::parse_paren_group(const Token &open) {
  Expr inner;
  {
    CtxGuard ctx(*this, Ctx::Paren);
    inner = parse_expr(kNone);
    expect_punct(")");
  }
  return finish(build::call(sym_at("(", open.span), {build::arg(std::move(inner))}), open.span);
}

Expr Parser::parse_brace(const Token &open) {
  std::vector<Arg> stmts;
  {
    CtxGuard ctx(*this, Ctx::Brace);
    for (;;) {
      const Token &t = peek_raw();
      if (t.kind == TokenKind::Newline || t.is_punct(";")) {
        ++pos_;
        continue;
      }
      if (t.is_punct("}")) {
        advance();
        break;
      }
      stmts.push_back(build::arg(parse_expr(kNone)));
      const Token &after = peek_raw();
      if (after.kind == TokenKind::Newline || after.is_punct(";") || after.is_punct("}")) continue;
      fail_unexpected(after, "expected newline, ';' or '}'");
    }
  }
  return finish(build::call(sym_at("{", open.span), std::move(stmts)), open.span);
}

Expr Parser::parse_body() {
  skip_newlines();
  return parse_expr(kNone);
}

Expr Parser::parse_if(const Token &kw) {
  Expr cond;
  {
    skip_newlines();
    expect_punct("(");
    CtxGuard ctx(*this, Ctx::Paren);
    cond = parse_expr(kNone);
    expect_punct(")");
  }
  Expr yes = parse_body();
  std::vector<Arg> args{build::arg(std::move(cond)), build::arg(std::move(yes))};

  // Inside braces a newline may separate the consequent from `else`;
  // at top level the expression is already complete.
  const std::size_t save = pos_;
  if (ctx_.back() == Ctx::Brace) skip_newlines();
  if (peek().is_keyword("else")) {
    advance();
    args.push_back(build::arg(parse_body()));
  } else {
    pos_ = save;
  }
  return finish(build::call(sym_at("if", kw.span), std::move(args)), kw.span);
}

Expr Parser::parse_for(const Token &kw) {
  Expr var;
  Expr seq;
  {
    skip_newlines();
    expect_punct("(");
    CtxGuard ctx(*this, Ctx::Paren);
    const Token &name = peek();
    if (name.kind != TokenKind::Name) fail_unexpected(name, "expected loop variable");
    const Token var_tok = advance();
    var = sym_at(var_tok.text, var_tok.span);
    if (!peek().is_keyword("in")) fail_unexpected(peek(), "expected 'in'");
    advance();
    seq = parse_expr(kNone);
    expect_punct(")");
  }
  Expr body = parse_body();
  return finish(build::call(sym_at("for", kw.span), {build::arg(std::move(var)),
                                                     build::arg(std::move(seq)),
                                                     build::arg(std::move(body))}),
                kw.span);
}

Expr Parser::parse_while(const Token &kw) {
  Expr cond;
  {
    skip_newlines();
    expect_punct("(");
    CtxGuard ctx(*this, Ctx::Paren);
    cond = parse_expr(kNone);
    expect_punct(")");
  }
  Expr body = parse_body();
  return finish(build::call(sym_at("while", kw.span), {build::arg(std::move(cond)),
                                                       build::arg(std::move(body))}),
                kw.span);
}

Expr Parser::parse_repeat(const Token &kw) {
  Expr body = parse_body();
  return finish(build::call(sym_at("repeat", kw.span), {build::arg(std::move(body))}), kw.span);
}

Expr Parser::parse_function(const Token &kw) {
  std::vector<Arg> args;
  {
    skip_newlines();
    expect_punct("(");
    CtxGuard ctx(*this, Ctx::Paren);
    std::set<std::string> seen;
    if (!peek().is_punct(")")) {
      for (;;) {
        const Token &name = peek();
        if (name.kind != TokenKind::Name) fail_unexpected(name, "expected formal argument name");
        const Token name_tok = advance();
        if (!seen.insert(name_tok.text).second) {
          throw ParseError(ErrorCode::Syntax,
                           "repeated formal argument '" + name_tok.text + "'", name_tok.span);
        }
        Expr def = build::missing();
        def.span = name_tok.span;
        if (peek().is_op("=")) {
          advance();
          def = parse_expr(kNone);
        }
        args.push_back(build::arg(name_tok.text, std::move(def)));
        if (peek().is_punct(",")) {
          advance();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
  }
  args.push_back(build::arg(parse_body()));
  return finish(build::call(sym_at("function", kw.span), std::move(args)), kw.span);
}

std::vector<Arg> Parser::parse_sublist(std::string_view close) {
  std::vector<Arg> args;
  auto at_close = [&] { return peek().is_punct(close); };
  auto at_sep = [&] { return peek().is_punct(",") || at_close(); };
  auto missing_here = [&] {
    Expr m = build::missing();
    m.span = peek().span;
    m.span.end_offset = m.span.begin_offset;
    return m;
  };
  for (;;) {
    if (at_sep()) {
      args.push_back(build::arg(missing_here()));
    } else {
      const Token &t = peek();
      const bool can_tag = t.kind == TokenKind::Name || t.kind == TokenKind::String ||
                           t.is_keyword("NULL");
      if (can_tag && tokens_[pos_ + 1].is_op("=")) {
        const Token tag = advance();
        advance();  // '='
        if (at_sep()) {
          args.push_back(build::arg(tag.text, missing_here()));
        } else {
          args.push_back(build::arg(tag.text, parse_expr(kNone)));
        }
      } else {
        args.push_back(build::arg(parse_expr(kNone)));
      }
    }
    if (peek().is_punct(",")) {
      advance();
      continue;
    }
    if (at_close()) break;
    fail_unexpected(peek(), "expected ',' or '" + std::string(close) + "'");
  }
  return args;
}

Expr Parser::parse_postfix(Expr lhs, const Token &open) {
  const SrcSpan first = lhs.span;
  CtxGuard ctx(*this, Ctx::Paren);
  if (open.is_punct("(")) {
    std::vector<Arg> args;
    if (peek().is_punct(")")) {
      advance();
    } else {
      args = parse_sublist(")");
      advance();
    }
    // A string in call position names the function: "f"(x) is f(x).
    if (const auto *s = std::get_if<StringLit>(&lhs.node)) {
      lhs = sym_at(s->value, lhs.span);
    }
    return finish(build::call(std::move(lhs), std::move(args)), first);
  }
  std::vector<Arg> args{build::arg(std::move(lhs))};
  std::vector<Arg> subs = parse_sublist("]");
  args.insert(args.end(), std::make_move_iterator(subs.begin()),
              std::make_move_iterator(subs.end()));
  advance();
  if (open.is_punct("[[")) expect_punct("]");
  return finish(build::call(sym_at(open.text, open.span), std::move(args)), first);
}

void Parser::expect_statement_end() {
  const Token &t = peek_raw();
  if (t.kind == TokenKind::Newline || t.kind == TokenKind::End || t.is_punct(";")) return;
  fail_unexpected(t);
}

void Parser::recover(std::size_t stmt_start, std::size_t err_pos) {
  int depth = 0;
  std::size_t i = stmt_start;
  for (; tokens_[i].kind != TokenKind::End; ++i) {
    const Token &t = tokens_[i];
    if (t.kind == TokenKind::Punct) {
      if (t.text == "(" || t.text == "{" || t.text == "[") {
        ++depth;
        continue;
      }
      if (t.text == "[[") {
        depth += 2;
        continue;
      }
      if (t.text == ")" || t.text == "}" || t.text == "]") {
        depth = std::max(0, depth - 1);
        continue;
      }
    }
    if (i >= err_pos && depth == 0 && (t.kind == TokenKind::Newline || t.is_punct(";"))) break;
  }
  pos_ = i;
}

ProgramParse Parser::parse_program() {
  ProgramParse out;
  for (;;) {
    while (peek_raw().kind == TokenKind::Newline) ++pos_;
    if (peek_raw().kind == TokenKind::End) break;
    const std::size_t start = pos_;
    try {
      Expr e = parse_expr(kNone);
      expect_statement_end();
      out.exprs.push_back(std::move(e));
      if (peek_raw().is_punct(";")) {
        ++pos_;
        // `x;` followed by a newline or end is fine; `;;` is not
        const Token &next = peek_raw();
        if (next.is_punct(";")) fail_unexpected(next);
      }
    } catch (const ParseError &err) {
      out.errors.push_back(Diagnostic{err.code(), err.what(), err.span(), err.hint()});
      std::size_t err_pos = pos_;
      for (std::size_t i = start; i < tokens_.size(); ++i) {
        if (tokens_[i].span.begin_offset >= err.span().begin_offset) {
          err_pos = std::max(err_pos, i);
          break;
        }
      }
      ctx_.assign(1, Ctx::Top);
      depth_ = 0;
      recover(start, err_pos);
      if (peek_raw().is_punct(";")) ++pos_;
    }
  }
  return out;
}

Expr Parser::parse_single() {
  ProgramParse prog = parse_program();
  if (!prog.errors.empty()) {
    const Diagnostic &d = prog.errors.front();
    throw ParseError(d.code, d.message, d.span, d.hint);
  }
  if (prog.exprs.empty()) {
    throw ParseError(ErrorCode::Syntax, "no expression found", SrcSpan{});
  }
  if (prog.exprs.size() > 1) {
    throw ParseError(ErrorCode::MultipleExpressions,
                     "expected one expression, found " + std::to_string(prog.exprs.size()),
                     prog.exprs[1].span);
  }
  return std::move(prog.exprs.front());
}

std::vector<Token> lex_checked(std::string_view text) {
  if (const auto bad = find_invalid_utf8(text); bad != std::string_view::npos) {
    throw ParseError(ErrorCode::InvalidUtf8, "input is not valid UTF-8",
                     SrcSpan{1, 1, 1, 1, bad, bad + 1});
  }
  return Lexer(text).run();
}

}  // namespace

ProgramParse parse_program(std::string_view text) {
  std::vector<Token> tokens;
  try {
    tokens = lex_checked(text);
  } catch (const ParseError &err) {
    ProgramParse out;
    out.errors.push_back(Diagnostic{err.code(), err.what(), err.span(), err.hint()});
    return out;
  }
  return Parser(std::move(tokens)).parse_program();
}

Expr parse_expr(std::string_view text) { return Parser(lex_checked(text)).parse_single(); }

Completeness check_complete(std::string_view text) {
  const ProgramParse prog = parse_program(text);
  if (prog.errors.empty()) return Completeness::Complete;
  for (const Diagnostic &d : prog.errors) {
    const bool open_at_end =
        d.code == ErrorCode::Incomplete ||
        ((d.code == ErrorCode::UnterminatedString || d.code == ErrorCode::UnterminatedBacktick) &&
         d.span.end_offset >= text.size());
    if (!open_at_end) return Completeness::Invalid;
  }
  return Completeness::Incomplete;
}

}  // namespace codeweft::rparse

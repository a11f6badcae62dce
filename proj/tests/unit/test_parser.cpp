#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>

#include "codeweft/rparse/ast_json.hpp"
#include "codeweft/rparse/deparse.hpp"
#include "codeweft/rparse/parser.hpp"

using namespace codeweft;
using namespace codeweft::rparse;
namespace b = codeweft::rparse::build;

namespace {

ErrorCode parse_error(std::string_view text) {
  try {
    parse_expr(text);
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected a parse error for: " << text);
  return ErrorCode::Io;
}

const char *kExample6 =
    "4 + 4\n"
    "\"wow!\"\n"
    "mean(1:10)\n"
    "stop(\"Error!\")\n"
    "warning(\"Warning!\")\n"
    "message(\"Hello?\")\n"
    "cat(\"Welcome!\")\n";

}  // namespace

TEST_CASE("single binary expression") {
  Expr e = parse_expr("1 + 2");
  Expr expected = b::call("+", {b::arg(b::num(1)), b::arg(b::num(2))});
  CHECK(structurally_equal(e, expected));
  CHECK(e.is_call());
}

TEST_CASE("pipe equals its prefix form") {
  Expr piped = parse_expr("starwars %>%\n  select(height, mass)");
  Expr prefix = parse_expr("`%>%`(starwars, select(height, mass))");
  CHECK(structurally_equal(piped, prefix));
  Expr expected = b::call(
      "%>%", {b::arg(b::sym("starwars")),
              b::arg(b::call("select", {b::arg(b::sym("height")), b::arg(b::sym("mass"))}))});
  CHECK(structurally_equal(piped, expected));
}

TEST_CASE("sum over a range") {
  Expr expected = b::call("sum", {b::arg(b::call(":", {b::arg(b::num(1)), b::arg(b::num(10))}))});
  CHECK(structurally_equal(parse_expr("sum(1:10)"), expected));
}

TEST_CASE("bare symbol") {
  Expr e = parse_expr("x");
  CHECK(e.is_symbol("x"));
  CHECK_FALSE(e.is_call());
}

TEST_CASE("nested subset assignment") {
  Expr expected = b::call(
      "<-", {b::arg(b::call("[[", {b::arg(b::call("$", {b::arg(b::sym("a")), b::arg(b::sym("b"))})),
                                   b::arg(b::num(1))})),
             b::arg(b::call("f", {b::arg("y", b::num(2))}))});
  CHECK(structurally_equal(parse_expr("a$b[[1]] <- f(y = 2)"), expected));
}

TEST_CASE("seven expression code string") {
  ProgramParse p = parse_program(kExample6);
  CHECK(p.errors.empty());
  REQUIRE(p.exprs.size() == 7);
  for (std::size_t i = 0; i < p.exprs.size(); ++i) {
    if (i == 1) {
      CHECK(p.exprs[i].kind() == ExprKind::String);
    } else {
      CHECK(p.exprs[i].is_call());
    }
    CHECK(p.exprs[i].span.start_line == static_cast<int>(i) + 1);
  }
}

TEST_CASE("literals") {
  CHECK(parse_expr("NULL").kind() == ExprKind::Null);
  CHECK(parse_expr("TRUE").kind() == ExprKind::Logical);
  CHECK(parse_expr("NA_character_").kind() == ExprKind::Na);
  CHECK(parse_expr("'a'").kind() == ExprKind::String);
  const auto &n = std::get<NumLit>(parse_expr("10L").node);
  CHECK(n.value == 10.0);
  CHECK(n.suffix == NumSuffix::Integer);
  CHECK(n.text == "10L");
  const auto &h = std::get<NumLit>(parse_expr("0xFF").node);
  CHECK(h.value == 255.0);
  const auto &inf = std::get<NumLit>(parse_expr("Inf").node);
  CHECK(std::isinf(inf.value));
  const auto &frac = std::get<NumLit>(parse_expr("1.5L").node);
  CHECK(frac.suffix == NumSuffix::None);
}

TEST_CASE("semicolons and newlines separate expressions") {
  CHECK(parse_program("a; b; c").exprs.size() == 3);
  CHECK(parse_program("a\n\n\nb").exprs.size() == 2);
  CHECK(parse_program("a;").exprs.size() == 1);
  CHECK(parse_program("").exprs.empty());
  CHECK(parse_program("# just a comment\n").exprs.empty());
}

TEST_CASE("pending constructs continue across lines") {
  CHECK(parse_program("f(\n1,\n2\n)").exprs.size() == 1);
  CHECK(parse_program("x <-\n  1").exprs.size() == 1);
  CHECK(parse_program("{\n a\n b\n}").exprs.size() == 1);
  CHECK(parse_program("a\n+ b").exprs.size() == 2);
  CHECK(parse_program("if (a) b\nelse c").errors.size() == 1);
  CHECK(parse_program("{if (a) b\nelse c}").errors.empty());
}

TEST_CASE("associativity") {
  CHECK(deparse(parse_expr("`^`(a, `^`(b, c))")) == "a^b^c");
  CHECK(structurally_equal(parse_expr("a^b^c"), parse_expr("`^`(a, `^`(b, c))")));
  CHECK(structurally_equal(parse_expr("a <- b <- c"), parse_expr("`<-`(a, `<-`(b, c))")));
  CHECK(structurally_equal(parse_expr("a = b = c"), parse_expr("`=`(a, `=`(b, c))")));
  CHECK(structurally_equal(parse_expr("a - b - c"), parse_expr("`-`(`-`(a, b), c)")));
  CHECK(structurally_equal(parse_expr("-a * b"), parse_expr("`*`(`-`(a), b)")));
  CHECK(structurally_equal(parse_expr("-a ^ b"), parse_expr("`-`(`^`(a, b))")));
}

TEST_CASE("statement-level equals is an assignment call") {
  Expr e = parse_expr("x = 1");
  REQUIRE(e.is_call());
  CHECK(e.callee().is_symbol("="));
  Expr named = parse_expr("f(x = 1)");
  REQUIRE(named.call().args.size() == 1);
  CHECK(named.call().args[0].name == std::optional<std::string>{"x"});
}

TEST_CASE("function definitions") {
  Expr e = parse_expr("function(x, y = 2) x + y");
  REQUIRE(e.is_call());
  CHECK(e.callee().is_symbol("function"));
  REQUIRE(e.call().args.size() == 3);
  CHECK(e.call().args[0].name == std::optional<std::string>{"x"});
  CHECK(e.call().args[0].value.is_missing_arg());
  CHECK(parse_error("function(x, x) 1") == ErrorCode::Syntax);
  CHECK(parse_error("function(1) 1") == ErrorCode::Syntax);
}

TEST_CASE("syntax errors") {
  CHECK(parse_error("a < b < c") == ErrorCode::Syntax);
  CHECK(parse_error("a == b != c") == ErrorCode::Syntax);
  CHECK(parse_error("a b") == ErrorCode::Syntax);
  CHECK(parse_error(")") == ErrorCode::Syntax);
  CHECK(parse_error("f(x))") == ErrorCode::Syntax);
  CHECK(parse_error("a$1") == ErrorCode::Syntax);
  CHECK(parse_error("1::a") == ErrorCode::Syntax);
  CHECK(parse_error("else 1") == ErrorCode::Syntax);
  CHECK(parse_error("x <- ") == ErrorCode::Incomplete);
  CHECK(parse_error("f(1, 2") == ErrorCode::Incomplete);
  CHECK(parse_error("") == ErrorCode::Syntax);
  CHECK(parse_error("a; b") == ErrorCode::MultipleExpressions);
  CHECK(parse_error("a\nb") == ErrorCode::MultipleExpressions);
}

TEST_CASE("syntax error carries span and hint") {
  try {
    parse_expr("f(a b)");
    FAIL("expected error");
  } catch (const ParseError &e) {
    CHECK(e.code() == ErrorCode::Syntax);
    CHECK(e.span().start_line == 1);
    CHECK(e.span().start_col == 5);
    CHECK_FALSE(e.hint().empty());
  }
}

TEST_CASE("recovery resumes at the next top-level boundary") {
  ProgramParse p = parse_program("x <- 1\ny <- (2 +\n  ))\nz <- f(3)\nw w\nv");
  REQUIRE(p.exprs.size() == 3);
  CHECK(p.errors.size() == 2);
  CHECK(deparse(p.exprs[0]) == "x <- 1");
  CHECK(deparse(p.exprs[1]) == "z <- f(3)");
  CHECK(deparse(p.exprs[2]) == "v");
  CHECK(p.exprs[1].span.start_line == 4);
  CHECK(p.errors[0].span.start_line == 3);
  CHECK(p.errors[1].span.start_line == 5);
}

TEST_CASE("recovery scan respects brackets") {
  ProgramParse p = parse_program("f(a b,\n c)\ng()");
  REQUIRE(p.exprs.size() == 1);
  CHECK(deparse(p.exprs[0]) == "g()");
  CHECK(p.errors.size() == 1);
}

TEST_CASE("lexical errors surface as diagnostics") {
  ProgramParse p = parse_program("a\n\"open");
  CHECK(p.exprs.size() == 1);
  REQUIRE(p.errors.size() == 1);
  CHECK(p.errors[0].code == ErrorCode::UnterminatedString);
  ProgramParse bad = parse_program("x <- \"\xe9\"");
  REQUIRE(bad.errors.size() == 1);
  CHECK(bad.errors[0].code == ErrorCode::InvalidUtf8);
}

TEST_CASE("spans cover each top-level expression") {
  std::string text = "x <- f(1,\n  2)\n  y";
  ProgramParse p = parse_program(text);
  REQUIRE(p.exprs.size() == 2);
  const SrcSpan &s = p.exprs[0].span;
  CHECK(s.start_line == 1);
  CHECK(s.start_col == 1);
  CHECK(s.end_line == 2);
  CHECK(s.end_col == 4);
  CHECK(text.substr(s.begin_offset, s.end_offset - s.begin_offset) == "x <- f(1,\n  2)");
  CHECK(p.exprs[1].span.start_line == 3);
  CHECK(p.exprs[1].span.start_col == 3);
}

TEST_CASE("every nested span lies within the input") {
  std::string text = "a$b[[1]] <- function(x, y = 2) {\n  if (x) y else -x^2\n}\nz %>% f(g = ~ .x)";
  ProgramParse p = parse_program(text);
  REQUIRE(p.errors.empty());
  std::function<void(const Expr &)> walk = [&](const Expr &e) {
    CHECK(e.span.begin_offset <= e.span.end_offset);
    CHECK(e.span.end_offset <= text.size());
    CHECK(e.span.start_line <= e.span.end_line);
    if (e.span.start_line == e.span.end_line) CHECK(e.span.start_col <= e.span.end_col);
    if (e.is_call()) {
      walk(e.callee());
      for (const Arg &a : e.call().args) walk(a.value);
    }
  };
  for (const Expr &e : p.exprs) walk(e);
}

TEST_CASE("completeness check") {
  CHECK(check_complete("f(1)") == Completeness::Complete);
  CHECK(check_complete("") == Completeness::Complete);
  CHECK(check_complete("f(") == Completeness::Incomplete);
  CHECK(check_complete("x <-") == Completeness::Incomplete);
  CHECK(check_complete("{\n a") == Completeness::Incomplete);
  CHECK(check_complete("\"abc") == Completeness::Incomplete);
  CHECK(check_complete("`abc") == Completeness::Incomplete);
  CHECK(check_complete("if (a) b") == Completeness::Complete);
  CHECK(check_complete("f(1))") == Completeness::Invalid);
  CHECK(check_complete("a b") == Completeness::Invalid);
}

TEST_CASE("deep nesting is rejected rather than crashing") {
  std::string deep(100000, '(');
  ProgramParse p = parse_program(deep + "1" + std::string(100000, ')'));
  CHECK(p.exprs.empty());
  CHECK(p.errors.size() == 1);
  std::string ok = std::string(200, '(') + "1" + std::string(200, ')');
  CHECK(parse_expr(ok).is_call());
}

TEST_CASE("json dump") {
  auto j = to_json(parse_expr("f(x = 1L, 'a')"));
  CHECK(j.dump() ==
        R"({"type":"call","fn":{"type":"symbol","name":"f"},"args":[{"name":"x","value":{"type":"number","value":1.0,"suffix":"L"}},{"value":{"type":"string","value":"a"}}]})");
  auto s = to_json(parse_expr("x"), AstJsonOptions{true, false});
  CHECK(s["span"] == nlohmann::ordered_json::array({1, 1, 1, 1}));
}

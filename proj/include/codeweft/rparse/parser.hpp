#pragma once

#include <string_view>
#include <vector>

#include "codeweft/rparse/diagnostic.hpp"
#include "codeweft/rparse/expr.hpp"

namespace codeweft::rparse {

struct ProgramParse {
  // Top-level expressions in source order; each carries its own span.
  std::vector<Expr> exprs;
  // One entry per top-level expression that failed to parse.
  std::vector<Diagnostic> errors;
};

// Parses every top-level expression. A syntax error skips to the next
// top-level boundary (newline or ';' with all delimiters balanced) and
// parsing resumes from there.
ProgramParse parse_program(std::string_view text);

// Parses exactly one expression; throws ParseError otherwise
// (MultipleExpressions when more than one is present).
Expr parse_expr(std::string_view text);

enum class Completeness { Complete, Incomplete, Invalid };

// REPL-style check: Incomplete when the input ends while an operator,
// delimiter, or quoted literal is still open.
Completeness check_complete(std::string_view text);

}  // namespace codeweft::rparse

#pragma once

#include <string>

#include "codeweft/rparse/expr.hpp"

namespace codeweft::rparse {

// Canonical source text for `expr`. Operators print infix with R's usual
// spacing; wherever infix printing would re-parse to a different tree the
// call is printed in prefix form instead (`+`(a, b) * c), so
// parse_expr(deparse(e)) is structurally equal to e for every parsed tree.
// Braces print across lines with four-space indentation.
std::string deparse(const Expr &expr);

// Quotes a symbol with backticks unless it is syntactic.
std::string quote_symbol(const std::string &name);

// Double-quoted R string literal with escapes.
std::string quote_string(const std::string &value);

}  // namespace codeweft::rparse

#pragma once

#include <nlohmann/json.hpp>

#include "codeweft/rparse/expr.hpp"

namespace codeweft::rparse {

struct AstJsonOptions {
  bool spans = false;        // add "span": [start_line, start_col, end_line, end_col]
  bool number_text = false;  // add the literal spelling of numbers
};

// Expression dump used by `parse --json-ast` and by the golden parse fixtures:
//   {"type":"call","fn":<expr>,"args":[{"name":"x","value":<expr>}, ...]}
//   {"type":"symbol","name":"x"}   {"type":"string","value":"s"}
//   {"type":"number","value":1,"suffix":"L"}   {"type":"logical","value":true}
//   {"type":"na","na":"NA_integer_"}   {"type":"null"}
// Unnamed arguments omit "name"; non-finite numbers store "Inf"/"NaN" strings.
nlohmann::ordered_json to_json(const Expr &expr, const AstJsonOptions &options = {});

}  // namespace codeweft::rparse

#pragma once

#include <string>

#include "codeweft/rparse/expr.hpp"

namespace codeweft {

// One top-level expression with its provenance.
struct CallRecord {
  std::string file;  // path, URL, or "<string>"
  int line = 1;      // 1-based start line
  rparse::Expr expr;
  std::string text;  // source text of the expression
};

}  // namespace codeweft

#pragma once

#include <string>
#include <vector>

#include "codeweft/corpus/call_record.hpp"

namespace codeweft::unnest {

// One flattened call: the `func`/`args` row.
struct FuncToken {
  std::string func;
  std::vector<rparse::Arg> args;
  std::string file;
  int line = 1;
  int depth = 0;  // 0 for the top-level call
};

// Name of a call's function: the callee symbol, or the deparsed callee
// when it is not a symbol (`f()()` gives "f()", `pkg::fn(x)` gives "pkg::fn").
std::string func_name(const rparse::Expr &call);

// One token per Call node, depth-first pre-order: the call itself, then
// calls inside its callee, then calls inside each argument left to right.
std::vector<FuncToken> unnest_calls(const CallRecord &record);

// unnest_calls over every record, in record order.
std::vector<FuncToken> unnest_corpus(const std::vector<CallRecord> &records);

// Deparsed arguments joined with "; ". Named arguments print as
// `name = value`.
std::string format_args(const std::vector<rparse::Arg> &args);

}  // namespace codeweft::unnest

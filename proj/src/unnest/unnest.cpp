#include "codeweft/unnest/unnest.hpp"

#include "codeweft/rparse/deparse.hpp"

namespace codeweft::unnest {

using rparse::Arg;
using rparse::Expr;

std::string func_name(const Expr &call) {
  if (const std::string *name = call.callee_name()) return *name;
  return rparse::deparse(call.callee());
}

namespace {

void walk(const Expr &e, int depth, const CallRecord &record, std::vector<FuncToken> &out) {
  if (!e.is_call()) return;
  const auto &c = e.call();
  out.push_back(FuncToken{func_name(e), c.args, record.file, record.line, depth});
  walk(*c.callee, depth + 1, record, out);
  for (const Arg &a : c.args) walk(a.value, depth + 1, record, out);
}

}  // namespace

std::vector<FuncToken> unnest_calls(const CallRecord &record) {
  std::vector<FuncToken> out;
  walk(record.expr, 0, record, out);
  return out;
}

std::vector<FuncToken> unnest_corpus(const std::vector<CallRecord> &records) {
  std::vector<FuncToken> out;
  for (const CallRecord &r : records) {
    auto tokens = unnest_calls(r);
    out.insert(out.end(), std::make_move_iterator(tokens.begin()),
               std::make_move_iterator(tokens.end()));
  }
  return out;
}

std::string format_args(const std::vector<Arg> &args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += "; ";
    const Arg &a = args[i];
    if (a.name) {
      out += rparse::quote_symbol(*a.name) + " =";
      if (!a.value.is_missing_arg()) out += " " + rparse::deparse(a.value);
    } else {
      out += rparse::deparse(a.value);
    }
  }
  return out;
}

}  // namespace codeweft::unnest

#include "codeweft/rparse/ast_json.hpp"

#include <cmath>

namespace codeweft::rparse {

namespace {

const char *suffix_name(NumSuffix s) {
  switch (s) {
    case NumSuffix::Integer: return "L";
    case NumSuffix::Imaginary: return "i";
    case NumSuffix::None: break;
  }
  return "";
}

}  // namespace

nlohmann::ordered_json to_json(const Expr &expr, const AstJsonOptions &options) {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto &node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NullLit>) {
          j["type"] = "null";
        } else if constexpr (std::is_same_v<T, LogicalLit>) {
          j["type"] = "logical";
          j["value"] = node.value;
        } else if constexpr (std::is_same_v<T, NaLit>) {
          j["type"] = "na";
          j["na"] = std::string(na_keyword(node.type));
        } else if constexpr (std::is_same_v<T, NumLit>) {
          j["type"] = "number";
          if (std::isnan(node.value)) {
            j["value"] = "NaN";
          } else if (std::isinf(node.value)) {
            j["value"] = node.value > 0 ? "Inf" : "-Inf";
          } else {
            j["value"] = node.value;
          }
          j["suffix"] = suffix_name(node.suffix);
          if (options.number_text) j["text"] = node.text;
        } else if constexpr (std::is_same_v<T, StringLit>) {
          j["type"] = "string";
          j["value"] = node.value;
        } else if constexpr (std::is_same_v<T, SymbolRef>) {
          j["type"] = "symbol";
          j["name"] = node.name;
        } else {
          j["type"] = "call";
          j["fn"] = to_json(*node.callee, options);
          auto args = nlohmann::ordered_json::array();
          for (const Arg &a : node.args) {
            nlohmann::ordered_json ja;
            if (a.name) ja["name"] = *a.name;
            ja["value"] = to_json(a.value, options);
            args.push_back(std::move(ja));
          }
          j["args"] = std::move(args);
        }
      },
      expr.node);
  if (options.spans) {
    const SrcSpan &s = expr.span;
    j["span"] = {s.start_line, s.start_col, s.end_line, s.end_col};
  }
  return j;
}

}  // namespace codeweft::rparse

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "codeweft/rparse/span.hpp"

namespace codeweft::rparse {

struct NullLit {};

struct LogicalLit {
  bool value = false;
};

enum class NaType { Logical, Integer, Real, Character, Complex };

struct NaLit {
  NaType type = NaType::Logical;
};

enum class NumSuffix { None, Integer, Imaginary };

// Literal text is kept so deparse reproduces the source spelling; equality
// compares the parsed value and suffix only.
struct NumLit {
  std::string text;
  double value = 0.0;
  NumSuffix suffix = NumSuffix::None;
};

struct StringLit {
  std::string value;
};

// An empty name is R's missing argument (as in `x[1, ]` or `function(a)`).
struct SymbolRef {
  std::string name;
};

struct Expr;
struct Arg;

struct Call {
  std::shared_ptr<const Expr> callee;
  std::vector<Arg> args;
};

enum class ExprKind { Null, Logical, Na, Number, String, Symbol, Call };

struct Expr {
  std::variant<NullLit, LogicalLit, NaLit, NumLit, StringLit, SymbolRef, Call> node;
  SrcSpan span;

  [[nodiscard]] ExprKind kind() const { return static_cast<ExprKind>(node.index()); }
  [[nodiscard]] bool is_call() const { return std::holds_alternative<Call>(node); }
  [[nodiscard]] bool is_symbol() const { return std::holds_alternative<SymbolRef>(node); }
  [[nodiscard]] bool is_symbol(std::string_view name) const {
    const auto *s = std::get_if<SymbolRef>(&node);
    return s != nullptr && s->name == name;
  }
  [[nodiscard]] bool is_missing_arg() const { return is_symbol(""); }
  [[nodiscard]] const Call &call() const { return std::get<Call>(node); }
  [[nodiscard]] const Expr &callee() const { return *call().callee; }
  // Callee symbol name, or nullptr when the callee is not a symbol.
  [[nodiscard]] const std::string *callee_name() const;
};

struct Arg {
  std::optional<std::string> name;
  Expr value;
};

// Structural equality ignoring spans and numeric spelling.
bool structurally_equal(const Expr &a, const Expr &b);
bool structurally_equal(const Arg &a, const Arg &b);

// Number of Call nodes in the tree, callees included.
std::size_t count_calls(const Expr &e);

std::string_view na_keyword(NaType type);

// Builders used by tests and generators; spans are left default.
namespace build {

Expr null();
Expr logical(bool value);
Expr na(NaType type = NaType::Logical);
Expr num(double value, NumSuffix suffix = NumSuffix::None);
Expr num_text(std::string text);  // parses the spelling, e.g. "1L", "0x10", "1e-3"
Expr str(std::string value);
Expr sym(std::string name);
Expr missing();
Expr call(Expr callee, std::vector<Arg> args);
Expr call(std::string fn, std::vector<Arg> args);
Arg arg(Expr value);
Arg arg(std::string name, Expr value);

}  // namespace build

}  // namespace codeweft::rparse

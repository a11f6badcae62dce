#include "codeweft/rparse/expr.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace codeweft::rparse {

const std::string *Expr::callee_name() const {
  if (!is_call()) return nullptr;
  const auto *s = std::get_if<SymbolRef>(&callee().node);
  return s != nullptr ? &s->name : nullptr;
}

namespace {

bool numbers_equal(const NumLit &a, const NumLit &b) {
  if (a.suffix != b.suffix) return false;
  if (std::isnan(a.value) && std::isnan(b.value)) return true;
  return a.value == b.value;
}

}  // namespace

bool structurally_equal(const Arg &a, const Arg &b) {
  return a.name == b.name && structurally_equal(a.value, b.value);
}

bool structurally_equal(const Expr &a, const Expr &b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto &lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto &rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, NullLit>) {
          return true;
        } else if constexpr (std::is_same_v<T, LogicalLit>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, NaLit>) {
          return lhs.type == rhs.type;
        } else if constexpr (std::is_same_v<T, NumLit>) {
          return numbers_equal(lhs, rhs);
        } else if constexpr (std::is_same_v<T, StringLit>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, SymbolRef>) {
          return lhs.name == rhs.name;
        } else {
          if (lhs.args.size() != rhs.args.size()) return false;
          if (!structurally_equal(*lhs.callee, *rhs.callee)) return false;
          for (std::size_t i = 0; i < lhs.args.size(); ++i) {
            if (!structurally_equal(lhs.args[i], rhs.args[i])) return false;
          }
          return true;
        }
      },
      a.node);
}

std::size_t count_calls(const Expr &e) {
  if (!e.is_call()) return 0;
  std::size_t n = 1 + count_calls(e.callee());
  for (const Arg &a : e.call().args) n += count_calls(a.value);
  return n;
}

std::string_view na_keyword(NaType type) {
  switch (type) {
    case NaType::Logical: return "NA";
    case NaType::Integer: return "NA_integer_";
    case NaType::Real: return "NA_real_";
    case NaType::Character: return "NA_character_";
    case NaType::Complex: return "NA_complex_";
  }
  return "NA";
}

namespace build {

Expr null() { return Expr{NullLit{}, {}}; }
Expr logical(bool value) { return Expr{LogicalLit{value}, {}}; }
Expr na(NaType type) { return Expr{NaLit{type}, {}}; }

Expr num(double value, NumSuffix suffix) {
  return Expr{NumLit{std::string{}, value, suffix}, {}};
}

Expr num_text(std::string text) {
  NumLit lit;
  std::string body = text;
  if (!body.empty() && body.back() == 'L') {
    lit.suffix = NumSuffix::Integer;
    body.pop_back();
  } else if (!body.empty() && body.back() == 'i') {
    lit.suffix = NumSuffix::Imaginary;
    body.pop_back();
  }
  if (body == "Inf") {
    lit.value = std::numeric_limits<double>::infinity();
  } else if (body == "NaN") {
    lit.value = std::numeric_limits<double>::quiet_NaN();
  } else {
    lit.value = std::strtod(body.c_str(), nullptr);
  }
  // 1.5L is accepted by R as a double
  if (lit.suffix == NumSuffix::Integer &&
      (lit.value != std::floor(lit.value) || std::fabs(lit.value) > 2147483647.0)) {
    lit.suffix = NumSuffix::None;
  }
  lit.text = std::move(text);
  return Expr{std::move(lit), {}};
}

Expr str(std::string value) { return Expr{StringLit{std::move(value)}, {}}; }
Expr sym(std::string name) { return Expr{SymbolRef{std::move(name)}, {}}; }
Expr missing() { return sym(""); }

Expr call(Expr callee, std::vector<Arg> args) {
  return Expr{Call{std::make_shared<const Expr>(std::move(callee)), std::move(args)}, {}};
}

Expr call(std::string fn, std::vector<Arg> args) { return call(sym(std::move(fn)), std::move(args)); }

Arg arg(Expr value) { return Arg{std::nullopt, std::move(value)}; }
Arg arg(std::string name, Expr value) { return Arg{std::move(name), std::move(value)}; }

}  // namespace build

}  // namespace codeweft::rparse

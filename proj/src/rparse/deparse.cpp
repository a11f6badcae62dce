#include "codeweft/rparse/deparse.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "codeweft/rparse/lexer.hpp"
#include "grammar.hpp"

namespace codeweft::rparse {

namespace {

using namespace grammar;

enum class Form { Atomic, Binary, Prefix, Construct };

struct Printed {
  std::string text;
  Form form = Form::Atomic;
  int prec = kClosed;
  Assoc assoc = Assoc::Left;
  // A following operator with precedence above this is captured by the
  // right spine of `text` when re-parsed.
  int absorb = kClosed;
  // Right spine ends in an if without else, which would capture an `else`.
  bool dangling = false;
  bool eq_assign = false;
};

std::string format_number(const NumLit &n) {
  if (!n.text.empty()) return n.text;
  if (std::isnan(n.value)) return "NaN";
  if (std::isinf(n.value)) return n.value > 0 ? "Inf" : "-Inf";
  std::string body;
  if (n.suffix == NumSuffix::Integer) {
    body = std::to_string(static_cast<long long>(n.value)) + "L";
    return body;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, n.value);
  body.assign(buf, res.ptr);
  if (n.suffix == NumSuffix::Imaginary) body += "i";
  return body;
}

bool all_unnamed(const std::vector<Arg> &args) {
  for (const Arg &a : args) {
    if (a.name) return false;
  }
  return true;
}

bool none_missing(const std::vector<Arg> &args) {
  for (const Arg &a : args) {
    if (a.value.is_missing_arg()) return false;
  }
  return true;
}

bool is_plain_symbol(const Expr &e) { return e.is_symbol() && !e.is_missing_arg(); }

class Deparser {
 public:
  Printed print(const Expr &e, int indent);

 private:
  Printed print_call(const Expr &e, int indent);
  Printed print_functional(const Expr &e, int indent);
  std::string print_args(const std::vector<Arg> &args, int indent);
  std::string print_callee(const Expr &callee, int indent);

  // Child placements. Each returns the child's text, switching the child to
  // prefix form when infix printing would re-associate.
  Printed left_operand(const Expr &child, int parent_prec, int indent);
  Printed right_operand(const Expr &child, int rhs_prec, int indent);
  Printed prefix_operand(const Expr &child, int prec, int indent);
  Printed postfix_object(const Expr &child, int indent);

  Printed binary(const std::string &op, const Expr &lhs, const Expr &rhs, int indent);
  Printed prefix(const std::string &op, const Expr &operand, int indent);
  Printed brace(const std::vector<Arg> &stmts, int indent);
  Printed construct(std::string text, const Printed &tail) {
    Printed p;
    p.text = std::move(text);
    p.form = Form::Construct;
    p.prec = kNone;
    p.absorb = kNone;
    p.dangling = tail.dangling;
    return p;
  }
};

Printed Deparser::left_operand(const Expr &child, int parent_prec, int indent) {
  Printed p = print(child, indent);
  const bool chained_nonassoc =
      p.form == Form::Binary && p.assoc == Assoc::NonAssoc && p.prec == parent_prec;
  if (parent_prec > p.absorb || chained_nonassoc) return print_functional(child, indent);
  return p;
}

Printed Deparser::right_operand(const Expr &child, int rhs_prec, int indent) {
  Printed p = print(child, indent);
  if (p.form == Form::Binary && p.prec <= rhs_prec) return print_functional(child, indent);
  return p;
}

Printed Deparser::prefix_operand(const Expr &child, int prec, int indent) {
  Printed p = print(child, indent);
  if (p.form == Form::Binary && p.prec <= prec) return print_functional(child, indent);
  return p;
}

Printed Deparser::postfix_object(const Expr &child, int indent) {
  Printed p = print(child, indent);
  if (p.absorb < kPostfix) return print_functional(child, indent);
  return p;
}

Printed Deparser::binary(const std::string &op, const Expr &lhs, const Expr &rhs, int indent) {
  const BinaryOp info = grammar::binary_op(op);
  Printed out;
  out.form = Form::Binary;
  out.prec = info.prec;
  out.assoc = info.assoc;
  out.eq_assign = op == "=";

  if (op == "$" || op == "@") {
    const Printed l = left_operand(lhs, info.prec, indent);
    std::string r;
    if (const auto *s = std::get_if<StringLit>(&rhs.node)) {
      r = quote_string(s->value);
    } else {
      r = quote_symbol(std::get<SymbolRef>(rhs.node).name);
    }
    out.text = l.text + op + r;
    out.absorb = kClosed;
    return out;
  }

  const int rhs_prec = info.assoc == Assoc::Right ? info.prec - 1 : info.prec;
  const Printed l = left_operand(lhs, info.prec, indent);
  const Printed r = right_operand(rhs, rhs_prec, indent);
  const bool tight = op == "^" || op == ":";
  out.text = l.text + (tight ? op : " " + op + " ") + r.text;
  out.absorb = std::min(rhs_prec, r.absorb);
  out.dangling = r.dangling;
  return out;
}

Printed Deparser::prefix(const std::string &op, const Expr &operand, int indent) {
  const int prec = grammar::prefix_prec(op);
  const Printed inner = prefix_operand(operand, prec, indent);
  Printed out;
  out.form = Form::Prefix;
  out.prec = prec;
  out.text = op + inner.text;
  out.absorb = std::min(prec, inner.absorb);
  out.dangling = inner.dangling;
  return out;
}

Printed Deparser::brace(const std::vector<Arg> &stmts, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string text = "{\n";
  for (const Arg &s : stmts) {
    text += pad + "    " + print(s.value, indent + 4).text + "\n";
  }
  text += pad + "}";
  return Printed{std::move(text)};
}

std::string Deparser::print_callee(const Expr &callee, int indent) {
  if (const auto *s = std::get_if<SymbolRef>(&callee.node)) return quote_symbol(s->name);
  return postfix_object(callee, indent).text;
}

std::string Deparser::print_args(const std::vector<Arg> &args, int indent) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    const Arg &a = args[i];
    if (a.name) {
      out += quote_symbol(*a.name);
      out += a.value.is_missing_arg() ? " = " : " = " + print(a.value, indent).text;
      continue;
    }
    if (a.value.is_missing_arg()) continue;
    Printed p = print(a.value, indent);
    // an unnamed `a = b` would re-parse as a named argument
    if (p.eq_assign) p = print_functional(a.value, indent);
    out += p.text;
  }
  return out;
}

Printed Deparser::print_functional(const Expr &e, int indent) {
  const Call &c = e.call();
  return Printed{print_callee(*c.callee, indent) + "(" + print_args(c.args, indent) + ")"};
}

Printed Deparser::print_call(const Expr &e, int indent) {
  const Call &c = e.call();
  const std::string *fn = e.callee_name();
  if (fn == nullptr) return print_functional(e, indent);
  const std::string &n = *fn;
  const auto &args = c.args;
  const std::size_t nargs = args.size();

  if (n == "function") {
    if (nargs == 0 || args.back().name || args.back().value.is_missing_arg()) {
      return print_functional(e, indent);
    }
    std::set<std::string> seen;
    std::string formals;
    for (std::size_t i = 0; i + 1 < nargs; ++i) {
      const Arg &a = args[i];
      if (!a.name || a.name->empty() || !seen.insert(*a.name).second) {
        return print_functional(e, indent);
      }
      if (i > 0) formals += ", ";
      formals += quote_symbol(*a.name);
      if (!a.value.is_missing_arg()) formals += " = " + print(a.value, indent).text;
    }
    const Printed body = print(args.back().value, indent);
    return construct("function(" + formals + ") " + body.text, body);
  }

  if (!all_unnamed(args) || !none_missing(args)) {
    if ((n == "[" || n == "[[") && nargs >= 2 && !args[0].name &&
        !args[0].value.is_missing_arg()) {
      const Printed obj = postfix_object(args[0].value, indent);
      const std::vector<Arg> rest(args.begin() + 1, args.end());
      const std::string close = n == "[" ? "]" : "]]";
      return Printed{obj.text + n + print_args(rest, indent) + close};
    }
    return print_functional(e, indent);
  }

  const BinaryOp bin = grammar::binary_op(n);
  if (nargs == 2 && bin.prec != kNone && n != "->" && n != "->>" && n != "|>") {
    if (n == "$" || n == "@") {
      const Expr &rhs = args[1].value;
      const bool ok_rhs = is_plain_symbol(rhs) || std::holds_alternative<StringLit>(rhs.node);
      if (!ok_rhs) return print_functional(e, indent);
    }
    return binary(n, args[0].value, args[1].value, indent);
  }
  if (nargs == 1 && grammar::prefix_prec(n) != kNone) return prefix(n, args[0].value, indent);

  if ((n == "::" || n == ":::") && nargs == 2) {
    auto side = [](const Expr &x) -> std::optional<std::string> {
      if (is_plain_symbol(x)) return quote_symbol(std::get<SymbolRef>(x.node).name);
      if (const auto *s = std::get_if<StringLit>(&x.node)) return quote_string(s->value);
      return std::nullopt;
    };
    const auto l = side(args[0].value);
    const auto r = side(args[1].value);
    if (l && r) return Printed{*l + n + *r};
    return print_functional(e, indent);
  }
  if (n == "(" && nargs == 1) return Printed{"(" + print(args[0].value, indent).text + ")"};
  if (n == "{") return brace(args, indent);
  if ((n == "[" || n == "[[") && nargs >= 2) {
    const Printed obj = postfix_object(args[0].value, indent);
    const std::vector<Arg> rest(args.begin() + 1, args.end());
    const std::string close = n == "[" ? "]" : "]]";
    return Printed{obj.text + n + print_args(rest, indent) + close};
  }
  if (n == "if" && (nargs == 2 || nargs == 3)) {
    const std::string cond = print(args[0].value, indent).text;
    Printed yes = print(args[1].value, indent);
    if (nargs == 2) {
      Printed out = construct("if (" + cond + ") " + yes.text, yes);
      out.dangling = true;
      return out;
    }
    if (yes.dangling) yes = print_functional(args[1].value, indent);
    const Printed no = print(args[2].value, indent);
    return construct("if (" + cond + ") " + yes.text + " else " + no.text, no);
  }
  if (n == "for" && nargs == 3 && is_plain_symbol(args[0].value)) {
    const std::string var = quote_symbol(std::get<SymbolRef>(args[0].value.node).name);
    const std::string seq = print(args[1].value, indent).text;
    const Printed body = print(args[2].value, indent);
    return construct("for (" + var + " in " + seq + ") " + body.text, body);
  }
  if (n == "while" && nargs == 2) {
    const std::string cond = print(args[0].value, indent).text;
    const Printed body = print(args[1].value, indent);
    return construct("while (" + cond + ") " + body.text, body);
  }
  if (n == "repeat" && nargs == 1) {
    const Printed body = print(args[0].value, indent);
    return construct("repeat " + body.text, body);
  }
  if ((n == "break" || n == "next") && nargs == 0) return Printed{n};
  return print_functional(e, indent);
}

Printed Deparser::print(const Expr &e, int indent) {
  return std::visit(
      [&](const auto &node) -> Printed {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NullLit>) {
          return Printed{"NULL"};
        } else if constexpr (std::is_same_v<T, LogicalLit>) {
          return Printed{node.value ? "TRUE" : "FALSE"};
        } else if constexpr (std::is_same_v<T, NaLit>) {
          return Printed{std::string(na_keyword(node.type))};
        } else if constexpr (std::is_same_v<T, NumLit>) {
          return Printed{format_number(node)};
        } else if constexpr (std::is_same_v<T, StringLit>) {
          return Printed{quote_string(node.value)};
        } else if constexpr (std::is_same_v<T, SymbolRef>) {
          return Printed{quote_symbol(node.name)};
        } else {
          return print_call(e, indent);
        }
      },
      e.node);
}

}  // namespace

std::string quote_symbol(const std::string &name) {
  if (name.empty() || is_syntactic_name(name)) return name;
  std::string out = "`";
  for (char c : name) {
    switch (c) {
      case '`': out += "\\`"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '`';
  return out;
}

std::string quote_string(const std::string &value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\a': out += "\\a"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\v': out += "\\v"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned char>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string deparse(const Expr &expr) { return Deparser{}.print(expr, 0).text; }

}  // namespace codeweft::rparse

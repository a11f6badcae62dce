#pragma once

#include <string_view>

namespace codeweft::rparse::grammar {

// Binding powers, loosest first. Mirrors R's grammar precedence table; '='
// sits below '<-' the way top-level equal-assignment does in R.
enum Prec : int {
  kNone = 0,
  kHelp = 10,
  kEqAssign = 20,
  kLeftAssign = 30,
  kRightAssign = 40,
  kTilde = 50,
  kOr = 60,
  kAnd = 70,
  kNot = 80,
  kCompare = 90,
  kSum = 100,
  kProduct = 110,
  kSpecial = 120,
  kRange = 130,
  kUnary = 140,
  kPower = 150,
  kDollar = 160,
  kPostfix = 180,
  kClosed = 1000,
};

enum class Assoc { Left, Right, NonAssoc };

struct BinaryOp {
  int prec = kNone;
  Assoc assoc = Assoc::Left;
};

inline bool is_infix_name(std::string_view s) {
  return s.size() >= 2 && s.front() == '%' && s.back() == '%' &&
         s.find('\n') == std::string_view::npos &&
         s.substr(1, s.size() - 2).find('%') == std::string_view::npos;
}

// Binary operators by their callee name ("->" and "|>" are parse-time
// rewrites and never appear as callees).
inline BinaryOp binary_op(std::string_view s) {
  if (is_infix_name(s)) return {kSpecial, Assoc::Left};
  if (s == "?") return {kHelp, Assoc::Left};
  if (s == "=") return {kEqAssign, Assoc::Right};
  if (s == "<-" || s == "<<-" || s == ":=") return {kLeftAssign, Assoc::Right};
  if (s == "->" || s == "->>") return {kRightAssign, Assoc::Left};
  if (s == "~") return {kTilde, Assoc::Left};
  if (s == "||" || s == "|") return {kOr, Assoc::Left};
  if (s == "&&" || s == "&") return {kAnd, Assoc::Left};
  if (s == "==" || s == "!=" || s == "<" || s == ">" || s == "<=" || s == ">=") {
    return {kCompare, Assoc::NonAssoc};
  }
  if (s == "+" || s == "-") return {kSum, Assoc::Left};
  if (s == "*" || s == "/") return {kProduct, Assoc::Left};
  if (s == "|>") return {kSpecial, Assoc::Left};
  if (s == ":") return {kRange, Assoc::Left};
  if (s == "^") return {kPower, Assoc::Right};
  if (s == "$" || s == "@") return {kDollar, Assoc::Left};
  return {};
}

inline int prefix_prec(std::string_view s) {
  if (s == "-" || s == "+") return kUnary;
  if (s == "!") return kNot;
  if (s == "~") return kTilde;
  if (s == "?") return kHelp;
  return kNone;
}

}  // namespace codeweft::rparse::grammar

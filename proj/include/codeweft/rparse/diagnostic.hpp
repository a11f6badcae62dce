#pragma once

#include <string>

#include "codeweft/error.hpp"
#include "codeweft/rparse/span.hpp"

namespace codeweft::rparse {

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string &message, SrcSpan span, std::string hint = {})
      : Error(code, message), span_(span), hint_(std::move(hint)) {}

  [[nodiscard]] const SrcSpan &span() const noexcept { return span_; }
  // Expected-token hint, e.g. "expected ')'". May be empty.
  [[nodiscard]] const std::string &hint() const noexcept { return hint_; }

 private:
  SrcSpan span_;
  std::string hint_;
};

// A non-fatal error collected while parsing a program.
struct Diagnostic {
  ErrorCode code = ErrorCode::Syntax;
  std::string message;
  SrcSpan span;
  std::string hint;

  [[nodiscard]] std::string to_string() const {
    std::string out = span.to_string() + ": " + message;
    if (!hint.empty()) out += " (" + hint + ")";
    return out;
  }
};

}  // namespace codeweft::rparse

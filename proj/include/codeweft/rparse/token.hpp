#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "codeweft/error.hpp"
#include "codeweft/rparse/span.hpp"

namespace codeweft::rparse {

enum class TokenKind {
  Name,      // plain or backtick-quoted symbol; `text` holds the unquoted name
  Keyword,   // if else for while repeat function break next in TRUE FALSE NULL NA* Inf NaN
  Number,    // `text` holds the literal as written
  String,    // `text` holds the decoded value
  Operator,  // + - * / ^ < > <= >= == != ! & && | || ~ -> ->> <- <<- = := ? $ @ : :: ::: |>
  Infix,     // %...% including %% and %/%
  Punct,     // ( ) { } [ ] [[ , ;
  Newline,
  Error,     // lexical error; `error` and `text` describe it
  End,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SrcSpan span;
  bool backtick = false;                        // Name came from `...`
  ErrorCode error = ErrorCode::InvalidCharacter;  // meaningful for kind == Error

  [[nodiscard]] bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  [[nodiscard]] bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  [[nodiscard]] bool is_op(std::string_view t) const { return is(TokenKind::Operator, t); }
  [[nodiscard]] bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }

  // "name:library", "punct:(", "infix:%>%"
  [[nodiscard]] std::string describe() const;
};

}  // namespace codeweft::rparse

#pragma once

#include <string_view>
#include <vector>

#include "codeweft/rparse/token.hpp"

namespace codeweft::rparse {

// Produces the full token stream including Newline tokens and a final End
// token. Lexical problems become Error tokens so the parser can report them
// and resynchronise; nothing is thrown.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run();

 private:
  Token next();
  Token lex_number();
  Token lex_string(char quote);
  Token lex_backtick();
  Token lex_name();
  Token lex_infix();
  Token lex_operator_or_punct();
  Token make(TokenKind kind, std::string text, std::size_t begin, int line, int col) const;
  Token error_token(ErrorCode code, std::string message, std::size_t begin, int line, int col) const;

  [[nodiscard]] char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance(std::size_t n = 1);

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Tokens covering the non-whitespace, non-comment input (no Newline or End
// tokens). Throws ParseError on the first lexical error.
std::vector<Token> tokenize(std::string_view text);

// Reserved words that cannot be used as bare symbols.
bool is_reserved_word(std::string_view word);

// True when `name` can be written without backticks.
bool is_syntactic_name(std::string_view name);

// Validates UTF-8; returns the byte offset of the first bad sequence or npos.
std::size_t find_invalid_utf8(std::string_view text);

}  // namespace codeweft::rparse

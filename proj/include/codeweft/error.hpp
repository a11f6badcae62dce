#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace codeweft {

enum class ErrorCode {
  // lexical
  UnterminatedString,
  UnterminatedBacktick,
  InvalidCharacter,
  InvalidUtf8,
  // syntactic
  Syntax,
  Incomplete,
  MultipleExpressions,
  // ingestion
  Io,
  Http,
  // lexicons and tables
  Schema,
  UnknownLexicon,
  UnknownCategory,
  ScoreOutOfRange,
  UnknownColumn,
  EmptyInput,
  // session log
  MissingLog,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace codeweft

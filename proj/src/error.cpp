#include "codeweft/error.hpp"

namespace codeweft {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnterminatedString: return "UnterminatedString";
    case ErrorCode::UnterminatedBacktick: return "UnterminatedBacktick";
    case ErrorCode::InvalidCharacter: return "InvalidCharacter";
    case ErrorCode::InvalidUtf8: return "InvalidUtf8";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::Incomplete: return "Incomplete";
    case ErrorCode::MultipleExpressions: return "MultipleExpressions";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Http: return "HttpError";
    case ErrorCode::Schema: return "SchemaError";
    case ErrorCode::UnknownLexicon: return "UnknownLexicon";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MissingLog: return "MissingLog";
  }
  return "Error";
}

}  // namespace codeweft

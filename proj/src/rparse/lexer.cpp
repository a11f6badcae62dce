#include "codeweft/rparse/lexer.hpp"

#include <array>
#include <cctype>

#include "codeweft/rparse/diagnostic.hpp"

namespace codeweft::rparse {

namespace {

constexpr std::array kReserved = {
    "if",    "else",     "repeat", "while",       "function",    "for",         "next",
    "break", "TRUE",     "FALSE",  "NULL",        "Inf",         "NaN",         "NA",
    "NA_integer_",       "NA_real_",              "NA_character_",              "NA_complex_",
    "in",
};

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex_digit(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }
bool is_name_start(char c) { return is_ascii_alpha(c) || c == '.' || is_high(c); }
bool is_name_char(char c) { return is_name_start(c) || is_digit(c) || c == '_'; }

int hex_value(char c) {
  if (is_digit(c)) return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return c - 'A' + 10;
}

void append_utf8(std::string &out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Name: return "name";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Number: return "num";
    case TokenKind::String: return "str";
    case TokenKind::Operator: return "op";
    case TokenKind::Infix: return "infix";
    case TokenKind::Punct: return "punct";
    case TokenKind::Newline: return "newline";
    case TokenKind::Error: return "error";
    case TokenKind::End: return "end";
  }
  return "?";
}

std::string Token::describe() const {
  return std::string(token_kind_name(kind)) + ":" + text;
}

bool is_reserved_word(std::string_view word) {
  for (const char *r : kReserved) {
    if (word == r) return true;
  }
  return false;
}

bool is_syntactic_name(std::string_view name) {
  if (name.empty() || is_reserved_word(name)) return false;
  if (name == "...") return true;
  if (!is_name_start(name[0])) return false;
  if (name[0] == '.' && name.size() > 1 && is_digit(name[1])) {
    // ..1, ..2 are fine; .1 is a number
    return false;
  }
  for (char c : name) {
    if (!is_name_char(c)) return false;
  }
  return true;
}

std::size_t find_invalid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > text.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong forms, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      return i;
    }
    i += len;
  }
  return std::string_view::npos;
}

void Lexer::advance(std::size_t n) {
  for (std::size_t k = 0; k < n && pos_ < text_.size(); ++k) {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
}

Token Lexer::make(TokenKind kind, std::string text, std::size_t begin, int line, int col) const {
  Token tok;
  tok.kind = kind;
  tok.text = std::move(text);
  // end column is inclusive of the last byte
  int end_line = line_;
  int end_col = col_ - 1;
  if (pos_ > begin && text_[pos_ - 1] == '\n') {
    end_line = line_ - 1;
    end_col = col;  // only Newline tokens end on a newline
  }
  if (pos_ == begin) end_col = col;
  tok.span = SrcSpan{line, col, end_line, end_col, begin, pos_};
  return tok;
}

Token Lexer::error_token(ErrorCode code, std::string message, std::size_t begin, int line,
                         int col) const {
  Token tok = make(TokenKind::Error, std::move(message), begin, line, col);
  tok.error = code;
  return tok;
}

std::vector<Token> Lexer::run() {
  std::vector<Token> out;
  for (;;) {
    Token tok = next();
    const bool done = tok.kind == TokenKind::End;
    out.push_back(std::move(tok));
    if (done) break;
  }
  return out;
}

Token Lexer::next() {
  for (;;) {
    const char c = peek();
    if (c == ' ' || c == '\t' || c == '\f' || c == '\r' || c == '\v') {
      advance();
    } else if (c == '#') {
      while (pos_ < text_.size() && peek() != '\n') advance();
    } else {
      break;
    }
  }
  const std::size_t begin = pos_;
  const int line = line_;
  const int col = col_;
  if (pos_ >= text_.size()) return make(TokenKind::End, "", begin, line, col);

  const char c = peek();
  if (c == '\n') {
    advance();
    Token tok = make(TokenKind::Newline, "\n", begin, line, col);
    tok.span.end_line = line;
    tok.span.end_col = col;
    return tok;
  }
  if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return lex_number();
  if (c == '"' || c == '\'') return lex_string(c);
  if (c == '`') return lex_backtick();
  if ((c == 'r' || c == 'R') && (peek(1) == '"' || peek(1) == '\'')) {
    advance(2);
    return error_token(ErrorCode::Syntax, "raw string literals are not supported", begin, line,
                       col);
  }
  if (is_name_start(c)) return lex_name();
  if (c == '%') return lex_infix();
  if (c == '\\') {
    advance();
    return error_token(ErrorCode::Syntax, "lambda shorthand '\\(x)' is not supported", begin,
                       line, col);
  }
  return lex_operator_or_punct();
}

Token Lexer::lex_number() {
  const std::size_t begin = pos_;
  const int line = line_;
  const int col = col_;
  bool hex = false;
  if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
    hex = true;
    advance(2);
    if (!is_hex_digit(peek())) {
      return error_token(ErrorCode::InvalidCharacter, "malformed hexadecimal constant", begin,
                         line, col);
    }
    while (is_hex_digit(peek())) advance();
    if (peek() == '.') {
      advance();
      while (is_hex_digit(peek())) advance();
    }
    if (peek() == 'p' || peek() == 'P') {
      advance();
      if (peek() == '+' || peek() == '-') advance();
      if (!is_digit(peek())) {
        return error_token(ErrorCode::InvalidCharacter, "malformed exponent", begin, line, col);
      }
      while (is_digit(peek())) advance();
    }
  } else {
    while (is_digit(peek())) advance();
    if (peek() == '.') {
      advance();
      while (is_digit(peek())) advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      advance();
      if (peek() == '+' || peek() == '-') advance();
      if (!is_digit(peek())) {
        return error_token(ErrorCode::InvalidCharacter, "malformed exponent", begin, line, col);
      }
      while (is_digit(peek())) advance();
    }
  }
  (void)hex;
  if (peek() == 'L' || peek() == 'i') advance();
  return make(TokenKind::Number, std::string(text_.substr(begin, pos_ - begin)), begin, line,
              col);
}

Token Lexer::lex_string(char quote) {
  const std::size_t begin = pos_;
  const int line = line_;
  const int col = col_;
  advance();
  std::string value;
  for (;;) {
    if (pos_ >= text_.size()) {
      return error_token(ErrorCode::UnterminatedString, "unterminated string literal", begin,
                         line, col);
    }
    const char c = peek();
    if (c == quote) {
      advance();
      break;
    }
    if (c != '\\') {
      value += c;
      advance();
      continue;
    }
    const std::size_t esc_begin = pos_;
    const int esc_line = line_;
    const int esc_col = col_;
    advance();
    if (pos_ >= text_.size()) {
      return error_token(ErrorCode::UnterminatedString, "unterminated string literal", begin,
                         line, col);
    }
    const char e = peek();
    advance();
    switch (e) {
      case 'n': value += '\n'; break;
      case 't': value += '\t'; break;
      case 'r': value += '\r'; break;
      case 'a': value += '\a'; break;
      case 'b': value += '\b'; break;
      case 'f': value += '\f'; break;
      case 'v': value += '\v'; break;
      case '\\': value += '\\'; break;
      case '"': value += '"'; break;
      case '\'': value += '\''; break;
      case '`': value += '`'; break;
      case ' ': value += ' '; break;
      case '\n': value += '\n'; break;
      case 'x': {
        if (!is_hex_digit(peek())) {
          return error_token(ErrorCode::InvalidCharacter, "'\\x' used without hex digits",
                             esc_begin, esc_line, esc_col);
        }
        int v = 0;
        for (int k = 0; k < 2 && is_hex_digit(peek()); ++k) {
          v = v * 16 + hex_value(peek());
          advance();
        }
        if (v == 0) {
          return error_token(ErrorCode::InvalidCharacter, "nul character not allowed",
                             esc_begin, esc_line, esc_col);
        }
        value += static_cast<char>(v);
        break;
      }
      case 'u':
      case 'U': {
        const int max_digits = e == 'u' ? 4 : 8;
        const bool braced = peek() == '{';
        if (braced) advance();
        char32_t cp = 0;
        int n = 0;
        while (n < max_digits && is_hex_digit(peek())) {
          cp = cp * 16 + static_cast<char32_t>(hex_value(peek()));
          advance();
          ++n;
        }
        if (braced) {
          if (peek() != '}') {
            return error_token(ErrorCode::InvalidCharacter, "invalid \\u{xxxx} sequence",
                               esc_begin, esc_line, esc_col);
          }
          advance();
        }
        if (n == 0 || cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
          return error_token(ErrorCode::InvalidCharacter, "invalid unicode escape", esc_begin,
                             esc_line, esc_col);
        }
        append_utf8(value, cp);
        break;
      }
      default: {
        if (e >= '0' && e <= '7') {
          int v = e - '0';
          for (int k = 0; k < 2 && peek() >= '0' && peek() <= '7'; ++k) {
            v = v * 8 + (peek() - '0');
            advance();
          }
          if (v == 0) {
            return error_token(ErrorCode::InvalidCharacter, "nul character not allowed",
                               esc_begin, esc_line, esc_col);
          }
          value += static_cast<char>(v & 0xFF);
          break;
        }
        return error_token(ErrorCode::InvalidCharacter,
                           std::string("'\\") + e + "' is an unrecognized escape", esc_begin,
                           esc_line, esc_col);
      }
    }
  }
  return make(TokenKind::String, std::move(value), begin, line, col);
}

Token Lexer::lex_backtick() {
  const std::size_t begin = pos_;
  const int line = line_;
  const int col = col_;
  advance();
  std::string name;
  for (;;) {
    if (pos_ >= text_.size()) {
      return error_token(ErrorCode::UnterminatedBacktick, "unterminated backtick name", begin,
                         line, col);
    }
    const char c = peek();
    if (c == '`') {
      advance();
      break;
    }
    if (c == '\\') {
      advance();
      const char e = peek();
      if (pos_ >= text_.size()) continue;
      advance();
      switch (e) {
        case '`': name += '`'; break;
        case '\\': name += '\\'; break;
        case 'n': name += '\n'; break;
        case 't': name += '\t'; break;
        case '"': name += '"'; break;
        case '\'': name += '\''; break;
        case ' ': name += ' '; break;
        case 'u':
        case 'U':
        case 'x':
          return error_token(ErrorCode::Syntax, "escapes are not supported in backtick names",
                             begin, line, col);
        default:
          return error_token(ErrorCode::InvalidCharacter,
                             std::string("'\\") + e + "' is an unrecognized escape", begin, line,
                             col);
      }
      continue;
    }
    name += c;
    advance();
  }
  if (name.empty()) {
    return error_token(ErrorCode::Syntax, "attempt to use zero-length variable name", begin, line,
                       col);
  }
  Token tok = make(TokenKind::Name, std::move(name), begin, line, col);
  tok.backtick = true;
  return tok;
}

Token Lexer::lex_name() {
  const std::size_t begin = pos_;
  const int line = line_;
  const int col = col_;
  while (is_name_char(peek())) advance();
  std::string word(text_.substr(begin, pos_ - begin));
  const TokenKind kind = is_reserved_word(word) ? TokenKind::Keyword : TokenKind::Name;
  return make(kind, std::move(word), begin, line, col);
}

Token Lexer::lex_infix() {
  const std::size_t begin = pos_;
  const int line = line_;
  const int col = col_;
  advance();
  while (pos_ < text_.size() && peek() != '%' && peek() != '\n') advance();
  if (peek() != '%') {
    return error_token(ErrorCode::InvalidCharacter, "unterminated %op% operator", begin, line,
                       col);
  }
  advance();
  return make(TokenKind::Infix, std::string(text_.substr(begin, pos_ - begin)), begin, line, col);
}

Token Lexer::lex_operator_or_punct() {
  const std::size_t begin = pos_;
  const int line = line_;
  const int col = col_;
  const char c = peek();
  const char c1 = peek(1);
  const char c2 = peek(2);

  auto op = [&](std::size_t n, std::string text) {
    advance(n);
    return make(TokenKind::Operator, std::move(text), begin, line, col);
  };
  auto punct = [&](std::size_t n) {
    std::string text(text_.substr(pos_, n));
    advance(n);
    return make(TokenKind::Punct, std::move(text), begin, line, col);
  };

  switch (c) {
    case '(': case ')': case '{': case '}': case ']': case ',': case ';':
      return punct(1);
    case '[':
      return punct(c1 == '[' ? 2 : 1);
    case '<':
      if (c1 == '<' && c2 == '-') return op(3, "<<-");
      if (c1 == '-') return op(2, "<-");
      if (c1 == '=') return op(2, "<=");
      return op(1, "<");
    case '-':
      if (c1 == '>' && c2 == '>') return op(3, "->>");
      if (c1 == '>') return op(2, "->");
      return op(1, "-");
    case '>':
      if (c1 == '=') return op(2, ">=");
      return op(1, ">");
    case '=':
      if (c1 == '=') return op(2, "==");
      return op(1, "=");
    case '!':
      if (c1 == '=') return op(2, "!=");
      return op(1, "!");
    case '&':
      if (c1 == '&') return op(2, "&&");
      return op(1, "&");
    case '|':
      if (c1 == '|') return op(2, "||");
      if (c1 == '>') return op(2, "|>");
      return op(1, "|");
    case ':':
      if (c1 == ':' && c2 == ':') return op(3, ":::");
      if (c1 == ':') return op(2, "::");
      if (c1 == '=') return op(2, ":=");
      return op(1, ":");
    case '*':
      if (c1 == '*') return op(2, "^");
      return op(1, "*");
    case '+': return op(1, "+");
    case '/': return op(1, "/");
    case '^': return op(1, "^");
    case '~': return op(1, "~");
    case '?': return op(1, "?");
    case '$': return op(1, "$");
    case '@': return op(1, "@");
    default: break;
  }
  // consume one whole UTF-8 sequence for the message
  std::size_t n = 1;
  const auto uc = static_cast<unsigned char>(c);
  if (uc >= 0xF0) n = 4;
  else if (uc >= 0xE0) n = 3;
  else if (uc >= 0xC0) n = 2;
  std::string bad(text_.substr(pos_, n));
  advance(n);
  return error_token(ErrorCode::InvalidCharacter, "unexpected input '" + bad + "'", begin, line,
                     col);
}

std::vector<Token> tokenize(std::string_view text) {
  if (const auto bad = find_invalid_utf8(text); bad != std::string_view::npos) {
    throw ParseError(ErrorCode::InvalidUtf8, "input is not valid UTF-8",
                     SrcSpan{1, 1, 1, 1, bad, bad + 1});
  }
  std::vector<Token> out;
  for (Token &tok : Lexer(text).run()) {
    if (tok.kind == TokenKind::Error) throw ParseError(tok.error, tok.text, tok.span);
    if (tok.kind == TokenKind::Newline || tok.kind == TokenKind::End) continue;
    out.push_back(std::move(tok));
  }
  return out;
}

}  // namespace codeweft::rparse

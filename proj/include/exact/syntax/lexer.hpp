#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exact/errors.hpp"

namespace exact {

enum class TokenKind : std::uint8_t {
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Dot,
  LParen,
  RParen,
  Integer,     // unsigned digits, no fraction
  Number,      // signed and/or fractional literal
  Identifier,
  Eof,
  Invalid,     // only appears as the offending token of a lexical error
};

inline std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Integer: return "integer";
    case TokenKind::Number: return "number";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Eof: return "end of input";
    case TokenKind::Invalid: return "invalid character";
  }
  return "?";
}

/// Half-open byte range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string_view lexeme;
  Span span;
};

/// First error found while lexing or parsing.
struct Diagnostic {
  Span span;
  std::vector<TokenKind> expected;  // never empty
  TokenKind found_kind = TokenKind::Eof;
  std::string found_lexeme;
  std::string message;

  std::string render() const {
    std::string out = "bytes " + std::to_string(span.begin) + ".." + std::to_string(span.end) + ": ";
    if (!message.empty()) out += message + "; ";
    out += "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += to_string(expected[i]);
    }
    out += ", found " + std::string(to_string(found_kind));
    if (!found_lexeme.empty()) out += " '" + found_lexeme + "'";
    return out;
  }
};

class ParseError : public Error {
 public:
  explicit ParseError(Diagnostic d) : Error(d.render()), diag_(std::move(d)) {}

  ParseError(Span span, std::vector<TokenKind> expected, Token found, std::string message)
      : ParseError(Diagnostic{span, std::move(expected), found.kind, std::string(found.lexeme),
                              std::move(message)}) {}

  const Span& span() const noexcept { return diag_.span; }
  const std::vector<TokenKind>& expected() const noexcept { return diag_.expected; }
  TokenKind found_kind() const noexcept { return diag_.found_kind; }
  const std::string& found_lexeme() const noexcept { return diag_.found_lexeme; }
  const std::string& message() const noexcept { return diag_.message; }
  const Diagnostic& diagnostic() const noexcept { return diag_; }

 private:
  Diagnostic diag_;
};

inline constexpr bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
inline constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline constexpr bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
inline constexpr bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

inline constexpr std::size_t kMaxFractionDigits = 4;

using ExpectedKinds = std::initializer_list<TokenKind>;

/// On-demand tokenizer. Whitespace separates tokens and is otherwise skipped.
/// A literal that runs into the end of input before it is complete ("-", "0.")
/// is reported with an end-of-input found token. Lexical errors do not throw:
/// next() returns an Invalid token and error() holds the diagnostic.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  /// `expected` is only used to describe an unexpected-character error.
  Token next(ExpectedKinds expected = {TokenKind::LBracket}) {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return make(TokenKind::Eof, start, start);

    const char c = text_[pos_];
    switch (c) {
      case '[': return single(TokenKind::LBracket);
      case ']': return single(TokenKind::RBracket);
      case ',': return single(TokenKind::Comma);
      case ';': return single(TokenKind::Semicolon);
      case '.': return single(TokenKind::Dot);
      case '(': return single(TokenKind::LParen);
      case ')': return single(TokenKind::RParen);
      default: break;
    }
    if (c == '-' || is_digit(c)) return number(start);
    if (is_ident_start(c)) {
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      return make(TokenKind::Identifier, start, pos_);
    }
    pos_ = start + 1;
    return fail(expected, TokenKind::Invalid, start, pos_, "unexpected character");
  }

  const std::optional<Diagnostic>& error() const { return error_; }
  std::size_t position() const { return pos_; }
  std::string_view text() const { return text_; }

 private:
  Token single(TokenKind kind) {
    ++pos_;
    return make(kind, pos_ - 1, pos_);
  }

  Token make(TokenKind kind, std::size_t b, std::size_t e) const {
    return Token{kind, text_.substr(b, e - b), Span{b, e}};
  }

  Token fail(ExpectedKinds expected, TokenKind found, std::size_t b, std::size_t e, std::string msg) {
    error_ = Diagnostic{{b, e}, expected, found, std::string(text_.substr(b, e - b)), std::move(msg)};
    return make(TokenKind::Invalid, b, e);
  }

  Token number(std::size_t start) {
    const ExpectedKinds num = {TokenKind::Number};
    bool is_signed = false;
    if (text_[pos_] == '-') {
      is_signed = true;
      ++pos_;
      if (pos_ >= text_.size()) return fail(num, TokenKind::Eof, start, pos_, "expected digit after '-'");
      if (!is_digit(text_[pos_])) return fail(num, TokenKind::Number, start, pos_ + 1, "expected digit after '-'");
    }
    const std::size_t int_start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ - int_start > 1 && text_[int_start] == '0') {
      return fail(num, TokenKind::Integer, start, int_start + 2, "leading zeros are not allowed");
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (pos_ >= text_.size()) return fail(num, TokenKind::Eof, start, pos_, "expected digit after '.'");
      if (!is_digit(text_[pos_])) return fail(num, TokenKind::Number, start, pos_ + 1, "expected digit after '.'");
      const std::size_t frac_start = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) {
        if (pos_ - frac_start == kMaxFractionDigits) {
          return fail(num, TokenKind::Number, start, pos_ + 1, "at most 4 fraction digits");
        }
        ++pos_;
      }
      return make(TokenKind::Number, start, pos_);
    }
    return make(is_signed ? TokenKind::Number : TokenKind::Integer, start, pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<Diagnostic> error_;
};

/// Tokenizes the whole input; the last token is always Eof. Throws
/// ParseError on a lexical error.
inline std::vector<Token> tokenize(std::string_view text) {
  Lexer lexer(text);
  std::vector<Token> out;
  do {
    out.push_back(lexer.next());
    if (lexer.error()) throw ParseError(*lexer.error());
  } while (out.back().kind != TokenKind::Eof);
  return out;
}

}  // namespace exact

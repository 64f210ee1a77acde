#pragma once

// Recursive-descent parser for motion programs:
//
//   program  ::= motion (';' motion)*
//   motion   ::= '[' INT ',' INT ']' sensor (WS+ sensor)*
//   sensor   ::= JOINT '.' AXIS '(' NUMBER ')'
//
// Semantic constraints are checked at the earliest token that decides them, so
// an error whose offending token is followed by more input can never be fixed
// by appending characters.

#include <bitset>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exact/joints.hpp"
#include "exact/program.hpp"
#include "exact/syntax/lexer.hpp"

namespace exact {

struct ParseResult {
  MotionProgram program;
  std::vector<Issue> warnings;
};

/// Either a parsed program or the first error.
struct ParseOutcome {
  std::optional<ParseResult> result;
  std::optional<Diagnostic> error;

  bool ok() const { return result.has_value(); }
};

class Parser {
 public:
  Parser(std::string_view text, Horizon horizon, const JointRegistry& registry)
      : lexer_(text), horizon_(horizon), registry_(registry) {}

  /// Does not throw on malformed input.
  ParseOutcome run() {
    ParseOutcome out;
    MotionProgram program;
    if (!motion(program) || !rest(program)) {
      out.error = std::move(error_);
      return out;
    }
    auto report = validate(program, horizon_);
    out.result = ParseResult{std::move(program), std::move(report.warnings)};
    return out;
  }

 private:
  bool rest(MotionProgram& program) {
    for (;;) {
      const Token* t = peek({TokenKind::Semicolon, TokenKind::Eof});
      if (!t) return false;
      if (t->kind == TokenKind::Eof) return true;
      if (t->kind != TokenKind::Semicolon) {
        if (t->kind == TokenKind::Identifier) {
          return fail(*t, {TokenKind::Semicolon, TokenKind::Eof}, "sensors must be separated by whitespace");
        }
        return fail(*t, {TokenKind::Semicolon, TokenKind::Eof});
      }
      take();
      if (!motion(program)) return false;
    }
  }

  /// nullptr after a lexical error.
  const Token* peek(ExpectedKinds expected) {
    if (!lookahead_) {
      lookahead_ = lexer_.next(expected);
      if (lexer_.error()) {
        error_ = lexer_.error();
        return nullptr;
      }
    }
    return &*lookahead_;
  }

  Token take() {
    Token t = *lookahead_;
    lookahead_.reset();
    return t;
  }

  bool fail(const Token& found, ExpectedKinds expected, std::string message = {}) {
    return fail(found.span, found, expected, std::move(message));
  }

  bool fail(Span span, const Token& found, ExpectedKinds expected, std::string message = {}) {
    error_ = Diagnostic{span, expected, found.kind, std::string(found.lexeme), std::move(message)};
    return false;
  }

  bool expect(TokenKind kind, Token& out) {
    const Token* t = peek({kind});
    if (!t) return false;
    if (t->kind != kind) return fail(*t, {kind});
    out = take();
    return true;
  }

  bool integer(const Token& t, Timestep& out) {
    if (t.lexeme.size() > 9) return fail(t, {TokenKind::Integer}, "integer too large");
    std::uint64_t v = 0;
    for (char c : t.lexeme) v = v * 10 + static_cast<std::uint64_t>(c - '0');
    out = static_cast<Timestep>(v);
    return true;
  }

  bool motion(MotionProgram& program) {
    MotionSpec m;
    Token open, t1, comma, t2, close;
    if (!expect(TokenKind::LBracket, open)) return false;

    if (!expect(TokenKind::Integer, t1) || !integer(t1, m.t_start)) return false;
    if (m.t_start >= horizon_.T) {
      return fail(t1, {TokenKind::Integer}, "t_start must be below the horizon " + std::to_string(horizon_.T));
    }
    if (!expect(TokenKind::Comma, comma)) return false;

    if (!expect(TokenKind::Integer, t2) || !integer(t2, m.t_end)) return false;
    if (m.t_end > horizon_.T) {
      return fail(t2, {TokenKind::Integer}, "t_end exceeds the horizon " + std::to_string(horizon_.T));
    }
    if (!expect(TokenKind::RBracket, close)) return false;
    if (m.t_start >= m.t_end) {
      return fail({open.span.begin, close.span.end}, close, {TokenKind::RBracket}, "t_start < t_end violated");
    }

    std::bitset<kChannelCount> used;
    if (!sensor(m, used)) return false;
    std::size_t prev_end = last_end_;
    for (;;) {
      const Token* t = peek({TokenKind::Identifier, TokenKind::Semicolon, TokenKind::Eof});
      if (!t) return false;
      if (t->kind != TokenKind::Identifier || t->span.begin == prev_end) break;
      if (!sensor(m, used)) return false;
      prev_end = last_end_;
    }
    program.motions.push_back(std::move(m));
    return true;
  }

  bool sensor(MotionSpec& m, std::bitset<kChannelCount>& used) {
    Token name, dot, axis_tok, paren, close;
    if (!expect(TokenKind::Identifier, name)) return false;
    auto joint = registry_.find(name.lexeme);
    if (!joint) {
      return fail(name, {TokenKind::Identifier},
                  "unknown joint '" + std::string(name.lexeme) + "' (nearest: " + registry_.nearest(name.lexeme) +
                      ")");
    }
    if (!expect(TokenKind::Dot, dot)) return false;

    if (!expect(TokenKind::Identifier, axis_tok)) return false;
    std::optional<Axis> axis;
    if (axis_tok.lexeme.size() == 1) axis = axis_from_char(axis_tok.lexeme[0]);
    if (!axis) return fail(axis_tok, {TokenKind::Identifier}, "axis must be x, y or z");
    const Channel channel{*joint, *axis};
    if (used.test(channel.index())) return fail(axis_tok, {TokenKind::Identifier}, "duplicate channel in motion");
    used.set(channel.index());

    if (!expect(TokenKind::LParen, paren)) return false;
    const Token* value = peek({TokenKind::Number});
    if (!value) return false;
    if (value->kind != TokenKind::Number && value->kind != TokenKind::Integer) {
      return fail(*value, {TokenKind::Number});
    }
    const Token num = take();
    Target target;
    if (!to_target(num, target)) return false;
    if (!expect(TokenKind::RParen, close)) return false;
    last_end_ = close.span.end;
    m.sensors.push_back({channel, target});
    return true;
  }

  bool to_target(const Token& t, Target& out) {
    std::string_view s = t.lexeme;
    const bool negative = !s.empty() && s.front() == '-';
    if (negative) s.remove_prefix(1);
    const auto dot = s.find('.');
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.size() > 1) return fail(t, {TokenKind::Number}, "target outside [-1, 1]");
    std::int32_t scaled = (whole[0] - '0') * Target::kScale;
    std::int32_t place = Target::kScale / 10;
    for (char c : frac) {
      scaled += (c - '0') * place;
      place /= 10;
    }
    if (scaled > Target::kScale) return fail(t, {TokenKind::Number}, "target outside [-1, 1]");
    out = Target::from_scaled(negative ? -scaled : scaled);
    return true;
  }

  Lexer lexer_;
  Horizon horizon_;
  const JointRegistry& registry_;
  std::optional<Token> lookahead_;
  std::optional<Diagnostic> error_;
  std::size_t last_end_ = 0;
};

/// Parses one program without throwing on malformed input.
inline ParseOutcome try_parse(std::string_view text, Horizon horizon = {},
                              const JointRegistry& registry = JointRegistry::smpl()) {
  return Parser(text, horizon, registry).run();
}

/// Throws ParseError on the first syntax or constraint violation.
inline ParseResult parse_with_warnings(std::string_view text, Horizon horizon = {},
                                       const JointRegistry& registry = JointRegistry::smpl()) {
  auto out = try_parse(text, horizon, registry);
  if (out.error) throw ParseError(std::move(*out.error));
  return std::move(*out.result);
}

inline MotionProgram parse(std::string_view text, Horizon horizon = {},
                           const JointRegistry& registry = JointRegistry::smpl()) {
  return parse_with_warnings(text, horizon, registry).program;
}

}  // namespace exact

#include <gtest/gtest.h>

#include <map>
#include <string>

#include "support.hpp"

namespace exact {
namespace {

ParseError parse_error(std::string_view text, Horizon h = {}) {
  try {
    parse(text, h);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse error for: " << text;
  return ParseError({}, {TokenKind::Eof}, Token{}, "");
}

TEST(Lexer, TokenKindsAndSpans) {
  const auto toks = tokenize("[0,100]LArm.x(-0.3) ;");
  const TokenKind kinds[] = {TokenKind::LBracket,  TokenKind::Integer, TokenKind::Comma,  TokenKind::Integer,
                             TokenKind::RBracket,  TokenKind::Identifier, TokenKind::Dot, TokenKind::Identifier,
                             TokenKind::LParen,    TokenKind::Number,  TokenKind::RParen, TokenKind::Semicolon,
                             TokenKind::Eof};
  ASSERT_EQ(toks.size(), std::size(kinds));
  for (std::size_t i = 0; i < toks.size(); ++i) EXPECT_EQ(toks[i].kind, kinds[i]) << i;
  EXPECT_EQ(toks[9].lexeme, "-0.3");
  EXPECT_EQ(toks[9].span.begin, 14u);
  EXPECT_EQ(toks[9].span.end, 18u);
  EXPECT_EQ(toks[11].span.begin, 20u);
  for (std::size_t i = 1; i < toks.size(); ++i) EXPECT_LE(toks[i - 1].span.end, toks[i].span.begin);
}

TEST(Lexer, IntegerVersusNumber) {
  EXPECT_EQ(tokenize("1")[0].kind, TokenKind::Integer);
  EXPECT_EQ(tokenize("-1")[0].kind, TokenKind::Number);
  EXPECT_EQ(tokenize("1.0")[0].kind, TokenKind::Number);
  EXPECT_EQ(tokenize("0.1234")[0].kind, TokenKind::Number);
  EXPECT_THROW(tokenize("0.12345"), ParseError);
  EXPECT_THROW(tokenize("01"), ParseError);
  EXPECT_THROW(tokenize("1."), ParseError);
  EXPECT_THROW(tokenize("-"), ParseError);
  EXPECT_THROW(tokenize("#"), ParseError);
}

TEST(Parse, ShortAndTwoMotionForms) {
  const auto one = parse("[0,100]LArm.x(0.3)");
  ASSERT_EQ(one.motions.size(), 1u);
  ASSERT_EQ(one.motions[0].sensors.size(), 1u);
  EXPECT_EQ(one.motions[0].t_start, 0u);
  EXPECT_EQ(one.motions[0].t_end, 100u);
  EXPECT_EQ(one.motions[0].sensors[0].channel, (Channel{Joint::LShoulder, Axis::X}));
  EXPECT_EQ(one.motions[0].sensors[0].target.scaled(), 3000);

  const auto two = parse("[0,300]LArm.x(0.3);[300,600]RArm.y(0.1)");
  ASSERT_EQ(two.motions.size(), 2u);
  EXPECT_EQ(two.motions[1].t_start, 300u);
  EXPECT_EQ(two.motions[1].t_end, 600u);
  EXPECT_EQ(two.motions[1].sensors[0].channel, (Channel{Joint::RShoulder, Axis::Y}));
  EXPECT_EQ(two.motions[1].sensors[0].target.scaled(), 1000);
}

TEST(Parse, SharedBoundaryWarns) {
  const auto r = parse_with_warnings("[0,300]LArm.x(0.3);[300,600]RArm.y(0.1)");
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_TRUE(parse_with_warnings("[0,100]LArm.x(0.3)").warnings.empty());
}

TEST(Parse, ManyMotionsAndSensors) {
  const auto p = parse("[0,10]Head.x(0) Neck.y(-1) LHand.z(1.0);[10,20]Spine1.x(0.5);[30,40]RFoot.y(-0.0001)");
  ASSERT_EQ(p.motions.size(), 3u);
  EXPECT_EQ(p.motions[0].sensors.size(), 3u);
  EXPECT_EQ(p.motions[0].sensors[1].target.scaled(), -10000);
  EXPECT_EQ(p.motions[2].sensors[0].target.scaled(), -1);
}

TEST(Parse, WhitespaceBetweenTokens) {
  const auto p = parse(" [ 0 ,\t100 ]\nLArm . x ( 0.3 ) \r\n RArm.y(1) ; [100,200]Head.z(0) \n");
  EXPECT_EQ(print(p), "[0,100]LArm.x(0.3) RArm.y(1.0);[100,200]Head.z(0.0)");
}

TEST(Parse, SourceOrderPreserved) {
  const auto p = parse("[100,200]Head.x(0);[0,50]Neck.x(0)");
  EXPECT_EQ(p.motions[0].t_start, 100u);
  EXPECT_EQ(print(p), "[0,50]Neck.x(0.0);[100,200]Head.x(0.0)");
}

TEST(ParseError, TargetOutOfRange) {
  const auto e = parse_error("[0,100]LArm.x(1.5)");
  EXPECT_EQ(e.found_kind(), TokenKind::Number);
  EXPECT_EQ(e.span().begin, 14u);
  EXPECT_EQ(e.span().end, 17u);
  EXPECT_NE(e.message().find("[-1, 1]"), std::string::npos);
  EXPECT_THROW(parse("[0,100]LArm.x(-1.0001)"), ParseError);
  EXPECT_THROW(parse("[0,100]LArm.x(10)"), ParseError);
  EXPECT_NO_THROW(parse("[0,100]LArm.x(-1)"));
}

TEST(ParseError, WindowConstraints) {
  EXPECT_NE(parse_error("[100,100]LArm.x(0)").message().find("t_start < t_end"), std::string::npos);
  EXPECT_NE(parse_error("[5,2]LArm.x(0)").message().find("t_start < t_end"), std::string::npos);
  EXPECT_NE(parse_error("[0,2000]LArm.x(0)").message().find("horizon"), std::string::npos);
  EXPECT_NE(parse_error("[10,20]LArm.x(0)", Horizon{10}).message().find("horizon"), std::string::npos);
  EXPECT_NO_THROW(parse("[0,10]LArm.x(0)", Horizon{10}));
}

TEST(ParseError, NamesAndAxes) {
  const auto e = parse_error("[0,1]LArn.x(0)");
  EXPECT_EQ(e.found_kind(), TokenKind::Identifier);
  EXPECT_EQ(e.found_lexeme(), "LArn");
  EXPECT_NE(e.message().find("LArm"), std::string::npos);
  EXPECT_EQ(parse_error("[0,1]LArm.w(0)").found_lexeme(), "w");
  EXPECT_EQ(parse_error("[0,1]LArm.xy(0)").found_lexeme(), "xy");
}

TEST(ParseError, DuplicateChannel) {
  const auto e = parse_error("[0,1]LArm.x(0) LShoulder.x(1)");
  EXPECT_NE(e.message().find("duplicate"), std::string::npos);
  EXPECT_NO_THROW(parse("[0,1]LArm.x(0) LArm.y(1)"));
  EXPECT_NO_THROW(parse("[0,1]LArm.x(0);[1,2]LArm.x(1)"));
}

TEST(ParseError, SyntaxShapes) {
  const char* bad[] = {"",
                       "   ",
                       "[0,100]",
                       "[0,100]LArm.x(0.3);",
                       "[0,100]LArm.x(0.3)RArm.y(0.1)",
                       "[0,100]LArm.x(0.3),",
                       "[0 100]LArm.x(0.3)",
                       "(0,100)LArm.x(0.3)",
                       "[0,100]LArm.x(0.3",
                       "[0,100]LArm.x()",
                       "[0,100]LArm(0.3)",
                       "[0,100]LArm.x(.3)",
                       "[0,100]LArm.x(+0.3)",
                       "[-1,100]LArm.x(0.3)",
                       "[0.5,100]LArm.x(0.3)",
                       "[0,100]LArm.x(0.3);;[100,200]RArm.y(0)",
                       "[0,100]LArm.x(0.3) garbage",
                       "[0,100]LArm.x(0.3)]",
                       "[0,100]1Arm.x(0.3)",
                       "[0,100]LArm.x(0.3)\x01"};
  for (const char* text : bad) {
    try {
      parse(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ParseError& e) {
      EXPECT_FALSE(e.expected().empty()) << text;
      EXPECT_LE(e.span().begin, e.span().end) << text;
      EXPECT_LE(e.span().end, std::string_view(text).size()) << text;
    }
  }
}

TEST(ParseError, MissingSeparatorMessage) {
  const auto e = parse_error("[0,100]LArm.x(0.3)RArm.y(0.1)");
  EXPECT_NE(e.message().find("whitespace"), std::string::npos);
  EXPECT_EQ(e.span().begin, 18u);
}

TEST(ParseError, SpansWithinInputForMutations) {
  // Single-character mutations of a valid program never produce a span
  // outside the text.
  const std::string base = "[0,100]LArm.x(0.3) RArm.y(-0.25);[100,200]Head.z(1)";
  const std::string alphabet = "[],;.()- 019xyzLR\t";
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (char c : alphabet) {
      std::string m = base;
      m[i] = c;
      try {
        parse(m);
      } catch (const ParseError& e) {
        EXPECT_LE(e.span().end, m.size()) << m;
        EXPECT_FALSE(e.expected().empty()) << m;
      }
      const std::string truncated = base.substr(0, i);
      try {
        parse(truncated);
      } catch (const ParseError& e) {
        EXPECT_LE(e.span().end, truncated.size()) << truncated;
      }
    }
  }
}

TEST(Print, Examples) {
  EXPECT_EQ(print(parse("[0,100]LShoulder.x(0.3)")), "[0,100]LArm.x(0.3)");
  EXPECT_EQ(print(parse("[0,50]LArm.x(0.3)   RArm.y(-0.25)")), "[0,50]LArm.x(0.3) RArm.y(-0.25)");
  EXPECT_EQ(print(parse("[0,1]Head.x(0)")), "[0,1]Head.x(0.0)");
  EXPECT_EQ(print(parse("[0,1]Head.x(-0)")), "[0,1]Head.x(0.0)");
  EXPECT_EQ(print(parse("[0,1]Head.x(0.1000)")), "[0,1]Head.x(0.1)");
  EXPECT_EQ(print(parse("[0,1]Head.x(-1.0)")), "[0,1]Head.x(-1.0)");
  EXPECT_EQ(print(parse("[0,1]Head.x(0.0001)")), "[0,1]Head.x(0.0001)");
}

TEST(Print, FormatTarget) {
  EXPECT_EQ(format_target(Target::from_scaled(0)), "0.0");
  EXPECT_EQ(format_target(Target::from_scaled(10000)), "1.0");
  EXPECT_EQ(format_target(Target::from_scaled(-2500)), "-0.25");
  EXPECT_EQ(format_target(Target::from_scaled(1230)), "0.123");
  EXPECT_EQ(format_target(Target::from_scaled(-1)), "-0.0001");
}

TEST(Print, ShortFormsAreCanonical) {
  for (const char* text : {"[0,100]LArm.x(0.3)", "[0,300]LArm.x(0.3);[300,600]RArm.y(0.1)"}) {
    EXPECT_EQ(print(parse(text)), text);
  }
}

TEST(RoundTrip, SampledPrograms) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto p = testing::sampled(seed, {1, 6}, {1, 5});
    const std::string text = print(p);
    ASSERT_EQ(parse(text), canonicalize(p)) << text;
    EXPECT_EQ(print(parse(text)), text);
  }
}

TEST(RoundTrip, PrintIsInjectiveOnCanonicalPrograms) {
  std::map<std::string, MotionProgram> seen;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const auto p = canonicalize(testing::sampled(seed, {1, 2}, {1, 1}));
    const auto [it, fresh] = seen.emplace(print(p), p);
    if (!fresh) {
      EXPECT_EQ(it->second, p);
    }
  }
}

}  // namespace
}  // namespace exact

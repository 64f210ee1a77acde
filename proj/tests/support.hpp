#pragma once

// Helpers and independent reference computations shared by the test suites.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exact/exact.hpp"

namespace exact::testing {

inline StateSample random_state(Rng& rng, bool with_vel = false) {
  StateSample s;
  for (double& v : s.pos) v = rng.symmetric();
  if (with_vel) {
    ChannelVector vel{};
    for (double& v : vel) v = rng.symmetric();
    s.vel = vel;
  }
  return s;
}

inline ActionSample random_action(Rng& rng) {
  ActionSample a;
  for (double& v : a.values) v = rng.symmetric();
  return a;
}

inline Buffer random_buffer(Rng& rng, std::size_t n) {
  Buffer b;
  for (std::size_t i = 0; i < n; ++i) b.push_back({random_state(rng), rng.symmetric()});
  return b;
}

inline MotionProgram sampled(std::uint64_t seed, IntRange motions = {1, 4}, IntRange sensors = {1, 3}) {
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.motions = motions;
  cfg.sensors = sensors;
  return sample_program(cfg);
}

/// e^x by its power series, summed until terms vanish.
inline double series_exp(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= x / k;
    sum += term;
  }
  return sum;
}

inline double series_logistic(double u) { return 1.0 / (1.0 + series_exp(-u)); }

enum class ParserVerdict { Accept, Viable, Dead };

/// Accept when `text` parses. Otherwise Viable when some extension of `text`
/// might still parse, judged only from the parser's first error: an error at
/// end of input, or inside an unfinished identifier that is a prefix of a
/// registry name or axis letter. Dead otherwise.
inline ParserVerdict parser_verdict(std::string_view text, Horizon horizon, const JointRegistry& registry) {
  const auto out = try_parse(text, horizon, registry);
  if (out.ok()) return ParserVerdict::Accept;
  const Diagnostic& e = *out.error;
  if (e.found_kind == TokenKind::Eof) return ParserVerdict::Viable;
  if (e.found_kind == TokenKind::Identifier && e.span.end == text.size()) {
    const std::string& lex = e.found_lexeme;
    for (const auto& n : registry.names()) {
      if (n.text.starts_with(lex)) return ParserVerdict::Viable;
    }
    if (lex == "x" || lex == "y" || lex == "z") return ParserVerdict::Viable;
  }
  return ParserVerdict::Dead;
}

inline bool parser_accepts(std::string_view text, Horizon horizon, const JointRegistry& registry) {
  return parser_verdict(text, horizon, registry) == ParserVerdict::Accept;
}

/// Exhaustive cross-check of the prefix automaton against the parser over
/// every string up to `max_len` characters drawn from `alphabet`. Live
/// prefixes are expanded through the automaton; every character it rejects
/// starts a subtree that is explored using the parser alone (pruned once the
/// parser reports an error no extension can repair) to confirm nothing in it
/// parses.
struct MaskCheck {
  std::uint64_t live = 0;
  std::uint64_t accepted = 0;
  std::uint64_t dead = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::string> examples;

  void mismatch(const std::string& s, const char* why) {
    ++mismatches;
    if (examples.size() < 10) examples.push_back(std::string(why) + ": \"" + s + "\"");
  }
};

class MaskChecker {
 public:
  MaskChecker(std::string alphabet, std::size_t max_len, Horizon horizon, const JointRegistry& registry)
      : alphabet_(std::move(alphabet)), max_len_(max_len), horizon_(horizon), registry_(registry),
        automaton_(horizon, registry) {}

  MaskCheck run() {
    out_ = {};
    std::string prefix;
    live(prefix, automaton_.start());
    return out_;
  }

 private:
  void live(std::string& prefix, const PrefixState& state) {
    ++out_.live;
    const auto verdict = parser_verdict(prefix, horizon_, registry_);
    const bool acc = automaton_.accepting(state);
    if (acc) ++out_.accepted;
    if (acc != (verdict == ParserVerdict::Accept)) out_.mismatch(prefix, "accepting state disagrees with parser");
    if (verdict == ParserVerdict::Dead) out_.mismatch(prefix, "live prefix the parser rules out");
    if (prefix.size() == max_len_) return;
    for (char c : alphabet_) {
      prefix.push_back(c);
      if (auto next = automaton_.try_advance(state, c)) {
        live(prefix, *next);
      } else {
        dead(prefix);
      }
      prefix.pop_back();
    }
  }

  void dead(std::string& prefix) {
    ++out_.dead;
    const auto verdict = parser_verdict(prefix, horizon_, registry_);
    if (verdict == ParserVerdict::Accept) out_.mismatch(prefix, "rejected prefix that parses");
    if (verdict == ParserVerdict::Dead || prefix.size() == max_len_) return;
    for (char c : alphabet_) {
      prefix.push_back(c);
      dead(prefix);
      prefix.pop_back();
    }
  }

  std::string alphabet_;
  std::size_t max_len_;
  Horizon horizon_;
  const JointRegistry& registry_;
  PrefixAutomaton automaton_;
  MaskCheck out_;
};

inline std::string printable_ascii() {
  std::string s = "\t\n\r";
  for (int c = 32; c < 127; ++c) s += static_cast<char>(c);
  return s;
}

}  // namespace exact::testing

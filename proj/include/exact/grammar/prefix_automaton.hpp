#pragma once

// Character-level automaton over program prefixes. A state is live iff at
// least one completion of the consumed prefix parses without error; the window
// order, horizon bound, target range, joint names and per-motion channel
// uniqueness are all tracked left to right so masks are exact.

#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exact/errors.hpp"
#include "exact/joints.hpp"
#include "exact/program.hpp"
#include "exact/syntax/lexer.hpp"

namespace exact {

/// Vocabulary entry standing for end of generation.
inline constexpr std::string_view kEofToken = "<EOF>";

class PrefixState {
 public:
  enum class Phase : std::uint8_t {
    MotionStart,
    Start1,     // inside the t_start slot
    End1,       // whitespace after t_start digits
    Start2,     // inside the t_end slot
    End2,
    SensorStart,
    Name,
    NameDone,
    AxisStart,
    AxisDone,
    ValueStart,
    ValueSign,
    ValueInt,
    ValueDot,
    ValueFrac,
    ValueDone,
    SensorEnd,    // right after ')'
    SensorEndWs,  // whitespace after ')'
  };

  Phase phase() const { return phase_; }

  friend bool operator==(const PrefixState&, const PrefixState&) = default;

 private:
  friend class PrefixAutomaton;

  Phase phase_ = Phase::MotionStart;
  std::uint8_t digits_ = 0;       // digits read in the current integer or fraction
  std::uint8_t whole_ = 0;        // integer part of the target literal (0 or 1)
  std::uint32_t value_ = 0;       // current integer literal
  std::uint32_t t_start_ = 0;
  std::int32_t node_ = 0;         // joint-name trie node
  Channel channel_{};             // joint (and axis once read) of the current sensor
  std::bitset<kChannelCount> used_;
};

class DeadPrefixError : public Error {
 public:
  DeadPrefixError(char ch, std::string admissible)
      : Error(describe(ch, admissible)), ch_(ch), admissible_(std::move(admissible)) {}

  char rejected() const noexcept { return ch_; }
  /// Every character that keeps the prefix live.
  const std::string& admissible() const noexcept { return admissible_; }

 private:
  static std::string describe(char ch, const std::string& admissible) {
    std::string out = "character ";
    if (ch >= 32 && ch < 127) {
      out += "'" + std::string(1, ch) + "'";
    } else {
      out += "code " + std::to_string(static_cast<unsigned char>(ch));
    }
    out += " leads to a dead prefix; admissible: ";
    for (char c : admissible) {
      if (c == ' ') out += "<space>";
      else if (c == '\t') out += "<tab>";
      else if (c == '\n') out += "<newline>";
      else if (c == '\r') out += "<cr>";
      else out += c;
    }
    return out;
  }

  char ch_;
  std::string admissible_;
};

class PrefixAutomaton {
 public:
  explicit PrefixAutomaton(Horizon horizon = {}, const JointRegistry& registry = JointRegistry::smpl())
      : horizon_(horizon) {
    if (horizon.T < 1) throw ConfigError("horizon must be positive");
    if (registry.joints().empty()) throw ConfigError("registry has no joints");
    trie_.push_back({});
    for (const auto& n : registry.names()) insert(n.text, n.joint);
  }

  PrefixState start() const { return PrefixState{}; }

  Horizon horizon() const { return horizon_; }

  std::optional<PrefixState> try_advance(const PrefixState& s, char c) const;

  PrefixState advance(const PrefixState& s, char c) const {
    if (auto next = try_advance(s, c)) return *next;
    throw DeadPrefixError(c, admissible(s));
  }

  std::optional<PrefixState> try_consume(PrefixState s, std::string_view text) const {
    for (char c : text) {
      auto next = try_advance(s, c);
      if (!next) return std::nullopt;
      s = *next;
    }
    return s;
  }

  /// State after `prefix`; throws DeadPrefixError at the first dead character.
  PrefixState consume(PrefixState s, std::string_view prefix) const {
    for (char c : prefix) s = advance(s, c);
    return s;
  }

  bool accepting(const PrefixState& s) const {
    return s.phase_ == PrefixState::Phase::SensorEnd || s.phase_ == PrefixState::Phase::SensorEndWs;
  }

  /// Characters (printable ASCII plus tab, newline, CR) that keep `s` live.
  std::string admissible(const PrefixState& s) const {
    std::string out;
    for (char c : {'\t', '\n', '\r'}) {
      if (try_advance(s, c)) out += c;
    }
    for (int c = 32; c < 127; ++c) {
      if (try_advance(s, static_cast<char>(c))) out += static_cast<char>(c);
    }
    return out;
  }

  /// mask[i] is true iff vocab[i] keeps the automaton live; kEofToken is
  /// allowed iff `s` is accepting.
  std::vector<bool> allowed_tokens(const PrefixState& s, std::span<const std::string> vocab) const {
    std::vector<bool> mask(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      mask[i] = vocab[i] == kEofToken ? accepting(s) : try_consume(s, vocab[i]).has_value();
    }
    return mask;
  }

 private:
  using Phase = PrefixState::Phase;

  struct TrieNode {
    std::vector<std::pair<char, std::int32_t>> children;
    std::optional<Joint> joint;       // set when a full name ends here
    std::bitset<kJointCount> reach;   // joints named somewhere in this subtree
  };

  void insert(std::string_view name, Joint joint) {
    std::int32_t node = 0;
    trie_[0].reach.set(ordinal(joint));
    for (char c : name) {
      std::int32_t next = child(node, c);
      if (next < 0) {
        next = static_cast<std::int32_t>(trie_.size());
        trie_.push_back({});
        trie_[node].children.emplace_back(c, next);
      }
      node = next;
      trie_[node].reach.set(ordinal(joint));
    }
    trie_[node].joint = joint;
  }

  std::int32_t child(std::int32_t node, char c) const {
    for (const auto& [ch, idx] : trie_[node].children) {
      if (ch == c) return idx;
    }
    return -1;
  }

  static bool joint_free(Joint j, const std::bitset<kChannelCount>& used) {
    const std::size_t base = ordinal(j) * kAxisCount;
    return !(used.test(base) && used.test(base + 1) && used.test(base + 2));
  }

  bool subtree_free(std::int32_t node, const std::bitset<kChannelCount>& used) const {
    const auto& reach = trie_[node].reach;
    for (std::size_t j = 0; j < kJointCount; ++j) {
      if (reach.test(j) && joint_free(static_cast<Joint>(j), used)) return true;
    }
    return false;
  }

  /// Some digit string extending `v` lies in (t_start, T].
  bool end_reachable(std::uint64_t v, std::uint64_t t_start) const {
    const std::uint64_t T = horizon_.T;
    if (v > t_start && v <= T) return true;
    if (v == 0) return false;
    for (std::uint64_t p = 10; v * p <= T; p *= 10) {
      const std::uint64_t lo = v * p;
      const std::uint64_t hi = lo + p - 1;
      if (hi > t_start && lo <= T) return true;
    }
    return false;
  }

  bool end_valid(const PrefixState& s) const {
    return s.digits_ > 0 && s.value_ > s.t_start_ && s.value_ <= horizon_.T;
  }

  std::optional<PrefixState> name_step(PrefixState s, std::int32_t from, char c) const {
    const std::int32_t next = child(from, c);
    if (next < 0 || !subtree_free(next, s.used_)) return std::nullopt;
    s.phase_ = Phase::Name;
    s.node_ = next;
    return s;
  }

  Horizon horizon_;
  std::vector<TrieNode> trie_;
};

inline std::optional<PrefixState> PrefixAutomaton::try_advance(const PrefixState& in, char c) const {
  PrefixState s = in;
  const bool ws = is_space(c);
  const bool digit = is_digit(c);
  const std::uint32_t d = digit ? static_cast<std::uint32_t>(c - '0') : 0;

  auto go = [&](Phase p) -> std::optional<PrefixState> {
    s.phase_ = p;
    return s;
  };

  switch (s.phase_) {
    case Phase::MotionStart:
      if (ws) return s;
      if (c == '[') {
        s.digits_ = 0;
        s.value_ = 0;
        s.used_.reset();
        return go(Phase::Start1);
      }
      return std::nullopt;

    case Phase::Start1:
      if (digit) {
        if (s.digits_ > 0 && s.value_ == 0) return std::nullopt;
        const std::uint64_t v = std::uint64_t{s.value_} * 10 + d;
        if (v + 1 > horizon_.T) return std::nullopt;
        s.value_ = static_cast<std::uint32_t>(v);
        ++s.digits_;
        return s;
      }
      if (ws) return s.digits_ == 0 ? std::optional(s) : go(Phase::End1);
      if (c == ',' && s.digits_ > 0) {
        s.t_start_ = s.value_;
        s.value_ = 0;
        s.digits_ = 0;
        return go(Phase::Start2);
      }
      return std::nullopt;

    case Phase::End1:
      if (ws) return s;
      if (c == ',') {
        s.t_start_ = s.value_;
        s.value_ = 0;
        s.digits_ = 0;
        return go(Phase::Start2);
      }
      return std::nullopt;

    case Phase::Start2:
      if (digit) {
        if (s.digits_ > 0 && s.value_ == 0) return std::nullopt;
        const std::uint64_t v = std::uint64_t{s.value_} * 10 + d;
        if (!end_reachable(v, s.t_start_)) return std::nullopt;
        s.value_ = static_cast<std::uint32_t>(v);
        ++s.digits_;
        return s;
      }
      if (ws) {
        if (s.digits_ == 0) return s;
        return end_valid(s) ? go(Phase::End2) : std::nullopt;
      }
      if (c == ']' && end_valid(s)) return go(Phase::SensorStart);
      return std::nullopt;

    case Phase::End2:
      if (ws) return s;
      if (c == ']') return go(Phase::SensorStart);
      return std::nullopt;

    case Phase::SensorStart:
      if (ws) return s;
      return name_step(s, 0, c);

    case Phase::Name: {
      if (is_ident_char(c)) return name_step(s, s.node_, c);
      const auto& joint = trie_[s.node_].joint;
      if (!joint || !joint_free(*joint, s.used_)) return std::nullopt;
      s.channel_.joint = *joint;
      if (c == '.') return go(Phase::AxisStart);
      if (ws) return go(Phase::NameDone);
      return std::nullopt;
    }

    case Phase::NameDone:
      if (ws) return s;
      if (c == '.') return go(Phase::AxisStart);
      return std::nullopt;

    case Phase::AxisStart: {
      if (ws) return s;
      const auto axis = axis_from_char(c);
      if (!axis) return std::nullopt;
      const Channel ch{s.channel_.joint, *axis};
      if (s.used_.test(ch.index())) return std::nullopt;
      s.channel_ = ch;
      s.used_.set(ch.index());
      return go(Phase::AxisDone);
    }

    case Phase::AxisDone:
      if (ws) return s;
      if (c == '(') return go(Phase::ValueStart);
      return std::nullopt;

    case Phase::ValueStart:
      if (ws) return s;
      if (c == '-') return go(Phase::ValueSign);
      [[fallthrough]];
    case Phase::ValueSign:
      if (c == '0' || c == '1') {
        s.whole_ = static_cast<std::uint8_t>(d);
        s.digits_ = 0;
        return go(Phase::ValueInt);
      }
      return std::nullopt;

    case Phase::ValueInt:
      if (c == '.') return go(Phase::ValueDot);
      if (ws) return go(Phase::ValueDone);
      if (c == ')') return go(Phase::SensorEnd);
      return std::nullopt;

    case Phase::ValueDot:
    case Phase::ValueFrac:
      if (digit) {
        if (s.digits_ == kMaxFractionDigits) return std::nullopt;
        if (s.whole_ == 1 && d != 0) return std::nullopt;
        ++s.digits_;
        return go(Phase::ValueFrac);
      }
      if (s.phase_ == Phase::ValueDot) return std::nullopt;
      if (ws) return go(Phase::ValueDone);
      if (c == ')') return go(Phase::SensorEnd);
      return std::nullopt;

    case Phase::ValueDone:
      if (ws) return s;
      if (c == ')') return go(Phase::SensorEnd);
      return std::nullopt;

    case Phase::SensorEnd:
    case Phase::SensorEndWs:
      if (ws) return go(Phase::SensorEndWs);
      if (c == ';') return go(Phase::MotionStart);
      if (s.phase_ == Phase::SensorEndWs) return name_step(s, 0, c);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace exact

#pragma once

// Skeleton channel registry: 23 SMPL body joints (root excluded), three axes
// each, flattened into the 69 position channels of a state sample.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exact/errors.hpp"

namespace exact {

enum class Joint : std::uint8_t {
  LHip,
  RHip,
  Spine1,
  LKnee,
  RKnee,
  Spine2,
  LAnkle,
  RAnkle,
  Spine3,
  LFoot,
  RFoot,
  Neck,
  LCollar,
  RCollar,
  Head,
  LShoulder,
  RShoulder,
  LElbow,
  RElbow,
  LWrist,
  RWrist,
  LHand,
  RHand,
};

enum class Axis : std::uint8_t { X, Y, Z };

enum class Side : std::uint8_t { Left, Right, Center };

inline constexpr std::size_t kJointCount = 23;
inline constexpr std::size_t kAxisCount = 3;
inline constexpr std::size_t kChannelCount = kJointCount * kAxisCount;

struct JointInfo {
  Joint joint;
  std::string_view name;       // canonical name
  std::string_view base;       // name with the side prefix removed
  Side side;
  std::string_view alias;      // empty when the joint has no alias
};

namespace detail {

constexpr Side side_of(std::string_view name) {
  if (name.starts_with('L')) return Side::Left;
  if (name.starts_with('R')) return Side::Right;
  return Side::Center;
}

constexpr std::string_view base_of(std::string_view name) {
  return side_of(name) == Side::Center ? name : name.substr(1);
}

constexpr JointInfo make_info(Joint j, std::string_view name, std::string_view alias = {}) {
  return JointInfo{j, name, base_of(name), side_of(name), alias};
}

}  // namespace detail

/// Ordinal order of this table defines channel indices.
inline constexpr std::array<JointInfo, kJointCount> kJointTable{{
    detail::make_info(Joint::LHip, "LHip"),
    detail::make_info(Joint::RHip, "RHip"),
    detail::make_info(Joint::Spine1, "Spine1"),
    detail::make_info(Joint::LKnee, "LKnee"),
    detail::make_info(Joint::RKnee, "RKnee"),
    detail::make_info(Joint::Spine2, "Spine2"),
    detail::make_info(Joint::LAnkle, "LAnkle"),
    detail::make_info(Joint::RAnkle, "RAnkle"),
    detail::make_info(Joint::Spine3, "Spine3"),
    detail::make_info(Joint::LFoot, "LFoot"),
    detail::make_info(Joint::RFoot, "RFoot"),
    detail::make_info(Joint::Neck, "Neck"),
    detail::make_info(Joint::LCollar, "LCollar"),
    detail::make_info(Joint::RCollar, "RCollar"),
    detail::make_info(Joint::Head, "Head"),
    detail::make_info(Joint::LShoulder, "LShoulder", "LArm"),
    detail::make_info(Joint::RShoulder, "RShoulder", "RArm"),
    detail::make_info(Joint::LElbow, "LElbow"),
    detail::make_info(Joint::RElbow, "RElbow"),
    detail::make_info(Joint::LWrist, "LWrist"),
    detail::make_info(Joint::RWrist, "RWrist"),
    detail::make_info(Joint::LHand, "LHand"),
    detail::make_info(Joint::RHand, "RHand"),
}};

constexpr std::size_t ordinal(Joint j) { return static_cast<std::size_t>(j); }
constexpr std::size_t ordinal(Axis a) { return static_cast<std::size_t>(a); }

constexpr const JointInfo& info(Joint j) { return kJointTable[ordinal(j)]; }

constexpr Side side_of(Joint j) { return info(j).side; }

/// Name used when printing programs: the alias if one exists, else canonical.
constexpr std::string_view surface_name(Joint j) {
  const auto& i = info(j);
  return i.alias.empty() ? i.name : i.alias;
}

constexpr char axis_char(Axis a) { return static_cast<char>('x' + ordinal(a)); }

constexpr std::optional<Axis> axis_from_char(char c) {
  if (c < 'x' || c > 'z') return std::nullopt;
  return static_cast<Axis>(c - 'x');
}

inline std::string_view to_string(Side s) {
  switch (s) {
    case Side::Left: return "Left";
    case Side::Right: return "Right";
    case Side::Center: return "Center";
  }
  return "?";
}

/// One joint-axis position channel; index into the 69-vector s^pos.
struct Channel {
  Joint joint{};
  Axis axis{};

  constexpr std::size_t index() const { return ordinal(joint) * kAxisCount + ordinal(axis); }
  constexpr Side side() const { return side_of(joint); }

  static Channel from_index(std::size_t index) {
    if (index >= kChannelCount) {
      throw RegistryError("channel index " + std::to_string(index) + " outside [0, 68]");
    }
    return Channel{static_cast<Joint>(index / kAxisCount), static_cast<Axis>(index % kAxisCount)};
  }

  friend constexpr bool operator==(const Channel&, const Channel&) = default;
  friend constexpr auto operator<=>(const Channel& a, const Channel& b) { return a.index() <=> b.index(); }
};

constexpr std::size_t channel_index(Channel c) { return c.index(); }

namespace detail {

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::array<std::size_t, 33> small;
  std::vector<std::size_t> large;
  std::size_t* row = small.data();
  if (b.size() >= small.size()) {
    large.resize(b.size() + 1);
    row = large.data();
  }
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace detail

/// Set of joints a parser or automaton accepts. The default registry holds all
/// 23 joints; restricted registries are used to keep exhaustive checks small.
/// Channel indices always refer to the full table.
class JointRegistry {
 public:
  struct Name {
    std::string_view text;
    Joint joint;
  };

  JointRegistry() : JointRegistry(all_joints()) {}

  explicit JointRegistry(std::span<const Joint> joints) {
    for (Joint j : joints) {
      if (std::find(joints_.begin(), joints_.end(), j) == joints_.end()) joints_.push_back(j);
    }
    std::sort(joints_.begin(), joints_.end());
    for (Joint j : joints_) {
      names_.push_back({info(j).name, j});
      if (!info(j).alias.empty()) names_.push_back({info(j).alias, j});
    }
  }

  JointRegistry(std::initializer_list<Joint> joints)
      : JointRegistry(std::span<const Joint>(joints.begin(), joints.size())) {}

  static const JointRegistry& smpl() {
    static const JointRegistry registry;
    return registry;
  }

  std::span<const Joint> joints() const { return joints_; }

  /// Canonical names and aliases, in registry order.
  std::span<const Name> names() const { return names_; }

  bool contains(Joint j) const { return std::binary_search(joints_.begin(), joints_.end(), j); }

  std::optional<Joint> find(std::string_view name) const {
    for (const auto& n : names_) {
      if (n.text == name) return n.joint;
    }
    return std::nullopt;
  }

  /// Resolves a canonical name or alias; the error lists the closest entries.
  Joint resolve(std::string_view name) const {
    if (auto j = find(name)) return *j;
    throw RegistryError("unknown joint '" + std::string(name) + "'; nearest: " + nearest(name));
  }

  std::string nearest(std::string_view name, std::size_t count = 3) const {
    std::vector<std::pair<std::size_t, std::string_view>> scored;
    scored.reserve(names_.size());
    for (const auto& n : names_) scored.emplace_back(detail::levenshtein(name, n.text), n.text);
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out;
    for (std::size_t i = 0; i < std::min(count, scored.size()); ++i) {
      if (i) out += ", ";
      out += scored[i].second;
    }
    return out;
  }

 private:
  static std::vector<Joint> all_joints() {
    std::vector<Joint> all;
    for (const auto& i : kJointTable) all.push_back(i.joint);
    return all;
  }

  std::vector<Joint> joints_;
  std::vector<Name> names_;
};

inline Joint resolve_joint(std::string_view name) { return JointRegistry::smpl().resolve(name); }

}  // namespace exact

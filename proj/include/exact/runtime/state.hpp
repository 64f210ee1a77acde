#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "exact/errors.hpp"
#include "exact/joints.hpp"

namespace exact {

inline constexpr std::size_t kStateDim = 358;
/// Size of `extra` when present: 358 - 69 positions - 69 velocities.
inline constexpr std::size_t kExtraDim = kStateDim - 2 * kChannelCount;

using ChannelVector = std::array<double, kChannelCount>;

/// Proprioceptive state. `pos` is indexed by channel_index.
struct StateSample {
  ChannelVector pos{};
  std::optional<ChannelVector> vel;
  std::optional<std::vector<double>> extra;

  void check() const {
    if (extra) {
      if (!vel) throw ConfigError("state with extra features must also carry velocities");
      if (extra->size() != kExtraDim) {
        throw DimensionError("extra features must have " + std::to_string(kExtraDim) + " entries");
      }
    }
  }

  friend bool operator==(const StateSample&, const StateSample&) = default;
};

/// Joint forces, each component in [-1, 1].
struct ActionSample {
  ChannelVector values{};

  static ActionSample checked(const ChannelVector& v) {
    for (double x : v) {
      if (!(x >= -1.0 && x <= 1.0)) throw ConfigError("action component outside [-1, 1]");
    }
    return ActionSample{v};
  }
};

struct BufferEntry {
  StateSample state;
  double reward = 0.0;  // carried for completeness; compilation does not read it
};

using Buffer = std::vector<BufferEntry>;

using LatentVector = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot product of dimensions " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace exact

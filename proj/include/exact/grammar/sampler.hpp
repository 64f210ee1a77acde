#pragma once

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "exact/errors.hpp"
#include "exact/joints.hpp"
#include "exact/program.hpp"
#include "exact/random.hpp"

namespace exact {

struct IntRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;

  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct SamplerConfig {
  std::uint64_t seed = 0;
  IntRange motions{1, 4};
  IntRange sensors{1, 3};
  Horizon horizon{};
  int target_decimals = 2;
  /// Channels sensors are drawn from; empty means all 69.
  std::vector<Channel> channel_pool;
  /// Chance that a window starts later than its cut point, leaving a gap.
  double gap_probability = 0.25;
};

inline std::vector<Channel> all_channels() {
  std::vector<Channel> out;
  for (std::size_t i = 0; i < kChannelCount; ++i) out.push_back(Channel::from_index(i));
  return out;
}

inline std::vector<Channel> channels_on_side(Side side) {
  std::vector<Channel> out;
  for (const auto& c : all_channels()) {
    if (c.side() == side) out.push_back(c);
  }
  return out;
}

inline void check_config(const SamplerConfig& cfg) {
  auto range_ok = [](const IntRange& r) { return r.lo >= 1 && r.lo <= r.hi; };
  if (!range_ok(cfg.motions)) throw ConfigError("motions range must satisfy 1 <= lo <= hi");
  if (!range_ok(cfg.sensors)) throw ConfigError("sensors range must satisfy 1 <= lo <= hi");
  if (cfg.horizon.T < 2) throw ConfigError("horizon must be at least 2");
  if (cfg.motions.hi > static_cast<std::int64_t>(cfg.horizon.T)) {
    throw ConfigError("cannot fit " + std::to_string(cfg.motions.hi) + " motions into horizon " +
                      std::to_string(cfg.horizon.T));
  }
  if (cfg.target_decimals < 0 || cfg.target_decimals > 4) {
    throw ConfigError("target_decimals must be in [0, 4]");
  }
  if (!(cfg.gap_probability >= 0.0 && cfg.gap_probability <= 1.0)) {
    throw ConfigError("gap_probability must be in [0, 1]");
  }
  std::bitset<kChannelCount> seen;
  for (const auto& c : cfg.channel_pool) {
    if (seen.test(c.index())) throw ConfigError("channel pool contains duplicates");
    seen.set(c.index());
  }
  const std::size_t pool = cfg.channel_pool.empty() ? kChannelCount : cfg.channel_pool.size();
  if (cfg.sensors.hi > static_cast<std::int64_t>(pool)) {
    throw ConfigError("sensors upper bound " + std::to_string(cfg.sensors.hi) + " exceeds the " +
                      std::to_string(pool) + " available channels");
  }
}

/// Draws one valid program. Windows partition [0, T] at random cut points and
/// may be shortened from the left to leave gaps; sensors use distinct channels;
/// targets are uniform on the decimal grid of [-1, 1].
inline MotionProgram sample_program(const SamplerConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);
  const std::int64_t T = cfg.horizon.T;

  const auto k = rng.uniform(cfg.motions.lo, cfg.motions.hi);

  // Floyd's algorithm: k-1 distinct cut points from [1, T-1].
  std::set<std::int64_t> cuts;
  for (std::int64_t j = T - 1 - (k - 1) + 1; j <= T - 1; ++j) {
    const auto t = rng.uniform(1, j);
    if (!cuts.insert(t).second) cuts.insert(j);
  }
  std::vector<std::int64_t> bounds{0};
  bounds.insert(bounds.end(), cuts.begin(), cuts.end());
  bounds.push_back(T);

  const std::vector<Channel> pool = cfg.channel_pool.empty() ? all_channels() : cfg.channel_pool;
  std::int64_t grid = 1;
  for (int i = 0; i < cfg.target_decimals; ++i) grid *= 10;
  const std::int64_t step = Target::kScale / grid;

  MotionProgram program;
  for (std::int64_t i = 0; i < k; ++i) {
    MotionSpec m;
    std::int64_t lo = bounds[i];
    const std::int64_t hi = bounds[i + 1];
    if (hi - lo >= 2 && rng.bernoulli(cfg.gap_probability)) lo = rng.uniform(lo + 1, hi - 1);
    m.t_start = static_cast<Timestep>(lo);
    m.t_end = static_cast<Timestep>(hi);

    const auto n = rng.uniform(cfg.sensors.lo, cfg.sensors.hi);
    std::vector<Channel> shuffled = pool;
    for (std::int64_t s = 0; s < n; ++s) {
      const auto pick = rng.uniform(s, static_cast<std::int64_t>(shuffled.size()) - 1);
      std::swap(shuffled[s], shuffled[pick]);
    }
    shuffled.resize(n);
    std::sort(shuffled.begin(), shuffled.end());
    for (const auto& c : shuffled) {
      const auto level = rng.uniform(-grid, grid);
      m.sensors.push_back({c, Target::from_scaled(static_cast<std::int32_t>(level * step))});
    }
    program.motions.push_back(std::move(m));
  }
  return program;
}

}  // namespace exact

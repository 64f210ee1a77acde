#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "exact/errors.hpp"
#include "exact/random.hpp"
#include "exact/runtime/compiler.hpp"

namespace exact {

struct RolloutConfig {
  int n_candidates = 64;
  double step = 0.05;
  std::uint64_t seed = 0;
};

/// Greedy policy over random candidate actions under a toy integrator:
/// pos <- clip(pos + step * a, -1, 1), vel <- pos' - pos. Returns T + 1 states.
inline std::vector<StateSample> rollout(const StateSample& initial, const LatentTimeline& timeline,
                                        const RepresentationProvider& provider,
                                        const RolloutConfig& config = {}) {
  if (config.n_candidates < 1) throw ConfigError("rollout needs at least one candidate action");
  if (timeline.horizon().T < 1) throw ConfigError("rollout needs a horizon of at least 1");
  initial.check();

  Rng rng(config.seed);
  std::vector<StateSample> states;
  states.reserve(timeline.horizon().T + 1);
  states.push_back(initial);

  std::vector<ActionSample> candidates(static_cast<std::size_t>(config.n_candidates));
  for (Timestep t = 0; t < timeline.horizon().T; ++t) {
    const StateSample& s = states.back();
    for (auto& a : candidates) {
      for (double& v : a.values) v = rng.symmetric();
    }
    std::size_t best = 0;
    double best_q = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double q = q_value(s, candidates[i], t, timeline, provider);
      if (q > best_q) {
        best_q = q;
        best = i;
      }
    }

    StateSample next = s;
    ChannelVector vel{};
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      next.pos[c] = std::clamp(s.pos[c] + config.step * candidates[best].values[c], -1.0, 1.0);
      vel[c] = next.pos[c] - s.pos[c];
    }
    next.vel = vel;
    states.push_back(std::move(next));
  }
  return states;
}

}  // namespace exact

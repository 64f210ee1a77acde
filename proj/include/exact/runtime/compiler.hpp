#pragma once

// Reward compilation: a sensor is scored by a logistic of the squared
// distance to its target, a motion's sensors multiply, and a motion compiles
// to the buffer mean of that score times B(s). Q-values are F(s, a) . z_t.

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exact/errors.hpp"
#include "exact/model/disjunction.hpp"
#include "exact/program.hpp"
#include "exact/runtime/provider.hpp"
#include "exact/runtime/state.hpp"
#include "exact/runtime/timeline.hpp"

namespace exact {

enum class SensorSemantics {
  AsWritten,  // logistic((s - x)^2)
  Negated,    // logistic(-(s - x)^2)
};

inline std::string_view to_string(SensorSemantics s) {
  return s == SensorSemantics::AsWritten ? "as_written" : "negated";
}

inline SensorSemantics semantics_from_string(std::string_view s) {
  if (s == "as_written") return SensorSemantics::AsWritten;
  if (s == "negated") return SensorSemantics::Negated;
  throw ConfigError("sensor_semantics must be 'as_written' or 'negated', got '" + std::string(s) + "'");
}

struct CompileOptions {
  SensorSemantics semantics = SensorSemantics::AsWritten;
  DisjunctionMode disjunction = DisjunctionMode::AsWritten;
};

inline double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

inline double eval_sensor(const SensorTarget& sensor, const StateSample& state,
                          SensorSemantics semantics = SensorSemantics::AsWritten) {
  const double diff = state.pos[sensor.channel.index()] - sensor.target.value();
  const double sq = diff * diff;
  return logistic(semantics == SensorSemantics::AsWritten ? sq : -sq);
}

inline double eval_sensors(std::span<const SensorTarget> sensors, const StateSample& state,
                           SensorSemantics semantics = SensorSemantics::AsWritten) {
  if (sensors.empty()) throw ConfigError("empty sensor list");
  double product = 1.0;
  for (const auto& s : sensors) product *= eval_sensor(s, state, semantics);
  return product;
}

inline LatentVector checked_backward(const RepresentationProvider& provider, const StateSample& state) {
  LatentVector b = provider.backward(state);
  if (b.size() != provider.dim()) {
    throw DimensionError("provider returned " + std::to_string(b.size()) + " values, declared dim " +
                         std::to_string(provider.dim()));
  }
  return b;
}

/// Mean over the buffer of eval_sensors(s) * B(s); rewards are not read.
inline TimelineSegment compile_motion(const MotionSpec& motion, std::span<const BufferEntry> buffer,
                                      const RepresentationProvider& provider,
                                      SensorSemantics semantics = SensorSemantics::AsWritten) {
  if (buffer.empty()) throw ConfigError("cannot compile against an empty buffer");
  LatentVector z(provider.dim(), 0.0);
  for (const auto& entry : buffer) {
    const double weight = eval_sensors(motion.sensors, entry.state, semantics);
    const LatentVector b = checked_backward(provider, entry.state);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += weight * b[i];
  }
  const double n = static_cast<double>(buffer.size());
  for (double& v : z) v /= n;
  return {motion.t_start, motion.t_end, std::move(z)};
}

/// One segment per motion; overlapping windows are combined by disjunction.
inline LatentTimeline compile_program(const MotionProgram& program, std::span<const BufferEntry> buffer,
                                      const RepresentationProvider& provider, Horizon horizon = {},
                                      const CompileOptions& options = {}) {
  validate_or_throw(program, horizon);
  std::vector<TimelineSegment> segments;
  segments.reserve(program.motions.size());
  for (const auto& m : program.motions) {
    segments.push_back(compile_motion(m, buffer, provider, options.semantics));
  }
  return LatentTimeline::resolve(horizon, provider.dim(), segments, options.disjunction);
}

inline double q_value(const StateSample& state, const ActionSample& action, Timestep t,
                      const LatentTimeline& timeline, const RepresentationProvider& provider) {
  if (timeline.dim() != provider.dim()) {
    throw DimensionError("timeline dim " + std::to_string(timeline.dim()) + " differs from provider dim " +
                         std::to_string(provider.dim()));
  }
  const LatentVector* z = timeline.find(t);
  const LatentVector f = provider.forward(state, action);
  if (f.size() != timeline.dim()) throw DimensionError("forward output has the wrong dimension");
  if (z == nullptr) return 0.0;
  return dot(f, *z);
}

}  // namespace exact

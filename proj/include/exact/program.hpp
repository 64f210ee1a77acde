#pragma once

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <cmath>
#include <cstdlib>
#include <string>
#include <tuple>
#include <vector>

#include "exact/errors.hpp"
#include "exact/joints.hpp"

namespace exact {

/// Target position with four decimal digits, stored as value * 10^4.
class Target {
 public:
  static constexpr std::int32_t kScale = 10000;

  constexpr Target() = default;

  static constexpr Target from_scaled(std::int32_t scaled) { return Target(scaled); }

  /// Rounds to the nearest representable value.
  static Target from_double(double value) {
    return Target(static_cast<std::int32_t>(std::llround(value * kScale)));
  }

  constexpr std::int32_t scaled() const { return scaled_; }
  constexpr double value() const { return static_cast<double>(scaled_) / kScale; }
  constexpr bool in_range() const { return scaled_ >= -kScale && scaled_ <= kScale; }

  friend constexpr bool operator==(Target, Target) = default;
  friend constexpr auto operator<=>(Target, Target) = default;

 private:
  constexpr explicit Target(std::int32_t scaled) : scaled_(scaled) {}
  std::int32_t scaled_ = 0;
};

struct SensorTarget {
  Channel channel;
  Target target;

  friend bool operator==(const SensorTarget&, const SensorTarget&) = default;
};

using Timestep = std::uint32_t;

struct MotionSpec {
  Timestep t_start = 0;
  Timestep t_end = 0;
  std::vector<SensorTarget> sensors;

  friend bool operator==(const MotionSpec&, const MotionSpec&) = default;
};

struct MotionProgram {
  std::vector<MotionSpec> motions;

  std::size_t sensor_count() const {
    std::size_t n = 0;
    for (const auto& m : motions) n += m.sensors.size();
    return n;
  }

  Timestep max_t_end() const {
    Timestep t = 0;
    for (const auto& m : motions) t = std::max(t, m.t_end);
    return t;
  }

  friend bool operator==(const MotionProgram&, const MotionProgram&) = default;
};

/// Maximum timestep count of an execution window.
struct Horizon {
  Timestep T = 1024;

  friend constexpr bool operator==(Horizon, Horizon) = default;
};

struct Issue {
  enum class Severity { Error, Warning };
  Severity severity;
  std::size_t motion;  // index of the offending motion
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  bool ok() const { return errors.empty(); }

  std::string summary() const {
    std::string out;
    for (const auto& e : errors) {
      if (!out.empty()) out += "; ";
      out += "motion " + std::to_string(e.motion) + ": " + e.message;
    }
    return out;
  }
};

/// Checks every structural constraint; overlapping windows are warnings only.
inline ValidationReport validate(const MotionProgram& program, Horizon horizon = {}) {
  ValidationReport report;
  auto error = [&](std::size_t i, std::string msg) {
    report.errors.push_back({Issue::Severity::Error, i, std::move(msg)});
  };
  if (program.motions.empty()) error(0, "program has no motions");

  for (std::size_t i = 0; i < program.motions.size(); ++i) {
    const auto& m = program.motions[i];
    if (!(m.t_start < m.t_end)) error(i, "t_start < t_end violated");
    if (!(m.t_end <= horizon.T)) {
      error(i, "t_end <= T violated (t_end=" + std::to_string(m.t_end) +
                   ", T=" + std::to_string(horizon.T) + ")");
    }
    if (m.sensors.empty()) error(i, "motion has no sensors");
    std::bitset<kChannelCount> seen;
    for (const auto& s : m.sensors) {
      if (!s.target.in_range()) error(i, "target outside [-1, 1]");
      if (seen.test(s.channel.index())) {
        error(i, "duplicate channel " + std::string(info(s.channel.joint).name) + "." +
                     axis_char(s.channel.axis));
      }
      seen.set(s.channel.index());
    }
  }

  for (std::size_t i = 0; i < program.motions.size(); ++i) {
    for (std::size_t j = i + 1; j < program.motions.size(); ++j) {
      const auto& a = program.motions[i];
      const auto& b = program.motions[j];
      if (a.t_start <= b.t_end && b.t_start <= a.t_end) {
        report.warnings.push_back({Issue::Severity::Warning, j,
                                   "window overlaps motion " + std::to_string(i)});
      }
    }
  }
  return report;
}

inline void validate_or_throw(const MotionProgram& program, Horizon horizon = {}) {
  auto report = validate(program, horizon);
  if (!report.ok()) throw ValidationError(report.summary());
}

/// Sorts motions by (t_start, t_end); equal windows keep their source order.
inline MotionProgram canonicalize(MotionProgram program) {
  std::stable_sort(program.motions.begin(), program.motions.end(),
                   [](const MotionSpec& a, const MotionSpec& b) {
                     return std::tie(a.t_start, a.t_end) < std::tie(b.t_start, b.t_end);
                   });
  return program;
}

}  // namespace exact

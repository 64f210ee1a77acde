#pragma once

#include <cstdlib>
#include <string>

#include "exact/joints.hpp"
#include "exact/program.hpp"

namespace exact {

/// Shortest decimal form with at least one fraction digit: 0.3, -0.25, 1.0, 0.0.
inline std::string format_target(Target target) {
  const std::int32_t scaled = target.scaled();
  const std::int32_t mag = std::abs(scaled);
  std::string out = scaled < 0 ? "-" : "";
  out += std::to_string(mag / Target::kScale);
  out += '.';
  std::string frac = std::to_string(mag % Target::kScale);
  frac.insert(0, 4 - frac.size(), '0');
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  out += frac;
  return out;
}

inline std::string format_channel(Channel c) {
  std::string out(surface_name(c.joint));
  out += '.';
  out += axis_char(c.axis);
  return out;
}

inline std::string format_sensor(const SensorTarget& s) {
  return format_channel(s.channel) + "(" + format_target(s.target) + ")";
}

inline std::string format_motion(const MotionSpec& m) {
  std::string out = "[" + std::to_string(m.t_start) + "," + std::to_string(m.t_end) + "]";
  for (std::size_t i = 0; i < m.sensors.size(); ++i) {
    if (i) out += ' ';
    out += format_sensor(m.sensors[i]);
  }
  return out;
}

/// Canonical text of a program (motions in canonical order).
inline std::string print(const MotionProgram& program) {
  const MotionProgram canonical = canonicalize(program);
  std::string out;
  for (std::size_t i = 0; i < canonical.motions.size(); ++i) {
    if (i) out += ';';
    out += format_motion(canonical.motions[i]);
  }
  return out;
}

}  // namespace exact

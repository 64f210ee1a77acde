#pragma once

#include <cstdint>
#include <string>

#include "exact/errors.hpp"
#include "exact/program.hpp"

namespace exact {

/// Appends `second` after `first`, shifting its windows by first's latest t_end.
inline MotionProgram merge_sequential(const MotionProgram& first, const MotionProgram& second,
                                      Horizon horizon = {}) {
  validate_or_throw(first, horizon);
  validate_or_throw(second, horizon);
  const std::uint64_t offset = first.max_t_end();
  const std::uint64_t span = offset + second.max_t_end();
  if (span > horizon.T) {
    throw ValidationError("merged program spans " + std::to_string(span) + " timesteps, horizon is " +
                          std::to_string(horizon.T));
  }
  MotionProgram out = first;
  for (MotionSpec m : second.motions) {
    m.t_start += static_cast<Timestep>(offset);
    m.t_end += static_cast<Timestep>(offset);
    out.motions.push_back(std::move(m));
  }
  return out;
}

}  // namespace exact

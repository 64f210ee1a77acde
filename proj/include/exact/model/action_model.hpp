#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exact/errors.hpp"
#include "exact/model/disjunction.hpp"
#include "exact/model/selection.hpp"
#include "exact/runtime/compiler.hpp"
#include "exact/runtime/timeline.hpp"

namespace exact {

inline constexpr std::size_t kDefaultCap = 100;

/// An action label with its bounded, diversity-selected program set and the
/// disjunction of their compiled timelines (filled in by compile()).
struct ExecutableActionModel {
  std::string action_label;
  std::vector<MotionProgram> programs;
  std::size_t cap = kDefaultCap;
  Horizon horizon{};
  SelectionMeta selection_meta;
  std::optional<LatentTimeline> composed;

  const LatentTimeline& compile(std::span<const BufferEntry> buffer, const RepresentationProvider& provider,
                                const CompileOptions& options = {}) {
    if (!composed) {
      std::vector<LatentTimeline> parts;
      parts.reserve(programs.size());
      for (const auto& p : programs) parts.push_back(compile_program(p, buffer, provider, horizon, options));
      composed = LatentTimeline::compose(parts, options.disjunction);
    }
    return *composed;
  }
};

/// Selection only; the timeline is compiled on demand.
inline ExecutableActionModel select_model(std::string action_label, std::span<const MotionProgram> candidates,
                                          std::size_t cap = kDefaultCap, Horizon horizon = {}) {
  for (const auto& p : candidates) validate_or_throw(p, horizon);
  const auto sel = select_diverse_indices(candidates, cap);
  ExecutableActionModel model;
  model.action_label = std::move(action_label);
  model.cap = cap;
  model.horizon = horizon;
  model.selection_meta = sel.meta;
  for (std::size_t i : sel.indices) model.programs.push_back(candidates[i]);
  return model;
}

inline ExecutableActionModel build_model(std::string action_label, std::span<const MotionProgram> candidates,
                                         std::size_t cap, std::span<const BufferEntry> buffer,
                                         const RepresentationProvider& provider, Horizon horizon = {},
                                         const CompileOptions& options = {}) {
  auto model = select_model(std::move(action_label), candidates, cap, horizon);
  model.compile(buffer, provider, options);
  return model;
}

inline double model_q_value(const ExecutableActionModel& model, const StateSample& state,
                            const ActionSample& action, Timestep t, const RepresentationProvider& provider) {
  if (!model.composed) throw ConfigError("model '" + model.action_label + "' has not been compiled");
  return q_value(state, action, t, *model.composed, provider);
}

}  // namespace exact

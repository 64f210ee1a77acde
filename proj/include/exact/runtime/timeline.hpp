#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "exact/errors.hpp"
#include "exact/model/disjunction.hpp"
#include "exact/program.hpp"
#include "exact/runtime/state.hpp"

namespace exact {

/// Latent vector held over the closed window [t_start, t_end].
struct TimelineSegment {
  Timestep t_start = 0;
  Timestep t_end = 0;
  LatentVector z;

  friend bool operator==(const TimelineSegment&, const TimelineSegment&) = default;
};

/// Per-timestep latent vectors: the covering segment's z, or zero elsewhere.
/// Segments are sorted and pairwise disjoint.
class LatentTimeline {
 public:
  LatentTimeline(Horizon horizon, std::size_t dim) : horizon_(horizon), dim_(dim) {}

  /// Builds a timeline from possibly overlapping segments. Every maximal run
  /// of timesteps covered by the same set of segments becomes one segment
  /// whose z is the disjunction of the covering inputs (in input order).
  static LatentTimeline resolve(Horizon horizon, std::size_t dim,
                                std::span<const TimelineSegment> raw,
                                DisjunctionMode mode = DisjunctionMode::AsWritten) {
    LatentTimeline out(horizon, dim);
    std::vector<std::uint64_t> cuts;
    for (const auto& s : raw) {
      if (s.t_start > s.t_end || s.t_end > horizon.T) {
        throw ConfigError("segment [" + std::to_string(s.t_start) + "," + std::to_string(s.t_end) +
                          "] is not a window within the horizon");
      }
      if (s.z.size() != dim) throw DimensionError("segment dimension differs from timeline");
      cuts.push_back(s.t_start);
      cuts.push_back(std::uint64_t{s.t_end} + 1);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<std::size_t> prev_cover;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const auto lo = static_cast<Timestep>(cuts[c]);
      const auto hi = static_cast<Timestep>(cuts[c + 1] - 1);
      std::vector<std::size_t> cover;
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].t_start <= lo && raw[i].t_end >= hi) cover.push_back(i);
      }
      if (cover.empty()) {
        prev_cover.clear();
        continue;
      }
      if (cover == prev_cover && out.segments_.back().t_end + 1 == lo) {
        out.segments_.back().t_end = hi;
        continue;
      }
      std::vector<LatentVector> zs;
      for (std::size_t i : cover) zs.push_back(raw[i].z);
      out.segments_.push_back({lo, hi, compose_disjunction(zs, mode)});
      prev_cover = std::move(cover);
    }
    return out;
  }

  /// Pointwise disjunction of several timelines over the timesteps any of them covers.
  static LatentTimeline compose(std::span<const LatentTimeline> parts,
                                DisjunctionMode mode = DisjunctionMode::AsWritten) {
    if (parts.empty()) throw ConfigError("composition of an empty set of timelines");
    std::vector<TimelineSegment> all;
    for (const auto& p : parts) {
      if (p.horizon_ != parts.front().horizon_) throw ConfigError("timelines have different horizons");
      all.insert(all.end(), p.segments_.begin(), p.segments_.end());
    }
    return resolve(parts.front().horizon_, parts.front().dim_, all, mode);
  }

  Horizon horizon() const { return horizon_; }
  std::size_t dim() const { return dim_; }
  const std::vector<TimelineSegment>& segments() const { return segments_; }

  /// Covering segment's vector, or nullptr when t is uncovered.
  const LatentVector* find(Timestep t) const {
    check_time(t);
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](Timestep v, const TimelineSegment& s) { return v < s.t_start; });
    if (it == segments_.begin()) return nullptr;
    --it;
    return t <= it->t_end ? &it->z : nullptr;
  }

  LatentVector at(Timestep t) const {
    if (const auto* z = find(t)) return *z;
    return LatentVector(dim_, 0.0);
  }

 private:
  void check_time(Timestep t) const {
    if (t > horizon_.T) {
      throw ConfigError("timestep " + std::to_string(t) + " beyond horizon " + std::to_string(horizon_.T));
    }
  }

  Horizon horizon_;
  std::size_t dim_;
  std::vector<TimelineSegment> segments_;
};

}  // namespace exact

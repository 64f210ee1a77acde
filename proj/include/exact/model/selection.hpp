#pragma once

#include <algorithm>
#include <bitset>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "exact/errors.hpp"
#include "exact/program.hpp"
#include "exact/syntax/printer.hpp"

namespace exact {

inline std::bitset<kChannelCount> channel_set(const MotionProgram& p) {
  std::bitset<kChannelCount> out;
  for (const auto& m : p.motions) {
    for (const auto& s : m.sensors) out.set(s.channel.index());
  }
  return out;
}

/// Program length (motion count) difference plus the size of the symmetric
/// difference of the channel sets.
inline std::size_t diversity_distance(const MotionProgram& a, const MotionProgram& b) {
  const auto la = a.motions.size();
  const auto lb = b.motions.size();
  return (la > lb ? la - lb : lb - la) + (channel_set(a) ^ channel_set(b)).count();
}

struct SelectionMeta {
  std::size_t candidate_count = 0;
  /// Smallest pairwise diversity distance within the selection (0 for one program).
  double diversity_score = 0.0;

  friend bool operator==(const SelectionMeta&, const SelectionMeta&) = default;
};

struct Selection {
  std::vector<std::size_t> indices;  // into the candidate list, in pick order
  SelectionMeta meta;
};

/// Greedy farthest-point selection seeded with the longest program. Ties go to
/// the program whose canonical text sorts first, then to the lower index.
inline Selection select_diverse_indices(std::span<const MotionProgram> candidates, std::size_t cap) {
  if (candidates.empty()) throw ConfigError("no candidate programs to select from");
  if (cap < 1) throw ConfigError("cap must be at least 1");

  const std::size_t n = candidates.size();
  Selection out;
  out.meta.candidate_count = n;

  if (n <= cap) {
    for (std::size_t i = 0; i < n; ++i) out.indices.push_back(i);
  } else {
    std::vector<std::string> text(n);
    std::vector<std::bitset<kChannelCount>> channels(n);
    for (std::size_t i = 0; i < n; ++i) {
      text[i] = print(candidates[i]);
      channels[i] = channel_set(candidates[i]);
    }
    auto dist = [&](std::size_t i, std::size_t j) {
      const auto li = candidates[i].motions.size();
      const auto lj = candidates[j].motions.size();
      return (li > lj ? li - lj : lj - li) + (channels[i] ^ channels[j]).count();
    };
    auto before = [&](std::size_t i, std::size_t j) {
      return text[i] != text[j] ? text[i] < text[j] : i < j;
    };

    std::size_t seed = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const auto li = candidates[i].motions.size();
      const auto ls = candidates[seed].motions.size();
      if (li > ls || (li == ls && before(i, seed))) seed = i;
    }
    std::vector<bool> taken(n, false);
    std::vector<std::size_t> nearest(n, std::numeric_limits<std::size_t>::max());
    auto take = [&](std::size_t k) {
      taken[k] = true;
      out.indices.push_back(k);
      for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist(i, k));
    };
    take(seed);
    while (out.indices.size() < cap) {
      std::size_t best = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i]) continue;
        if (best == n || nearest[i] > nearest[best] || (nearest[i] == nearest[best] && before(i, best))) {
          best = i;
        }
      }
      take(best);
    }
  }

  if (out.indices.size() > 1) {
    std::size_t least = std::numeric_limits<std::size_t>::max();
    for (std::size_t a = 0; a < out.indices.size(); ++a) {
      for (std::size_t b = a + 1; b < out.indices.size(); ++b) {
        least = std::min(least, diversity_distance(candidates[out.indices[a]], candidates[out.indices[b]]));
      }
    }
    out.meta.diversity_score = static_cast<double>(least);
  }
  return out;
}

inline std::vector<MotionProgram> select_diverse(std::span<const MotionProgram> candidates, std::size_t cap) {
  const auto sel = select_diverse_indices(candidates, cap);
  std::vector<MotionProgram> out;
  for (std::size_t i : sel.indices) out.push_back(candidates[i]);
  return out;
}

}  // namespace exact

#pragma once

// Unordered edit distance between depth-3 program trees
// (root -> motions -> sensors). Time windows are dropped from the labels, so
// programs that differ only in timing are at distance zero. Mappings preserve
// the motion level: a sensor can only map to a sensor whose motion is mapped
// to its own motion, which makes the nested optimal assignment exact.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "exact/errors.hpp"
#include "exact/eval/assignment.hpp"
#include "exact/joints.hpp"
#include "exact/program.hpp"

namespace exact {

struct EditCostConfig {
  double w_side = 4.0;
  double w_joint = 2.0;
  double w_axis = 1.0;
  double w_target = 0.5;  // per unit of |target difference|
  double ins_del_sensor = 3.0;
  double ins_del_motion = 1.0;

  void check() const {
    for (double w : {w_side, w_joint, w_axis, w_target, ins_del_sensor, ins_del_motion}) {
      if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("edit costs must be positive and finite");
    }
    if (!(w_side > w_joint && w_joint > w_axis)) {
      throw ConfigError("edit costs must satisfy w_side > w_joint > w_axis");
    }
  }

  friend bool operator==(const EditCostConfig&, const EditCostConfig&) = default;
};

struct SensorLabel {
  Side side;
  std::string_view joint;  // joint name without its side prefix
  Axis axis;
  Target target;

  friend bool operator==(const SensorLabel&, const SensorLabel&) = default;
};

struct MotionNode {
  std::vector<SensorLabel> sensors;
};

struct ProgramTree {
  std::vector<MotionNode> motions;
};

inline ProgramTree to_tree(const MotionProgram& program) {
  ProgramTree tree;
  for (const auto& m : program.motions) {
    MotionNode node;
    for (const auto& s : m.sensors) {
      const auto& ji = info(s.channel.joint);
      node.sensors.push_back({ji.side, ji.base, s.channel.axis, s.target});
    }
    tree.motions.push_back(std::move(node));
  }
  return tree;
}

inline double relabel_cost(const SensorLabel& a, const SensorLabel& b, const EditCostConfig& c) {
  double cost = 0.0;
  if (a.side != b.side) cost += c.w_side;
  if (a.joint != b.joint) cost += c.w_joint;
  if (a.axis != b.axis) cost += c.w_axis;
  cost += c.w_target * std::abs(a.target.value() - b.target.value());
  return cost;
}

/// Cost of deleting (or inserting) a motion together with its sensors.
inline double motion_subtree_cost(const MotionNode& m, const EditCostConfig& c) {
  return c.ins_del_motion + c.ins_del_sensor * static_cast<double>(m.sensors.size());
}

inline double sensor_set_distance(const MotionNode& a, const MotionNode& b, const EditCostConfig& c) {
  return min_cost_matching(
      a.sensors.size(), b.sensors.size(),
      [&](std::size_t i, std::size_t j) { return relabel_cost(a.sensors[i], b.sensors[j], c); },
      [&](std::size_t) { return c.ins_del_sensor; }, [&](std::size_t) { return c.ins_del_sensor; });
}

inline double edit_distance(const ProgramTree& a, const ProgramTree& b, const EditCostConfig& costs = {}) {
  return min_cost_matching(
      a.motions.size(), b.motions.size(),
      [&](std::size_t i, std::size_t j) { return sensor_set_distance(a.motions[i], b.motions[j], costs); },
      [&](std::size_t i) { return motion_subtree_cost(a.motions[i], costs); },
      [&](std::size_t j) { return motion_subtree_cost(b.motions[j], costs); });
}

inline double edit_distance(const MotionProgram& a, const MotionProgram& b, const EditCostConfig& costs = {}) {
  return edit_distance(to_tree(a), to_tree(b), costs);
}

inline constexpr std::size_t kBruteForceMaxMotions = 4;
inline constexpr std::size_t kBruteForceMaxSensors = 3;

namespace detail {

/// Minimum over every injective partial map from A to B.
inline double enumerate_partial_maps(std::size_t na, std::size_t nb,
                                     const std::function<double(std::size_t, std::size_t)>& pair,
                                     const std::function<double(std::size_t)>& del,
                                     const std::function<double(std::size_t)>& ins) {
  std::vector<bool> used(nb, false);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double)> walk = [&](std::size_t i, double acc) {
    if (i == na) {
      double total = acc;
      for (std::size_t j = 0; j < nb; ++j) {
        if (!used[j]) total += ins(j);
      }
      best = std::min(best, total);
      return;
    }
    walk(i + 1, acc + del(i));
    for (std::size_t j = 0; j < nb; ++j) {
      if (used[j]) continue;
      used[j] = true;
      walk(i + 1, acc + pair(i, j));
      used[j] = false;
    }
  };
  walk(0, 0.0);
  return best;
}

}  // namespace detail

/// Exhaustive reference for edit_distance on small trees (at most 4 motions
/// of at most 3 sensors each).
inline double brute_force_edit_distance(const ProgramTree& a, const ProgramTree& b,
                                        const EditCostConfig& c = {}) {
  for (const auto* t : {&a, &b}) {
    if (t->motions.size() > kBruteForceMaxMotions) throw ConfigError("brute force limited to 4 motions");
    for (const auto& m : t->motions) {
      if (m.sensors.size() > kBruteForceMaxSensors) throw ConfigError("brute force limited to 3 sensors");
    }
  }
  auto sensors = [&](const MotionNode& x, const MotionNode& y) {
    return detail::enumerate_partial_maps(
        x.sensors.size(), y.sensors.size(),
        [&](std::size_t i, std::size_t j) { return relabel_cost(x.sensors[i], y.sensors[j], c); },
        [&](std::size_t) { return c.ins_del_sensor; }, [&](std::size_t) { return c.ins_del_sensor; });
  };
  return detail::enumerate_partial_maps(
      a.motions.size(), b.motions.size(),
      [&](std::size_t i, std::size_t j) { return sensors(a.motions[i], b.motions[j]); },
      [&](std::size_t i) { return motion_subtree_cost(a.motions[i], c); },
      [&](std::size_t j) { return motion_subtree_cost(b.motions[j], c); });
}

}  // namespace exact

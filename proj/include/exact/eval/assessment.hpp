#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exact/errors.hpp"
#include "exact/eval/edit_distance.hpp"
#include "exact/program.hpp"
#include "exact/runtime/compiler.hpp"

namespace exact {

enum class AssessmentMode {
  MeanSigma,  // mean of sigma(-d) over the model programs
  MinSigma,   // minimum sigma(-d): the farthest model program decides
  MaxSigma,   // maximum sigma(-d): nearest-neighbour variant
};

inline std::string_view to_string(AssessmentMode m) {
  switch (m) {
    case AssessmentMode::MeanSigma: return "mean_sigma";
    case AssessmentMode::MinSigma: return "min_sigma";
    case AssessmentMode::MaxSigma: return "max_sigma";
  }
  return "?";
}

inline AssessmentMode assessment_mode_from_string(std::string_view s) {
  if (s == "mean_sigma" || s == "mean") return AssessmentMode::MeanSigma;
  if (s == "min_sigma" || s == "min") return AssessmentMode::MinSigma;
  if (s == "max_sigma" || s == "max") return AssessmentMode::MaxSigma;
  throw ConfigError("mode must be mean_sigma, min_sigma or max_sigma, got '" + std::string(s) + "'");
}

struct AssessmentModel {
  std::string target_action;
  std::vector<MotionProgram> programs;
  EditCostConfig costs{};
  AssessmentMode mode = AssessmentMode::MeanSigma;
};

/// Scores queries against a model; program trees are built once.
class Assessor {
 public:
  explicit Assessor(const AssessmentModel& model) : costs_(model.costs), mode_(model.mode) {
    if (model.programs.empty()) throw ConfigError("assessment model '" + model.target_action + "' has no programs");
    costs_.check();
    for (const auto& p : model.programs) trees_.push_back(to_tree(p));
  }

  /// Value in (0, 0.5]; 0.5 only when the deciding distance(s) are zero.
  double score(const MotionProgram& query) const {
    const ProgramTree q = to_tree(query);
    double sum = 0.0;
    double lo = 1.0;
    double hi = 0.0;
    for (const auto& t : trees_) {
      const double r = logistic(-edit_distance(t, q, costs_));
      sum += r;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    switch (mode_) {
      case AssessmentMode::MeanSigma: return sum / static_cast<double>(trees_.size());
      case AssessmentMode::MinSigma: return lo;
      case AssessmentMode::MaxSigma: return hi;
    }
    return sum;
  }

 private:
  EditCostConfig costs_;
  AssessmentMode mode_;
  std::vector<ProgramTree> trees_;
};

inline double score(const AssessmentModel& model, const MotionProgram& query) {
  return Assessor(model).score(query);
}

/// Mann-Whitney estimate of P(pos > neg), ties counting one half.
inline double auroc(std::span<const double> positive, std::span<const double> negative) {
  if (positive.empty() || negative.empty()) throw ConfigError("auroc needs non-empty score lists");
  std::vector<double> neg(negative.begin(), negative.end());
  std::sort(neg.begin(), neg.end());
  std::uint64_t twice = 0;  // 2 * (wins + ties / 2)
  for (double p : positive) {
    const auto below = std::lower_bound(neg.begin(), neg.end(), p) - neg.begin();
    const auto upto = std::upper_bound(neg.begin(), neg.end(), p) - neg.begin();
    twice += 2 * static_cast<std::uint64_t>(below) + static_cast<std::uint64_t>(upto - below);
  }
  const double pairs = static_cast<double>(positive.size()) * static_cast<double>(neg.size());
  return static_cast<double>(twice) / (2.0 * pairs);
}

struct ActionInstances {
  std::string action;
  std::vector<MotionProgram> programs;
};

struct AurocMatrix {
  std::vector<std::string> actions;
  /// cells[target][query]
  std::vector<std::vector<double>> cells;
  /// Mean over off-diagonal cells.
  double mean_auc = 0.0;
};

/// Cell (target, query): AUROC of the target's own instances against the
/// query's instances, both scored by the target's model.
inline AurocMatrix auroc_matrix(std::span<const AssessmentModel> models,
                                std::span<const ActionInstances> instances) {
  if (models.size() < 2) throw ConfigError("auroc matrix needs at least two actions");
  if (models.size() != instances.size()) throw ConfigError("one instance set per model is required");
  const std::size_t n = models.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (models[i].target_action != instances[i].action) {
      throw ConfigError("model '" + models[i].target_action + "' and instances '" + instances[i].action +
                        "' are not aligned");
    }
    if (instances[i].programs.empty()) throw ConfigError("action '" + instances[i].action + "' has no instances");
  }

  AurocMatrix out;
  out.cells.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t target = 0; target < n; ++target) {
    out.actions.push_back(models[target].target_action);
    const Assessor assessor(models[target]);
    std::vector<std::vector<double>> scores(n);
    for (std::size_t q = 0; q < n; ++q) {
      for (const auto& p : instances[q].programs) scores[q].push_back(assessor.score(p));
    }
    for (std::size_t q = 0; q < n; ++q) out.cells[target][q] = auroc(scores[target], scores[q]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sum += out.cells[i][j];
    }
  }
  out.mean_auc = sum / static_cast<double>(n * (n - 1));
  return out;
}

}  // namespace exact

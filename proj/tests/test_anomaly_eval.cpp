#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"

namespace exact {
namespace {

double d(const char* a, const char* b, const EditCostConfig& c = {}) { return edit_distance(parse(a), parse(b), c); }

MotionProgram shuffled(const MotionProgram& p, Rng& rng) {
  MotionProgram out = p;
  for (std::size_t i = out.motions.size(); i > 1; --i) std::swap(out.motions[i - 1], out.motions[rng.below(i)]);
  for (auto& m : out.motions) {
    for (std::size_t i = m.sensors.size(); i > 1; --i) std::swap(m.sensors[i - 1], m.sensors[rng.below(i)]);
  }
  return out;
}

TEST(Assignment, MatchesPermutationSearch) {
  Rng rng(1);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (auto& row : cost) {
      for (double& v : row) v = trial % 3 == 0 ? static_cast<double>(rng.below(4)) : rng.unit() * 10.0;
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += cost[i][perm[i]];
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const auto got = solve_assignment(cost);
    std::vector<std::size_t> cols = got;
    std::sort(cols.begin(), cols.end());
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(cols[i], i);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost[i][got[i]];
    EXPECT_NEAR(total, best, 1e-9);
  }
  EXPECT_TRUE(solve_assignment({}).empty());
  EXPECT_THROW(solve_assignment({{1.0, 2.0}}), ConfigError);
}

TEST(Tree, Structure) {
  const auto t = to_tree(parse("[0,100]LArm.x(0.3)"));
  ASSERT_EQ(t.motions.size(), 1u);
  ASSERT_EQ(t.motions[0].sensors.size(), 1u);
  const auto& s = t.motions[0].sensors[0];
  EXPECT_EQ(s.side, Side::Left);
  EXPECT_EQ(s.joint, "Shoulder");
  EXPECT_EQ(s.axis, Axis::X);
  EXPECT_EQ(s.target, Target::from_double(0.3));

  EXPECT_EQ(to_tree(parse("[0,1]Head.x(0);[1,2]Neck.y(0) Spine1.z(1)")).motions.size(), 2u);
  const auto a = to_tree(parse("[0,100]LArm.x(0.3);[100,600]Head.y(1)"));
  const auto b = to_tree(parse("[7,8]LArm.x(0.3);[0,1]Head.y(1)"));
  ASSERT_EQ(a.motions.size(), b.motions.size());
  for (std::size_t i = 0; i < a.motions.size(); ++i) EXPECT_EQ(a.motions[i].sensors, b.motions[i].sensors);
}

TEST(EditDistance, Examples) {
  EXPECT_EQ(d("[0,100]LArm.x(0.3)", "[0,100]LArm.x(0.3)"), 0.0);
  EXPECT_DOUBLE_EQ(d("[0,100]LArm.x(0.3)", "[0,100]RArm.x(0.3)"), 4.0);
  EXPECT_DOUBLE_EQ(d("[0,100]LArm.x(0.3)", "[0,100]LArm.x(0.3);[100,200]LArm.y(0.3)"), 4.0);
  EXPECT_DOUBLE_EQ(d("[0,100]LArm.x(0.3)", "[0,100]LArm.y(0.3)"), 1.0);
  EXPECT_DOUBLE_EQ(d("[0,100]LArm.x(0.3)", "[0,100]LElbow.x(0.3)"), 2.0);
  EXPECT_DOUBLE_EQ(d("[0,100]LArm.x(0.3)", "[0,100]LArm.x(-0.5)"), 0.4);
  EXPECT_DOUBLE_EQ(d("[0,100]LArm.x(0.3)", "[0,100]Head.z(0.3)"), 6.0);  // delete + insert beats 7.0
  EXPECT_DOUBLE_EQ(d("[0,1]Head.x(0)", "[0,1]Head.x(0) Neck.x(0)"), 3.0);

  const ProgramTree empty{};
  EXPECT_EQ(edit_distance(empty, empty), 0.0);
  EXPECT_DOUBLE_EQ(edit_distance(empty, to_tree(parse("[0,1]Head.x(0) Neck.x(0)"))), 7.0);
}

TEST(EditDistance, CustomCosts) {
  EditCostConfig c;
  c.w_side = 10.0;
  c.ins_del_sensor = 20.0;
  EXPECT_DOUBLE_EQ(d("[0,100]LArm.x(0.3)", "[0,100]RArm.x(0.3)", c), 10.0);
  c.w_target = 2.0;
  EXPECT_DOUBLE_EQ(d("[0,1]Head.x(1)", "[0,1]Head.x(-1)", c), 4.0);
  EditCostConfig bad;
  bad.w_axis = 3.0;
  EXPECT_THROW(bad.check(), ConfigError);
  bad = {};
  bad.ins_del_motion = 0.0;
  EXPECT_THROW(bad.check(), ConfigError);
}

TEST(EditDistance, BruteForceExamples) {
  const auto a = to_tree(parse("[0,1]Head.x(0) Neck.y(0.5);[1,2]LArm.z(-1)"));
  EXPECT_EQ(brute_force_edit_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(brute_force_edit_distance(to_tree(parse("[0,1]Head.x(0)")), to_tree(parse("[0,1]Head.y(0)"))),
                   1.0);
  const auto big = to_tree(testing::sampled(1, {5, 5}, {1, 1}));
  EXPECT_THROW(brute_force_edit_distance(big, a), ConfigError);
  const auto wide = to_tree(testing::sampled(1, {1, 1}, {4, 4}));
  EXPECT_THROW(brute_force_edit_distance(a, wide), ConfigError);
}

TEST(EditDistance, AgreesWithBruteForce) {
  int checked = 0;
  for (std::uint64_t s = 0; checked < 600; ++s) {
    SamplerConfig cfg;
    cfg.seed = s;
    cfg.motions = {1, 4};
    cfg.sensors = {1, 3};
    cfg.target_decimals = 1;
    // A narrow channel pool makes partial matches and near ties common.
    if (s % 2 == 0) {
      cfg.channel_pool = {{Joint::LShoulder, Axis::X}, {Joint::RShoulder, Axis::X}, {Joint::LShoulder, Axis::Y},
                          {Joint::LElbow, Axis::X},    {Joint::Head, Axis::Z},      {Joint::RElbow, Axis::Y}};
    }
    const auto a = to_tree(sample_program(cfg));
    cfg.seed = s + 100000;
    const auto b = to_tree(sample_program(cfg));
    EXPECT_NEAR(edit_distance(a, b), brute_force_edit_distance(a, b), 1e-9) << s;
    ++checked;
  }
}

TEST(EditDistance, Pseudometric) {
  Rng rng(2);
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto a = testing::sampled(3 * s, {1, 5}, {1, 4});
    const auto b = testing::sampled(3 * s + 1, {1, 5}, {1, 4});
    const auto c = testing::sampled(3 * s + 2, {1, 5}, {1, 4});
    const double ab = edit_distance(a, b), bc = edit_distance(b, c), ac = edit_distance(a, c);
    EXPECT_EQ(edit_distance(a, a), 0.0);
    EXPECT_GE(ab, 0.0);
    EXPECT_NEAR(ab, edit_distance(b, a), 1e-9);
    EXPECT_LE(ac, ab + bc + 1e-9);
    EXPECT_NEAR(edit_distance(shuffled(a, rng), b), ab, 1e-9);
    EXPECT_NEAR(edit_distance(a, shuffled(b, rng)), ab, 1e-9);

    MotionProgram retimed = a;
    Timestep t = 0;
    for (auto& m : retimed.motions) {
      m.t_start = t;
      m.t_end = t + 1 + static_cast<Timestep>(rng.below(5));
      t = m.t_end;
    }
    EXPECT_EQ(edit_distance(retimed, a), 0.0);
    EXPECT_NEAR(edit_distance(retimed, b), ab, 1e-12);
  }
}

TEST(Score, Examples) {
  AssessmentModel m{"wave", {parse("[0,100]LArm.x(0.3)")}};
  EXPECT_DOUBLE_EQ(score(m, parse("[5,6]LArm.x(0.3)")), 0.5);
  m.mode = AssessmentMode::MinSigma;
  EXPECT_DOUBLE_EQ(score(m, parse("[5,6]LArm.x(0.3)")), 0.5);

  const double s4 = 1.0 / (1.0 + testing::series_exp(4.0));
  m.mode = AssessmentMode::MeanSigma;
  EXPECT_NEAR(score(m, parse("[0,100]RArm.x(0.3)")), s4, 1e-12);
  EXPECT_NEAR(s4, 0.0180, 1e-4);

  m.programs.push_back(parse("[0,100]RArm.x(0.3)"));
  const auto q = parse("[0,100]LArm.x(0.3)");
  EXPECT_NEAR(score(m, q), (0.5 + s4) / 2.0, 1e-12);
  EXPECT_NEAR(score(m, q), 0.2590, 1e-4);
  m.mode = AssessmentMode::MinSigma;
  EXPECT_NEAR(score(m, q), s4, 1e-12);
  m.mode = AssessmentMode::MaxSigma;
  EXPECT_DOUBLE_EQ(score(m, q), 0.5);

  EXPECT_THROW(score(AssessmentModel{"empty", {}}, q), ConfigError);
  EXPECT_EQ(assessment_mode_from_string("min"), AssessmentMode::MinSigma);
  EXPECT_THROW(assessment_mode_from_string("median"), ConfigError);
}

TEST(Score, RangeAndMonotonicity) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    AssessmentModel m{"a", {}};
    for (std::uint64_t i = 0; i < 4; ++i) m.programs.push_back(testing::sampled(s * 10 + i));
    const auto query = testing::sampled(s + 5000);
    for (auto mode : {AssessmentMode::MeanSigma, AssessmentMode::MinSigma, AssessmentMode::MaxSigma}) {
      m.mode = mode;
      const double v = score(m, query);
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 0.5);
    }
    m.mode = AssessmentMode::MeanSigma;
    const double before = score(m, query);
    m.programs.push_back(query);
    EXPECT_GE(score(m, query), before);
  }
}

TEST(Auroc, Examples) {
  EXPECT_EQ(auroc(std::vector{0.9, 0.8}, std::vector{0.2, 0.1}), 1.0);
  EXPECT_EQ(auroc(std::vector{0.3, 0.1, 0.3}, std::vector{0.3, 0.1, 0.3}), 0.5);
  EXPECT_EQ(auroc(std::vector{0.8, 0.3}, std::vector{0.5, 0.2}), 0.75);
  EXPECT_EQ(auroc(std::vector{0.5}, std::vector{0.5}), 0.5);
  EXPECT_THROW(auroc({}, std::vector{0.1}), ConfigError);
  EXPECT_THROW(auroc(std::vector{0.1}, {}), ConfigError);
}

TEST(Auroc, MatchesPairCountAndComplements) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> pos(1 + rng.below(30)), neg(1 + rng.below(30));
    const bool ties = trial % 2 == 0;
    for (double& v : pos) v = ties ? static_cast<double>(rng.below(5)) : rng.unit();
    for (double& v : neg) v = ties ? static_cast<double>(rng.below(5)) : rng.unit();
    double wins = 0.0;
    for (double p : pos) {
      for (double n : neg) wins += p > n ? 1.0 : p == n ? 0.5 : 0.0;
    }
    const double got = auroc(pos, neg);
    EXPECT_NEAR(got, wins / static_cast<double>(pos.size() * neg.size()), 1e-12);
    EXPECT_NEAR(got + auroc(neg, pos), 1.0, 1e-12);
  }
}

TEST(AurocMatrix, IdenticalActionsAreIndistinguishable) {
  std::vector<MotionProgram> progs;
  for (std::uint64_t i = 0; i < 6; ++i) progs.push_back(testing::sampled(i));
  const std::vector<AssessmentModel> models = {{"a", progs}, {"b", progs}};
  const std::vector<ActionInstances> inst = {{"a", progs}, {"b", progs}};
  const auto m = auroc_matrix(models, inst);
  for (const auto& row : m.cells) {
    for (double v : row) EXPECT_EQ(v, 0.5);
  }
  EXPECT_EQ(m.mean_auc, 0.5);
  EXPECT_EQ(m.actions, (std::vector<std::string>{"a", "b"}));
}

TEST(AurocMatrix, SidedActionsSeparate) {
  const std::vector<MotionProgram> left = {parse("[0,10]LArm.x(0.3)"), parse("[0,10]LArm.x(0.3)")};
  const std::vector<MotionProgram> right = {parse("[0,10]RArm.x(0.3)"), parse("[5,10]RArm.x(0.3)")};
  std::vector<AssessmentModel> models = {{"A", left}, {"B", right}};
  for (auto& m : models) m.mode = AssessmentMode::MinSigma;
  const std::vector<ActionInstances> inst = {{"A", left}, {"B", right}};
  const auto m = auroc_matrix(models, inst);
  EXPECT_EQ(m.cells[0][1], 1.0);
  EXPECT_EQ(m.cells[1][0], 1.0);
  EXPECT_EQ(m.cells[0][0], 0.5);
  EXPECT_EQ(m.mean_auc, 1.0);
}

TEST(AurocMatrix, DiagonalAndErrors) {
  std::vector<AssessmentModel> models;
  std::vector<ActionInstances> inst;
  for (std::uint64_t a = 0; a < 4; ++a) {
    std::vector<MotionProgram> p;
    for (std::uint64_t i = 0; i < 5; ++i) p.push_back(testing::sampled(a * 100 + i));
    models.push_back({"act" + std::to_string(a), p});
    inst.push_back({"act" + std::to_string(a), p});
  }
  const auto m = auroc_matrix(models, inst);
  double off = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(m.cells[i][i], 0.5);
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) off += m.cells[i][j];
      EXPECT_GE(m.cells[i][j], 0.0);
      EXPECT_LE(m.cells[i][j], 1.0);
    }
  }
  EXPECT_NEAR(m.mean_auc, off / 12.0, 1e-15);

  EXPECT_THROW(auroc_matrix(std::span(models).first(1), std::span(inst).first(1)), ConfigError);
  EXPECT_THROW(auroc_matrix(models, std::span(inst).first(3)), ConfigError);
  std::swap(inst[0], inst[1]);
  EXPECT_THROW(auroc_matrix(models, inst), ConfigError);
  std::swap(inst[0], inst[1]);
  inst[2].programs.clear();
  EXPECT_THROW(auroc_matrix(models, inst), ConfigError);
}

}  // namespace
}  // namespace exact

// Copyright 2026 The xaiselect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "xaiselect/evaluator.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace xaiselect::eval {
namespace {

struct ReferenceRow {
  double aggregated;
  double scaled[3];
};

// Diabetes extract, columns robustness, fidelity, NoF; weights 1, 2, 0.5.
constexpr ReferenceRow kDiabetesRows[] = {
    {1.023, {0.727, 0.833, 1.351}},   {1.019, {0.703, 0.991, 0.745}},  {0.963, {0.682, 1.068, 0.139}},
    {-0.287, {0.310, -0.924, 1.351}}, {-0.633, {-0.319, -0.975, 0.745}}, {-0.639, {0.014, -1.000, 0.139}},
};

// SMS extract, columns representativeness, diversity, NoP; weights 2, 1, 2.
constexpr ReferenceRow kSmsRows[] = {
    {0.483, {0.904, 0.248, -0.303}}, {0.466, {0.463, 0.412, 0.030}},  {0.384, {0.224, 0.201, 0.251}},
    {0.367, {-0.660, 0.589, 0.917}}, {0.331, {-0.444, 0.048, 0.917}}, {0.255, {-0.580, 0.092, 0.917}},
};

TEST(AggregateTest, ReproducesReferenceAttributionRows) {
  const PropertyWeights w = {{"robustness", 1.0}, {"infidelity", 2.0}, {"number_of_features", 0.5}};
  for (const auto& row : kDiabetesRows) {
    const ScoreMap s = {{"robustness", row.scaled[0]}, {"infidelity", row.scaled[1]},
                        {"number_of_features", row.scaled[2]}};
    EXPECT_NEAR(Aggregate(s, w), row.aggregated, 0.0015);
  }
}

TEST(AggregateTest, ReproducesReferencePrototypeRows) {
  const PropertyWeights w = {{"non_representativeness", 2.0}, {"diversity", 1.0}, {"number_of_prototypes", 2.0}};
  for (const auto& row : kSmsRows) {
    const ScoreMap s = {{"non_representativeness", row.scaled[0]}, {"diversity", row.scaled[1]},
                        {"number_of_prototypes", row.scaled[2]}};
    EXPECT_NEAR(Aggregate(s, w), row.aggregated, 0.0015);
  }
}

TEST(AggregateTest, DividesByNumberOfWeightedMetrics) {
  const PropertyWeights w = {{"robustness", 3.0}, {"infidelity", 0.0}, {"number_of_features", 1.0}};
  EXPECT_DOUBLE_EQ(Aggregate({{"robustness", 1.0}, {"number_of_features", 2.0}}, w), (3.0 + 2.0) / 2.0);
}

TEST(AggregateTest, RejectsMismatchedInputs) {
  const PropertyWeights w = {{"robustness", 1.0}, {"infidelity", 0.0}};
  EXPECT_THROW(Aggregate({}, w), InvalidInput);
  EXPECT_THROW(Aggregate({{"robustness", 1.0}, {"infidelity", 1.0}}, w), InvalidInput);
  EXPECT_THROW(Aggregate({{"infidelity", 1.0}}, w), InvalidInput);
  EXPECT_THROW(Aggregate({{"robustness", 1.0}}, {{"robustness", -1.0}}), InvalidInput);
  EXPECT_THROW(Aggregate({{"robustness", 1.0}}, {{"robustness", NAN}}), InvalidInput);
}

TEST(OrientTest, LossesAreNegated) {
  EXPECT_EQ(Orient(2.5, metrics::Orientation::kLoss), -2.5);
  EXPECT_EQ(Orient(2.5, metrics::Orientation::kGain), 2.5);
}

TEST(ScalingStateTest, ZScoreAgainstPopulationStd) {
  ScalingState s;
  s.Observe("diversity", -1.0);
  s.Observe("diversity", 1.0);
  EXPECT_DOUBLE_EQ(s.Scale("diversity", 1.0), 1.0);
  EXPECT_DOUBLE_EQ(s.Scale("diversity", 0.0), 0.0);
  EXPECT_DOUBLE_EQ(s.Scale("diversity", 3.0), 3.0);
  const auto stats = s.StatsFor("diversity");
  EXPECT_EQ(stats.count, 2u);
  EXPECT_DOUBLE_EQ(stats.stddev, 1.0);
}

TEST(ScalingStateTest, DegeneratePoolScalesToZero) {
  ScalingState s;
  s.Observe("robustness", 4.0);
  EXPECT_EQ(s.Scale("robustness", 100.0), 0.0);
  EXPECT_THROW(s.Scale("infidelity", 1.0), InvalidInput);
  EXPECT_FALSE(s.Has("infidelity"));
}

TrialRecord Trial(std::size_t id, const std::string& solution, std::int64_t size, ScoreMap raw) {
  TrialRecord t;
  t.trial_id = id;
  t.solution_id = solution;
  t.explanation_size = size;
  t.raw = std::move(raw);
  return t;
}

TEST(RescoreTest, AggregatedEqualsRecomputationFromPools) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const PropertyWeights w = {{"robustness", 1.0}, {"infidelity", 2.0}, {"number_of_features", 0.5}};
  std::vector<TrialRecord> trials;
  ScalingState state;
  for (std::size_t i = 0; i < 30; ++i) {
    trials.push_back(Trial(i, i % 2 ? "lime" : "kernel_shap", static_cast<std::int64_t>(1 + i % 5),
                           {{"robustness", std::abs(g(rng))}, {"infidelity", std::abs(g(rng))},
                            {"number_of_features", static_cast<double>(1 + i % 5)}}));
    ObserveTrial(state, trials.back());
    RescoreAll(trials, state, w);
  }
  for (const auto& t : trials) {
    double total = 0.0;
    for (const auto& [id, weight] : w) {
      const auto stats = state.StatsFor(id);
      total += weight * (-t.raw.at(id) - stats.mean) / stats.stddev;
    }
    EXPECT_NEAR(t.aggregated, total / 3.0, 1e-9);
  }
}

TEST(RescoreTest, ZeroWeightMetricCannotMoveTheRanking) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  const PropertyWeights w = {{"robustness", 1.0}, {"infidelity", 0.0}, {"number_of_features", 0.5}};
  std::vector<TrialRecord> trials;
  for (std::size_t i = 0; i < 40; ++i) {
    trials.push_back(Trial(i, i % 2 ? "lime" : "kernel_shap", static_cast<std::int64_t>(1 + i % 4),
                           {{"robustness", std::abs(g(rng))}, {"infidelity", std::abs(g(rng))},
                            {"number_of_features", static_cast<double>(1 + i % 4)}}));
  }
  auto score = [&](std::vector<TrialRecord> ts) {
    ScalingState state;
    for (const auto& t : ts) ObserveTrial(state, t);
    RescoreAll(ts, state, w);
    return ts;
  };
  const auto base = score(trials);
  const auto base_rank = Rank(base, false);
  for (int round = 0; round < 20; ++round) {
    std::vector<double> column;
    for (const auto& t : trials) column.push_back(t.raw.at("infidelity"));
    std::shuffle(column.begin(), column.end(), rng);
    auto permuted = trials;
    for (std::size_t i = 0; i < permuted.size(); ++i) permuted[i].raw["infidelity"] = column[i];
    const auto rescored = score(permuted);
    for (std::size_t i = 0; i < base.size(); ++i) EXPECT_EQ(rescored[i].aggregated, base[i].aggregated);
    const auto rank = Rank(rescored, false);
    for (std::size_t i = 0; i < rank.size(); ++i) EXPECT_EQ(rank[i].trial_id, base_rank[i].trial_id);
  }
}

TEST(RescoreTest, FailedTrialsSinkAndStayOutOfPools) {
  const PropertyWeights w = {{"diversity", 1.0}};
  std::vector<TrialRecord> trials = {Trial(0, "kmedoids", 2, {{"diversity", 1.0}}),
                                     Trial(1, "kmedoids", 3, {{"diversity", 3.0}})};
  trials[1].failed = true;
  ScalingState state;
  for (const auto& t : trials) ObserveTrial(state, t);
  RescoreAll(trials, state, w);
  EXPECT_EQ(state.StatsFor("diversity").count, 1u);
  EXPECT_EQ(trials[1].aggregated, kFailedTrialScore);
  EXPECT_EQ(Rank(trials, false).size(), 1u);
}

TEST(RankTest, OrdersByScoreThenSizeThenSolutionThenTrial) {
  std::vector<TrialRecord> trials = {Trial(0, "lime", 5, {}), Trial(1, "lime", 3, {}), Trial(2, "kernel_shap", 3, {}),
                                     Trial(3, "lime", 3, {}), Trial(4, "lime", 1, {})};
  trials[0].aggregated = 1.0;
  trials[1].aggregated = 1.0;
  trials[2].aggregated = 1.0;
  trials[3].aggregated = 1.0;
  trials[4].aggregated = 2.0;
  const auto ranked = Rank(trials, false);
  std::vector<std::size_t> ids;
  for (const auto& t : ranked) ids.push_back(t.trial_id);
  EXPECT_EQ(ids, (std::vector<std::size_t>{4, 2, 1, 3, 0}));
  const auto per_size = Rank(trials, true);
  ids.clear();
  for (const auto& t : per_size) ids.push_back(t.trial_id);
  EXPECT_EQ(ids, (std::vector<std::size_t>{4, 2, 1, 0}));
}

TEST(RankTest, IsNonIncreasing) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  std::vector<TrialRecord> trials;
  for (std::size_t i = 0; i < 50; ++i) {
    trials.push_back(Trial(i, i % 3 ? "lime" : "kernel_shap", static_cast<std::int64_t>(i % 4), {}));
    trials.back().aggregated = std::round(g(rng) * 4) / 4;
  }
  for (bool per_size : {false, true}) {
    const auto ranked = Rank(trials, per_size);
    for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_GE(ranked[i - 1].aggregated, ranked[i].aggregated);
  }
}

TEST(ColdStartTest, EvaluatesDefaultsAndSeedsPools) {
  std::vector<explainers::ExplainerDescriptor> sols = {explainers::Describe("lime", explainers::DataShape{50, 4}),
                                                       explainers::Describe("kernel_shap", explainers::DataShape{50, 4})};
  const PropertyWeights w = {{"robustness", 1.0}, {"number_of_features", 1.0}};
  std::vector<std::size_t> seen;
  const auto result = ColdStart(
      sols, {"robustness", "number_of_features"},
      [](const std::string& id, const Assignment& h) {
        TrialEvaluation ev;
        ev.raw = {{"robustness", id == "lime" ? 1.0 : 3.0},
                  {"number_of_features", static_cast<double>(h.Int("num_features"))}};
        return ev;
      },
      w, [&](const TrialRecord& r, const TrialEvaluation&) { seen.push_back(r.trial_id); });
  ASSERT_EQ(result.trials.size(), 2u);
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(result.trials[0].cold_start);
  EXPECT_EQ(result.trials[0].hyperparameters, sols[0].space.Defaults());
  EXPECT_EQ(result.state.StatsFor("robustness").count, 2u);
  EXPECT_DOUBLE_EQ(result.trials[0].scaled.at("robustness"), 1.0);
  EXPECT_DOUBLE_EQ(result.trials[1].scaled.at("robustness"), -1.0);
}

TEST(ColdStartTest, SurvivesPartialFailureButNotTotal) {
  std::vector<explainers::ExplainerDescriptor> sols = {explainers::Describe("lime", explainers::DataShape{50, 4}),
                                                       explainers::Describe("kernel_shap", explainers::DataShape{50, 4})};
  const PropertyWeights w = {{"robustness", 1.0}};
  const auto partial = ColdStart(sols, {"robustness"},
                                 [](const std::string& id, const Assignment&) {
                                   if (id == "lime") throw ComputeFailure("boom");
                                   return TrialEvaluation{{{"robustness", 2.0}}, {}};
                                 },
                                 w);
  ASSERT_EQ(partial.trials.size(), 1u);
  EXPECT_EQ(partial.trials[0].trial_id, 0u);
  EXPECT_EQ(partial.failures.size(), 1u);
  EXPECT_THROW(ColdStart(sols, {"robustness"},
                         [](const std::string&, const Assignment&) -> TrialEvaluation { throw ComputeFailure("x"); }, w),
               ComputeFailure);
  EXPECT_THROW(ColdStart(sols, {"robustness"},
                         [](const std::string&, const Assignment&) { return TrialEvaluation{}; }, w),
               ComputeFailure);
}

}  // namespace
}  // namespace xaiselect::eval

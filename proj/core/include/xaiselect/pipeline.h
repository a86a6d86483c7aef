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

#ifndef XAISELECT_PIPELINE_H_
#define XAISELECT_PIPELINE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "xaiselect/config.h"
#include "xaiselect/context.h"
#include "xaiselect/dataset.h"
#include "xaiselect/evaluator.h"
#include "xaiselect/explainers.h"
#include "xaiselect/hpo.h"
#include "xaiselect/models.h"
#include "xaiselect/time_savers.h"

namespace xaiselect::pipeline {

// Data and model shared by every trial of a run. Immutable after Prepare.
struct Workspace {
  data::Dataset dataset;
  std::shared_ptr<models::CountingModel> model;
  // Predicted class per row, when a classifier or external predictions exist.
  std::vector<double> predictions;
  std::optional<data::ConfusionSplit> split;
  // Rows explained by prototype solutions and the subset built from them.
  std::vector<std::size_t> subset_rows;
  data::Dataset subset;
  std::optional<models::TrainReport> training;
};

// Loads the dataset and builds or loads the model.
Workspace Prepare(const config::RunConfig& cfg);

struct StrategyStats {
  std::size_t population = 0;
  std::size_t targets = 0;
  std::map<std::string, std::size_t> items_evaluated;
  std::map<std::string, std::size_t> items_available;
  std::map<std::string, std::size_t> early_stops;
  savers::CacheStats robustness_cache;
  savers::CacheStats infidelity_cache;
  std::uint64_t model_rows_evaluated = 0;
  double metric_seconds = 0.0;
};

// Evaluates one (solution, hyperparameters) pair on the shortlisted metrics,
// applying whichever time-saving strategies the config enables.
class TrialRunner {
 public:
  TrialRunner(const Workspace& ws, const config::RunConfig& cfg, std::vector<std::string> metric_ids);

  eval::TrialEvaluation Evaluate(const std::string& solution_id, const Assignment& h);
  // Restores the shared state a logged evaluation left behind, so a resumed
  // run continues exactly as the original did.
  void Replay(const std::string& solution_id, const eval::TrialEvaluation& evaluation);
  const std::vector<std::size_t>& targets() const { return targets_; }
  explainers::DistanceMetric prototype_distance() const { return distance_; }
  StrategyStats stats() const;

 private:
  eval::TrialEvaluation EvaluateAttribution(const std::string& solution_id, const Assignment& h);
  eval::TrialEvaluation EvaluatePrototypes(const std::string& solution_id, const Assignment& h);
  void Account(const metrics::MetricResult& r, std::size_t available);

  const Workspace& ws_;
  const config::RunConfig& cfg_;
  std::vector<std::string> metric_ids_;
  std::vector<std::size_t> targets_;
  explainers::DistanceMetric distance_;
  savers::RobustnessMaximaCache robustness_cache_;
  savers::InfidelityPerturbationCache infidelity_cache_;
  StrategyStats stats_;
};

// Descriptor of a shortlisted solution with domains bounded by the data it
// explains.
explainers::ExplainerDescriptor DescribeFor(const std::string& solution_id, const Workspace& ws);

struct RunReport {
  config::RunConfig config;
  std::vector<std::string> solutions;
  std::vector<std::string> metrics;
  eval::PropertyWeights weights;
  std::vector<eval::TrialRecord> trials;
  // Indexed by trial id; empty for failed trials.
  std::vector<eval::TrialEvaluation> evaluations;
  std::vector<eval::TrialRecord> ranking;
  std::vector<std::pair<std::string, std::string>> cold_start_failures;
  std::map<std::string, hpo::HpoOutcome> hpo;
  std::map<std::string, eval::ScalingState::Stats> scaling;
  StrategyStats strategies;
  std::size_t replayed_trials = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> decision_log;
};

struct RunOptions {
  // Writes ranking.csv, ranking.json, report.md, per_item_scores.csv and
  // the trials.jsonl audit into cfg.output_dir.
  bool write_outputs = true;
  // Replays trials recorded in an existing trials.jsonl instead of
  // recomputing them.
  bool resume = false;
  std::ostream* progress = nullptr;
};

// Full run: shortlist, cold start, per-solution HPO, ranking. Errors carry the
// name of the failing stage.
RunReport Run(const config::RunConfig& cfg, const RunOptions& options = {});

// Defaults in effect for a config, as human-readable log lines.
std::vector<std::string> DecisionLog(const config::RunConfig& cfg);

struct ExplainOutput {
  // One JSON record per target (or one for a prototype set).
  std::string jsonl;
  std::string text;
};

// Explanations of one solution under `h`. Prototype solutions ignore
// `targets` and explain the configured subset.
ExplainOutput ExplainWith(const Workspace& ws, const config::RunConfig& cfg, const std::string& solution_id,
                          const Assignment& h, const std::vector<std::size_t>& targets, std::size_t top_k = 10);

}  // namespace xaiselect::pipeline

#endif  // XAISELECT_PIPELINE_H_

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

#ifndef XAISELECT_EVALUATOR_H_
#define XAISELECT_EVALUATOR_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "xaiselect/explainers.h"
#include "xaiselect/hyperparameters.h"
#include "xaiselect/metrics.h"

namespace xaiselect::eval {

// metric id -> user weight w_q.
using PropertyWeights = std::map<std::string, double>;
using ScoreMap = std::map<std::string, double>;

// Loss metrics are negated so that larger is always better.
double Orient(double raw, metrics::Orientation orientation);

// Per-metric pools of oriented raw scores; scaling is a z-score against the
// pool as it stands.
class ScalingState {
 public:
  struct Stats {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t count = 0;
  };

  void Observe(const std::string& metric_id, double oriented);
  // (oriented - mean) / std; 0 when std < 1e-12. Throws InvalidInput if the
  // metric has never been observed.
  double Scale(const std::string& metric_id, double oriented) const;
  Stats StatsFor(const std::string& metric_id) const;
  bool Has(const std::string& metric_id) const { return pools_.count(metric_id) > 0; }

 private:
  std::map<std::string, std::vector<double>> pools_;
};

// (1/c') * sum_q w_q * scaled_q. `scaled` must cover exactly the metrics
// with positive weight.
double Aggregate(const ScoreMap& scaled, const PropertyWeights& weights);

inline constexpr double kFailedTrialScore = -std::numeric_limits<double>::infinity();

struct TrialRecord {
  std::size_t trial_id = 0;
  std::string solution_id;
  std::string display_name;
  Assignment hyperparameters;
  // Value of the solution's size hyperparameter (num_features or k).
  std::int64_t explanation_size = 0;
  ScoreMap raw;
  ScoreMap scaled;
  double aggregated = kFailedTrialScore;
  // 0 for the cold-start trial.
  std::size_t epoch = 0;
  double wall_time = 0.0;
  bool cold_start = false;
  bool failed = false;
  std::string error;
};

// Everything a trial evaluation produces: raw metric aggregates and the
// detailed per-metric results behind them.
struct TrialEvaluation {
  ScoreMap raw;
  std::map<std::string, metrics::MetricResult> details;
};

using TrialEvaluator = std::function<TrialEvaluation(const std::string& solution_id, const Assignment& h)>;

// Recomputes scaled and aggregated values of every successful trial against
// the current pools. Metrics without a positive weight are scaled but left
// out of the aggregate.
void RescoreAll(std::vector<TrialRecord>& trials, const ScalingState& state, const PropertyWeights& weights);

// Adds a successful trial's raw scores to the pools.
void ObserveTrial(ScalingState& state, const TrialRecord& trial);

struct ColdStartResult {
  ScalingState state;
  std::vector<TrialRecord> trials;
  // (solution id, error message) for solutions that failed at defaults.
  std::vector<std::pair<std::string, std::string>> failures;
};

// Evaluates every solution once at its defaults and seeds the pools. Throws
// ComputeFailure if no solution survives.
ColdStartResult ColdStart(const std::vector<explainers::ExplainerDescriptor>& solutions,
                          const std::vector<std::string>& metric_ids, const TrialEvaluator& evaluate,
                          const PropertyWeights& weights,
                          const std::function<void(const TrialRecord&, const TrialEvaluation&)>& on_trial = {});

// Successful trials by aggregated score descending; ties go to the smaller
// explanation, then solution id, then trial id. With `per_size_rows`, only
// the best trial per (solution, explanation size) is kept.
std::vector<TrialRecord> Rank(const std::vector<TrialRecord>& trials, bool per_size_rows);

}  // namespace xaiselect::eval

#endif  // XAISELECT_EVALUATOR_H_

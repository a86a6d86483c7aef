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
#include <chrono>
#include <cmath>
#include <set>

namespace xaiselect::eval {

double Orient(double raw, metrics::Orientation orientation) {
  return orientation == metrics::Orientation::kGain ? raw : -raw;
}

void ScalingState::Observe(const std::string& metric_id, double oriented) {
  pools_[metric_id].push_back(oriented);
}

ScalingState::Stats ScalingState::StatsFor(const std::string& metric_id) const {
  auto it = pools_.find(metric_id);
  if (it == pools_.end() || it->second.empty()) {
    throw InvalidInput("metric '" + metric_id + "' has no scaling statistics (never cold-started)");
  }
  const std::vector<double>& pool = it->second;
  Stats s;
  s.count = pool.size();
  for (double v : pool) s.mean += v;
  s.mean /= static_cast<double>(s.count);
  double ss = 0.0;
  for (double v : pool) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(s.count));
  return s;
}

double ScalingState::Scale(const std::string& metric_id, double oriented) const {
  const Stats s = StatsFor(metric_id);
  if (s.stddev < 1e-12) return 0.0;
  return (oriented - s.mean) / s.stddev;
}

double Aggregate(const ScoreMap& scaled, const PropertyWeights& weights) {
  if (scaled.empty()) throw InvalidInput("aggregate: no metrics to aggregate");
  std::size_t positive = 0;
  for (const auto& [id, w] : weights) {
    if (!std::isfinite(w) || w < 0) throw InvalidInput("aggregate: invalid weight for " + id);
    if (w > 0) {
      ++positive;
      if (!scaled.count(id)) throw InvalidInput("aggregate: missing scaled score for weighted metric " + id);
    }
  }
  double total = 0.0;
  for (const auto& [id, value] : scaled) {
    auto it = weights.find(id);
    if (it == weights.end() || it->second <= 0) {
      throw InvalidInput("aggregate: metric " + id + " has no positive weight");
    }
    total += it->second * value;
  }
  return total / static_cast<double>(positive);
}

void ObserveTrial(ScalingState& state, const TrialRecord& trial) {
  if (trial.failed) return;
  for (const auto& [id, raw] : trial.raw) state.Observe(id, Orient(raw, metrics::DescribeMetric(id).orientation));
}

void RescoreAll(std::vector<TrialRecord>& trials, const ScalingState& state, const PropertyWeights& weights) {
  for (TrialRecord& t : trials) {
    if (t.failed) {
      t.scaled.clear();
      t.aggregated = kFailedTrialScore;
      continue;
    }
    t.scaled.clear();
    ScoreMap weighted;
    for (const auto& [id, raw] : t.raw) {
      const double scaled = state.Scale(id, Orient(raw, metrics::DescribeMetric(id).orientation));
      t.scaled[id] = scaled;
      auto w = weights.find(id);
      if (w != weights.end() && w->second > 0) weighted[id] = scaled;
    }
    t.aggregated = Aggregate(weighted, weights);
  }
}

ColdStartResult ColdStart(const std::vector<explainers::ExplainerDescriptor>& solutions,
                          const std::vector<std::string>& metric_ids, const TrialEvaluator& evaluate,
                          const PropertyWeights& weights,
                          const std::function<void(const TrialRecord&, const TrialEvaluation&)>& on_trial) {
  if (solutions.empty() || metric_ids.empty()) throw InvalidInput("cold start needs solutions and metrics");
  ColdStartResult out;
  std::vector<TrialEvaluation> evaluations;
  for (const auto& solution : solutions) {
    TrialRecord rec;
    rec.trial_id = out.trials.size();
    rec.solution_id = solution.id;
    rec.display_name = solution.display_name;
    rec.hyperparameters = solution.space.Defaults();
    rec.explanation_size = solution.size_param.empty() ? 0 : rec.hyperparameters.Int(solution.size_param);
    rec.cold_start = true;
    const auto start = std::chrono::steady_clock::now();
    try {
      TrialEvaluation ev = evaluate(solution.id, rec.hyperparameters);
      for (const auto& id : metric_ids) {
        if (!ev.raw.count(id)) throw ComputeFailure("evaluation did not produce metric " + id);
      }
      rec.raw = ev.raw;
      evaluations.push_back(std::move(ev));
    } catch (const Error& e) {
      out.failures.emplace_back(solution.id, e.what());
      continue;
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ObserveTrial(out.state, rec);
    out.trials.push_back(std::move(rec));
  }
  if (out.trials.empty()) throw ComputeFailure("every shortlisted solution failed at its default hyperparameters");
  for (std::size_t i = 0; i < out.trials.size(); ++i) out.trials[i].trial_id = i;
  RescoreAll(out.trials, out.state, weights);
  if (on_trial) {
    for (std::size_t i = 0; i < out.trials.size(); ++i) on_trial(out.trials[i], evaluations[i]);
  }
  return out;
}

std::vector<TrialRecord> Rank(const std::vector<TrialRecord>& trials, bool per_size_rows) {
  std::vector<TrialRecord> ranked;
  for (const auto& t : trials) {
    if (!t.failed) ranked.push_back(t);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const TrialRecord& a, const TrialRecord& b) {
    if (a.aggregated != b.aggregated) return a.aggregated > b.aggregated;
    if (a.explanation_size != b.explanation_size) return a.explanation_size < b.explanation_size;
    if (a.solution_id != b.solution_id) return a.solution_id < b.solution_id;
    return a.trial_id < b.trial_id;
  });
  if (!per_size_rows) return ranked;
  std::set<std::pair<std::string, std::int64_t>> seen;
  std::vector<TrialRecord> best;
  for (auto& t : ranked) {
    if (seen.insert({t.solution_id, t.explanation_size}).second) best.push_back(std::move(t));
  }
  return best;
}

}  // namespace xaiselect::eval

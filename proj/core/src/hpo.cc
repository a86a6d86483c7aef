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

#include "xaiselect/hpo.h"

#include <algorithm>
#include <chrono>
#include <random>

namespace xaiselect::hpo {

HpoOutcome RunHpo(const explainers::ExplainerDescriptor& solution, std::vector<eval::TrialRecord>& ledger,
                  eval::ScalingState& state, const eval::PropertyWeights& weights,
                  const eval::TrialEvaluator& evaluate, const HpoOptions& options, const TrialCallback& on_trial) {
  HpoOutcome outcome;
  std::mt19937_64 rng(options.seed);
  std::optional<savers::StopController> stopper;
  if (options.early_stopping) stopper.emplace(*options.early_stopping);

  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    std::vector<Assignment> evaluated;
    std::vector<Eigen::VectorXd> inputs;
    std::vector<double> targets;
    const eval::TrialRecord* incumbent = nullptr;
    for (const auto& t : ledger) {
      if (t.solution_id != solution.id) continue;
      evaluated.push_back(t.hyperparameters);
      if (t.failed) continue;
      inputs.push_back(Encode(solution.space, t.hyperparameters));
      targets.push_back(t.aggregated);
      if (incumbent == nullptr || t.aggregated > incumbent->aggregated) incumbent = &t;
    }

    Assignment proposal;
    bool guided = false;
    if (epoch > options.random_epochs && inputs.size() >= 2) {
      try {
        const GaussianProcess gp = GaussianProcess::Fit(inputs, targets);
        proposal = Propose(gp, solution.space, Encode(solution.space, incumbent->hyperparameters), evaluated, rng,
                           options.propose);
        outcome.length_scales.push_back(gp.length_scale());
        guided = true;
      } catch (const InvalidInput&) {
        // Fewer than two distinct points: fall through to random sampling.
      }
    }
    if (!guided) {
      proposal = RandomAssignment(solution.space, rng);
      for (int retry = 0; retry < 16 && std::find(evaluated.begin(), evaluated.end(), proposal) != evaluated.end();
           ++retry) {
        proposal = RandomAssignment(solution.space, rng);
      }
    }

    eval::TrialRecord rec;
    rec.trial_id = ledger.size();
    rec.solution_id = solution.id;
    rec.display_name = solution.display_name;
    rec.hyperparameters = proposal;
    rec.explanation_size = solution.size_param.empty() ? 0 : proposal.Int(solution.size_param);
    rec.epoch = epoch;
    eval::TrialEvaluation ev;
    const auto start = std::chrono::steady_clock::now();
    try {
      ev = evaluate(solution.id, proposal);
      rec.raw = ev.raw;
    } catch (const Error& e) {
      rec.failed = true;
      rec.error = e.what();
      ++outcome.failed_trials;
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    eval::ObserveTrial(state, rec);
    ledger.push_back(std::move(rec));
    eval::RescoreAll(ledger, state, weights);
    ++outcome.trials_run;
    if (on_trial) on_trial(ledger.back(), ev);

    if (stopper) {
      double best = eval::kFailedTrialScore;
      for (const auto& t : ledger) {
        if (t.solution_id == solution.id && !t.failed) best = std::max(best, t.aggregated);
      }
      if (std::isfinite(best) && stopper->Observe(best) == savers::StopDecision::kStop) {
        outcome.stopped_early = true;
        outcome.stop_epoch = epoch;
        break;
      }
    }
  }
  return outcome;
}

}  // namespace xaiselect::hpo

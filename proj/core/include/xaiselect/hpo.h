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

#ifndef XAISELECT_HPO_H_
#define XAISELECT_HPO_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "xaiselect/evaluator.h"
#include "xaiselect/explainers.h"
#include "xaiselect/gaussian_process.h"
#include "xaiselect/time_savers.h"

namespace xaiselect::hpo {

struct HpoOptions {
  // Trials proposed after the cold-start trial.
  std::size_t epochs = 25;
  // Leading epochs that sample uniformly before the GP takes over.
  std::size_t random_epochs = 3;
  std::uint64_t seed = 0;
  // Stops the loop once the incumbent aggregated score settles.
  std::optional<savers::StopSettings> early_stopping;
  ProposeOptions propose;
};

struct HpoOutcome {
  std::size_t trials_run = 0;
  std::size_t failed_trials = 0;
  bool stopped_early = false;
  // Epoch index at which the stopper fired (0 if it did not).
  std::size_t stop_epoch = 0;
  // Length scale chosen at each GP-guided epoch.
  std::vector<double> length_scales;
};

using TrialCallback = std::function<void(const eval::TrialRecord&, const eval::TrialEvaluation&)>;

// Bayesian optimization of one solution's aggregated score. New trials are
// appended to `ledger`, the pools in `state` grow with every successful
// trial, and the whole ledger is rescored each epoch.
HpoOutcome RunHpo(const explainers::ExplainerDescriptor& solution, std::vector<eval::TrialRecord>& ledger,
                  eval::ScalingState& state, const eval::PropertyWeights& weights,
                  const eval::TrialEvaluator& evaluate, const HpoOptions& options,
                  const TrialCallback& on_trial = {});

}  // namespace xaiselect::hpo

#endif  // XAISELECT_HPO_H_

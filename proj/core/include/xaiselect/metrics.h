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

#ifndef XAISELECT_METRICS_H_
#define XAISELECT_METRICS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "xaiselect/dataset.h"
#include "xaiselect/explainers.h"
#include "xaiselect/models.h"
#include "xaiselect/time_savers.h"

namespace xaiselect::metrics {

enum class Property { kContinuity, kCorrectness, kCompactnessSize, kCompactnessRedundancy, kCompleteness };
enum class Orientation { kLoss, kGain };

std::string ToString(Property p);
std::string ToString(Orientation o);

struct MetricDescriptor {
  std::string id;
  std::string display_name;
  Property property;
  Orientation orientation;
  std::string explanan;
  // Inputs the metric consumes: dataset, model, explainer_function, explanations.
  std::vector<std::string> signature;
  // Per-item metrics can be early-stopped; set-level ones cannot.
  bool per_item = false;
};

const std::vector<MetricDescriptor>& KnownMetrics();
const MetricDescriptor& DescribeMetric(const std::string& id);

struct MetricResult {
  std::string metric_id;
  std::vector<double> per_item_scores;
  std::vector<std::size_t> item_targets;
  double aggregate = 0.0;
  std::size_t items_evaluated = 0;
  bool stopped_early = false;
  // Robustness: perturbed points whose explanation failed.
  std::size_t skipped_samples = 0;
  // Robustness: the point that attained each item's score, empty when no
  // candidate succeeded. Lets a replayed trial restore shared maxima.
  std::vector<Eigen::VectorXd> item_points;
  std::string note;
};

// Mean of the per-item scores, recomputed in one pass.
double BatchMean(const std::vector<double>& values);

// Densified explanation of `x` on behalf of target row `target`.
using ExplanationFn = std::function<Eigen::VectorXd(std::size_t target, const Eigen::VectorXd& x)>;

struct RobustnessParams {
  std::size_t candidates_per_point = 40;
  std::size_t refine_rounds = 2;
  std::size_t refine_samples = 10;
  double shrink = 0.25;
  // Uniform candidates drawn instead of candidates_per_point when a cached
  // maximum seeds the search.
  std::size_t warm_candidates = 10;
};

// Local Lipschitz estimate max ||e(x_i) - e(x_j)|| / ||x_i - x_j|| over the
// box of half-width std_j around x_i, by randomized search. When `cache` is
// set, the stored maximum for (family, target) joins the candidates and the
// best point found is offered back.
MetricResult Robustness(const ExplanationFn& explain, const data::Dataset& ds, const std::vector<std::size_t>& targets,
                        const RobustnessParams& params, std::uint64_t seed,
                        savers::RobustnessMaximaCache* cache = nullptr, const std::string& cache_family = "",
                        savers::StopController* stopper = nullptr);

struct InfidelityParams {
  std::size_t num_perturbations = 100;
  double noise_half_width = 0.5;
};

// Densified attribution for target row `target`.
using AttributionProvider = std::function<Eigen::VectorXd(std::size_t target)>;

// E[(I^T e - (f(x) - f(x - I)))^2] with I uniform in +-half_width * std_j.
MetricResult Infidelity(const AttributionProvider& attribution, const models::PredictiveFunction& model,
                        const data::Dataset& ds, const std::vector<std::size_t>& targets,
                        const InfidelityParams& params, std::uint64_t seed,
                        savers::InfidelityPerturbationCache* cache = nullptr,
                        savers::StopController* stopper = nullptr);
MetricResult Infidelity(std::span<const explainers::FeatureAttribution> explanations,
                        const models::PredictiveFunction& model, const data::Dataset& ds,
                        const InfidelityParams& params, std::uint64_t seed,
                        savers::InfidelityPerturbationCache* cache = nullptr);

MetricResult NumberOfFeatures(std::span<const explainers::FeatureAttribution> explanations);
MetricResult NumberOfFeatures(const std::function<std::size_t(std::size_t target)>& size_of,
                              const std::vector<std::size_t>& targets, savers::StopController* stopper = nullptr);

MetricResult NonRepresentativeness(const explainers::PrototypeSet& prototypes, const data::Dataset& subset,
                                   explainers::DistanceMetric distance);
MetricResult Diversity(const explainers::PrototypeSet& prototypes, const data::Dataset& subset,
                       explainers::DistanceMetric distance);
MetricResult NumberOfPrototypes(const explainers::PrototypeSet& prototypes);

}  // namespace xaiselect::metrics

#endif  // XAISELECT_METRICS_H_

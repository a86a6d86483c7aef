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

#include "xaiselect/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace xaiselect::metrics {
namespace {

Eigen::VectorXd Densify(const explainers::FeatureAttribution& e) { return e.weights; }

// Tracks the running mean and feeds the optional stop controller.
class ItemStream {
 public:
  ItemStream(MetricResult* result, savers::StopController* stopper) : result_(result), stopper_(stopper) {}

  // Returns true when the caller should stop consuming items.
  bool Push(std::size_t target, double score) {
    result_->per_item_scores.push_back(score);
    result_->item_targets.push_back(target);
    ++result_->items_evaluated;
    sum_ += score;
    if (stopper_ == nullptr) return false;
    const double running = sum_ / static_cast<double>(result_->items_evaluated);
    if (stopper_->Observe(running) == savers::StopDecision::kStop) {
      result_->stopped_early = true;
      return true;
    }
    return false;
  }

  void Finish() { result_->aggregate = BatchMean(result_->per_item_scores); }

 private:
  MetricResult* result_;
  savers::StopController* stopper_;
  double sum_ = 0.0;
};

}  // namespace

std::string ToString(Property p) {
  switch (p) {
    case Property::kContinuity: return "continuity";
    case Property::kCorrectness: return "correctness";
    case Property::kCompactnessSize: return "compactness_size";
    case Property::kCompactnessRedundancy: return "compactness_redundancy";
    case Property::kCompleteness: return "completeness";
  }
  return "unknown";
}

std::string ToString(Orientation o) { return o == Orientation::kLoss ? "loss" : "gain"; }

const std::vector<MetricDescriptor>& KnownMetrics() {
  static const std::vector<MetricDescriptor> metrics = {
      {"robustness", "Robustness", Property::kContinuity, Orientation::kLoss, "feature-summary",
       {"dataset", "explainer_function"}, true},
      {"infidelity", "Fidelity", Property::kCorrectness, Orientation::kLoss, "feature-summary",
       {"dataset", "model", "explanations"}, true},
      {"number_of_features", "NoF", Property::kCompactnessSize, Orientation::kLoss, "feature-summary",
       {"explanations"}, true},
      {"non_representativeness", "Representativeness", Property::kCompleteness, Orientation::kLoss, "data-point",
       {"dataset", "explanations"}, false},
      {"diversity", "Diversity", Property::kCompactnessRedundancy, Orientation::kGain, "data-point",
       {"dataset", "explanations"}, false},
      {"number_of_prototypes", "NoP", Property::kCompactnessSize, Orientation::kLoss, "data-point",
       {"explanations"}, false},
  };
  return metrics;
}

const MetricDescriptor& DescribeMetric(const std::string& id) {
  for (const auto& m : KnownMetrics()) {
    if (m.id == id) return m;
  }
  throw InvalidInput("unknown XAI evaluation metric '" + id + "'");
}

double BatchMean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

MetricResult Robustness(const ExplanationFn& explain, const data::Dataset& ds, const std::vector<std::size_t>& targets,
                        const RobustnessParams& params, std::uint64_t seed, savers::RobustnessMaximaCache* cache,
                        const std::string& cache_family, savers::StopController* stopper) {
  MetricResult result;
  result.metric_id = "robustness";
  ItemStream stream(&result, stopper);
  const Eigen::VectorXd half = ds.feature_std;
  std::size_t attempted = 0;

  for (std::size_t t : targets) {
    const Eigen::VectorXd x = ds.Row(t);
    const Eigen::VectorXd e0 = explain(t, x);
    std::mt19937_64 rng(MixSeed(seed, t));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    double best_ratio = 0.0;
    Eigen::VectorXd best_point;
    auto consider = [&](const Eigen::VectorXd& z) {
      const double step = (z - x).norm();
      if (step == 0.0) return;
      ++attempted;
      Eigen::VectorXd e;
      try {
        e = explain(t, z);
      } catch (const Error&) {
        ++result.skipped_samples;
        return;
      }
      const double ratio = (e0 - e).norm() / step;
      if (ratio > best_ratio || best_point.size() == 0) {
        best_ratio = std::max(ratio, best_ratio);
        best_point = z;
      }
    };
    auto sample_box = [&](const Eigen::VectorXd& center, const Eigen::VectorXd& width) {
      Eigen::VectorXd z(center.size());
      for (Eigen::Index j = 0; j < center.size(); ++j) {
        z[j] = std::clamp(center[j] + width[j] * unit(rng), x[j] - half[j], x[j] + half[j]);
      }
      return z;
    };

    std::optional<savers::RobustnessMaximaCache::Entry> cached;
    if (cache) cached = cache->Get(cache_family, t);
    if (cached) consider(cached->point);
    const std::size_t uniform = cached ? params.warm_candidates : params.candidates_per_point;
    for (std::size_t c = 0; c < uniform; ++c) consider(sample_box(x, half));
    Eigen::VectorXd width = half;
    for (std::size_t r = 0; r < params.refine_rounds && best_point.size() > 0; ++r) {
      width *= params.shrink;
      const Eigen::VectorXd center = best_point;
      for (std::size_t c = 0; c < params.refine_samples; ++c) consider(sample_box(center, width));
    }
    if (attempted > 0 && 2 * result.skipped_samples > attempted) {
      throw ComputeFailure("robustness: explanation failed on more than half of the perturbed points");
    }
    if (cache && best_point.size() > 0) cache->PutIfBetter(cache_family, t, {best_point, best_ratio});
    result.item_points.push_back(best_point);
    if (stream.Push(t, best_ratio)) break;
  }
  stream.Finish();
  return result;
}

MetricResult Infidelity(const AttributionProvider& attribution, const models::PredictiveFunction& model,
                        const data::Dataset& ds, const std::vector<std::size_t>& targets,
                        const InfidelityParams& params, std::uint64_t seed,
                        savers::InfidelityPerturbationCache* cache, savers::StopController* stopper) {
  MetricResult result;
  result.metric_id = "infidelity";
  ItemStream stream(&result, stopper);
  const auto d = static_cast<Eigen::Index>(ds.d());
  const Eigen::VectorXd half = params.noise_half_width * ds.feature_std;

  for (std::size_t t : targets) {
    const Eigen::VectorXd e = attribution(t);
    if (e.size() != d) {
      throw InvalidInput("infidelity: explanation has " + std::to_string(e.size()) + " entries, dataset has " +
                         std::to_string(d) + " features");
    }
    std::optional<savers::InfidelityPerturbationCache::Entry> entry;
    if (cache) entry = cache->Get(t, seed);
    if (!entry) {
      const Eigen::VectorXd x = ds.Row(t);
      models::InstanceFunction f(model, x);
      std::mt19937_64 rng(MixSeed(seed, t));
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      savers::InfidelityPerturbationCache::Entry fresh;
      data::DenseMatrix shifted(static_cast<Eigen::Index>(params.num_perturbations + 1), d);
      for (std::size_t s = 0; s < params.num_perturbations; ++s) {
        Eigen::VectorXd noise(d);
        for (Eigen::Index j = 0; j < d; ++j) noise[j] = half[j] * unit(rng);
        shifted.row(static_cast<Eigen::Index>(s)) = (x - noise).transpose();
        fresh.perturbations.push_back(std::move(noise));
      }
      shifted.row(static_cast<Eigen::Index>(params.num_perturbations)) = x.transpose();
      const Eigen::VectorXd values = f(shifted);
      fresh.perturbed_values.assign(values.data(), values.data() + params.num_perturbations);
      fresh.value_at_x = values[static_cast<Eigen::Index>(params.num_perturbations)];
      if (cache) cache->PutIfAbsent(t, seed, fresh);
      entry = std::move(fresh);
    }
    double total = 0.0;
    for (std::size_t s = 0; s < entry->perturbations.size(); ++s) {
      const double gap = entry->perturbations[s].dot(e) - (entry->value_at_x - entry->perturbed_values[s]);
      total += gap * gap;
    }
    const double score = entry->perturbations.empty() ? 0.0 : total / static_cast<double>(entry->perturbations.size());
    if (stream.Push(t, score)) break;
  }
  stream.Finish();
  return result;
}

MetricResult Infidelity(std::span<const explainers::FeatureAttribution> explanations,
                        const models::PredictiveFunction& model, const data::Dataset& ds,
                        const InfidelityParams& params, std::uint64_t seed,
                        savers::InfidelityPerturbationCache* cache) {
  std::vector<std::size_t> targets;
  std::map<std::size_t, const explainers::FeatureAttribution*> by_target;
  for (const auto& e : explanations) {
    targets.push_back(e.instance_index);
    by_target[e.instance_index] = &e;
  }
  return Infidelity([&](std::size_t t) { return Densify(*by_target.at(t)); }, model, ds, targets, params, seed, cache);
}

MetricResult NumberOfFeatures(std::span<const explainers::FeatureAttribution> explanations) {
  MetricResult result;
  result.metric_id = "number_of_features";
  for (const auto& e : explanations) {
    result.per_item_scores.push_back(static_cast<double>(e.size()));
    result.item_targets.push_back(e.instance_index);
  }
  result.items_evaluated = explanations.size();
  result.aggregate = BatchMean(result.per_item_scores);
  return result;
}

MetricResult NumberOfFeatures(const std::function<std::size_t(std::size_t target)>& size_of,
                              const std::vector<std::size_t>& targets, savers::StopController* stopper) {
  MetricResult result;
  result.metric_id = "number_of_features";
  ItemStream stream(&result, stopper);
  for (std::size_t t : targets) {
    if (stream.Push(t, static_cast<double>(size_of(t)))) break;
  }
  stream.Finish();
  return result;
}

MetricResult NonRepresentativeness(const explainers::PrototypeSet& prototypes, const data::Dataset& subset,
                                   explainers::DistanceMetric distance) {
  if (prototypes.indices.empty()) throw InvalidInput("non_representativeness: empty prototype set");
  MetricResult result;
  result.metric_id = "non_representativeness";
  std::vector<Eigen::VectorXd> protos;
  for (std::size_t p : prototypes.indices) protos.push_back(subset.Row(p));
  double total = 0.0;
  for (std::size_t i = 0; i < subset.n(); ++i) {
    const Eigen::VectorXd x = subset.Row(i);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : protos) best = std::min(best, explainers::Distance(x, p, distance));
    total += best;
  }
  result.aggregate = subset.n() ? total / static_cast<double>(subset.n()) : 0.0;
  result.items_evaluated = 1;
  return result;
}

MetricResult Diversity(const explainers::PrototypeSet& prototypes, const data::Dataset& subset,
                       explainers::DistanceMetric distance) {
  MetricResult result;
  result.metric_id = "diversity";
  result.items_evaluated = 1;
  const std::size_t l = prototypes.indices.size();
  if (l < 2) {
    result.note = "fewer than two prototypes; diversity defined as 0";
    return result;
  }
  double total = 0.0;
  for (std::size_t a = 0; a < l; ++a) {
    const Eigen::VectorXd xa = subset.Row(prototypes.indices[a]);
    for (std::size_t b = a + 1; b < l; ++b) total += explainers::Distance(xa, subset.Row(prototypes.indices[b]), distance);
  }
  result.aggregate = total / (static_cast<double>(l) * static_cast<double>(l - 1) / 2.0);
  return result;
}

MetricResult NumberOfPrototypes(const explainers::PrototypeSet& prototypes) {
  MetricResult result;
  result.metric_id = "number_of_prototypes";
  result.items_evaluated = 1;
  result.aggregate = static_cast<double>(prototypes.size());
  return result;
}

}  // namespace xaiselect::metrics

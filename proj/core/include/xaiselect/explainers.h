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

#ifndef XAISELECT_EXPLAINERS_H_
#define XAISELECT_EXPLAINERS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "xaiselect/dataset.h"
#include "xaiselect/hyperparameters.h"
#include "xaiselect/models.h"

namespace xaiselect::explainers {

// Signed per-feature contributions for one instance. `weights` is dense with
// zeros outside `selected_features`.
struct FeatureAttribution {
  std::size_t instance_index = 0;
  Eigen::VectorXd weights;
  // Ordered by decreasing |weight|.
  std::vector<std::size_t> selected_features;
  // Free-form provenance, e.g. how an "auto" option was resolved.
  std::string note;

  std::size_t size() const { return selected_features.size(); }
};

struct PrototypeSet {
  std::vector<std::size_t> indices;
  // Nonnegative importance weights; empty unless the method produces them.
  std::vector<double> weights;
  // Objective value after each accepted step (k-medoids cost, Protodash gain).
  std::vector<double> objective_trace;
  // Set when fewer prototypes than requested could be selected.
  bool truncated = false;

  std::size_t size() const { return indices.size(); }
};

enum class Family { kAttribution, kPrototype };

struct ExplainerDescriptor {
  std::string id;
  std::string display_name;
  std::vector<std::string> explananda;
  std::string explanan;
  Family family = Family::kAttribution;
  HyperparameterSpace space;
  // The hyperparameter that controls explanation size; may be empty.
  std::string size_param;
};

// Dimensions that bound some hyperparameter domains (num_features <= d,
// k <= n). Without a shape, nominal bounds are used.
struct DataShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
};

const std::vector<std::string>& KnownExplainers();
// Throws InvalidInput for an unknown id.
ExplainerDescriptor Describe(const std::string& id, std::optional<DataShape> shape = std::nullopt);

enum class DistanceMetric { kEuclidean, kCosine };
DistanceMetric ParseDistance(const std::string& name);
std::string ToString(DistanceMetric metric);
double Distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, DistanceMetric metric);
// Symmetric n x n matrix of distances between rows.
Eigen::MatrixXd PairwiseDistances(const data::FeatureMatrix& m, DistanceMetric metric);
Eigen::MatrixXd PairwiseSquaredEuclidean(const data::FeatureMatrix& m);

// ---------------------------------------------------------------------------
// Feature attribution

struct LimeParams {
  std::size_t num_features = 10;
  std::size_t num_perturbations = 5000;
  double ridge_penalty = 1.0;
  // Kernel width is this factor times sqrt(d).
  double kernel_width_factor = 0.75;
};

// Local weighted ridge surrogate around `x` (standardized space).
FeatureAttribution LimeExplainPoint(const models::InstanceFunction& f, const Eigen::VectorXd& x,
                                    const LimeParams& params, std::uint64_t seed);
std::vector<FeatureAttribution> LimeExplain(const models::PredictiveFunction& model, const data::Dataset& ds,
                                            const LimeParams& params, const std::vector<std::size_t>& targets,
                                            std::uint64_t seed);

enum class L1Mode { kNone, kAuto, kAic, kBic };
L1Mode ParseL1Mode(const std::string& name);
std::string ToString(L1Mode mode);

struct KernelShapParams {
  std::size_t num_features = 0;  // 0 keeps every feature
  std::size_t num_coalitions = 2048;
  L1Mode l1_mode = L1Mode::kAuto;
};

FeatureAttribution KernelShapExplainPoint(const models::InstanceFunction& f, const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& background, const KernelShapParams& params,
                                          std::uint64_t seed);
std::vector<FeatureAttribution> KernelShapExplain(const models::PredictiveFunction& model, const data::Dataset& ds,
                                                  const KernelShapParams& params,
                                                  const std::vector<std::size_t>& targets, std::uint64_t seed);

// Weight (d-1) / (C(d,s) s (d-s)) of a coalition of size s.
double ShapleyKernelWeight(std::size_t d, std::size_t s);

// ---------------------------------------------------------------------------
// Prototypes

struct KMedoidsParams {
  std::string init = "build";  // random | heuristic | build
  std::size_t max_iter = 300;
  std::string algorithm = "alternate";  // pam | alternate
  DistanceMetric metric = DistanceMetric::kEuclidean;
  std::size_t k = 8;
};

PrototypeSet KMedoidsExplain(const data::Dataset& subset, const KMedoidsParams& params, std::uint64_t seed);
// Sum over points of the distance to the nearest medoid.
double MedoidCost(const Eigen::MatrixXd& distances, const std::vector<std::size_t>& medoids);

struct MmdCriticParams {
  double gamma = 1.0;
  std::size_t k = 8;
};

PrototypeSet MmdCriticExplain(const data::Dataset& subset, const MmdCriticParams& params);
// Squared MMD between the data and the uniform distribution over prototypes,
// RBF kernel exp(-gamma ||a-b||^2).
double SquaredMmd(const data::Dataset& subset, const std::vector<std::size_t>& prototypes, double gamma);

struct ProtodashParams {
  std::string kernel = "gaussian";  // gaussian | linear
  double sigma = 2.0;
  std::size_t k = 8;
  std::size_t weight_iterations = 200;
};

PrototypeSet ProtodashExplain(const data::Dataset& subset, const ProtodashParams& params);
// w^T mu - w^T K w / 2 for prototype weights w, mu_j = mean_i k(x_i, x_j).
double ProtodashObjective(const Eigen::MatrixXd& kernel, const std::vector<std::size_t>& prototypes,
                          const std::vector<double>& weights);
Eigen::MatrixXd ProtodashKernel(const data::Dataset& subset, const std::string& kernel, double sigma);

// ---------------------------------------------------------------------------
// Uniform entry points keyed by solution id and hyperparameter assignment.

// e(x) for one explained instance. `target` selects the random stream and the
// anchored class, so repeated calls for the same target are reproducible.
using PointExplainer = std::function<FeatureAttribution(std::size_t target, const Eigen::VectorXd& x)>;

PointExplainer MakePointExplainer(const std::string& id, const Assignment& h, const models::PredictiveFunction& model,
                                  const data::Dataset& ds, std::uint64_t seed);
PrototypeSet ExplainPrototypes(const std::string& id, const Assignment& h, const data::Dataset& subset,
                               std::uint64_t seed);

}  // namespace xaiselect::explainers

#endif  // XAISELECT_EXPLAINERS_H_

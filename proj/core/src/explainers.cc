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

#include "xaiselect/explainers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace xaiselect::explainers {
namespace {

std::int64_t Bounded(std::optional<DataShape> shape, std::size_t DataShape::*dim, std::int64_t nominal) {
  if (!shape) return nominal;
  return std::min<std::int64_t>(nominal, static_cast<std::int64_t>((*shape).*dim));
}

// Ranks feature indices by decreasing |coef|, lower index first on ties.
std::vector<std::size_t> RankByMagnitude(const Eigen::VectorXd& coef) {
  std::vector<std::size_t> order(static_cast<std::size_t>(coef.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(coef[static_cast<Eigen::Index>(a)]) > std::abs(coef[static_cast<Eigen::Index>(b)]);
  });
  return order;
}

// Weighted ridge with an unpenalized intercept, restricted to `columns`.
Eigen::VectorXd WeightedRidge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                              double penalty, const std::vector<std::size_t>& columns) {
  const auto p = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd xs(x.rows(), p);
  for (Eigen::Index j = 0; j < p; ++j) xs.col(j) = x.col(static_cast<Eigen::Index>(columns[static_cast<std::size_t>(j)]));
  const double wsum = w.sum();
  const Eigen::RowVectorXd x_mean = (w.transpose() * xs) / wsum;
  const double y_mean = w.dot(y) / wsum;
  const Eigen::MatrixXd xc = xs.rowwise() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;
  Eigen::MatrixXd gram = xc.transpose() * w.asDiagonal() * xc;
  gram.diagonal().array() += penalty;
  const Eigen::VectorXd rhs = xc.transpose() * (w.asDiagonal() * yc);
  return gram.ldlt().solve(rhs);
}

}  // namespace

const std::vector<std::string>& KnownExplainers() {
  static const std::vector<std::string> ids = {"lime", "kernel_shap", "kmedoids", "mmd_critic", "protodash"};
  return ids;
}

ExplainerDescriptor Describe(const std::string& id, std::optional<DataShape> shape) {
  constexpr std::int64_t kNominalFeatures = 64;
  constexpr std::int64_t kMaxPrototypes = 30;
  ExplainerDescriptor desc;
  desc.id = id;
  if (id == "lime" || id == "kernel_shap") {
    desc.family = Family::kAttribution;
    desc.explananda = {"why-this-prediction"};
    desc.explanan = "feature-summary";
    desc.size_param = "num_features";
    const std::int64_t d = Bounded(shape, &DataShape::cols, kNominalFeatures);
    if (d < 1) throw InvalidInput(id + " needs at least one feature");
    if (id == "lime") {
      desc.display_name = "LIME";
      desc.space = HyperparameterSpace({
          ParamDescriptor::Integer("num_features", 1, std::max<std::int64_t>(d, 2), std::min<std::int64_t>(10, d)),
          ParamDescriptor::Integer("num_perturbations", 100, 10000, 5000),
      });
    } else {
      if (d < 2) throw InvalidInput("tuning kernel_shap needs at least two features");
      desc.display_name = "SHAP";
      const std::int64_t coalitions = std::clamp<std::int64_t>(2 * d + 2048, 100, 10000);
      desc.space = HyperparameterSpace({
          ParamDescriptor::Integer("num_features", 1, d, d),
          ParamDescriptor::Integer("num_coalitions", 100, 10000, coalitions),
          ParamDescriptor::Categorical("l1_mode", {"auto", "aic", "bic"}, "auto"),
      });
    }
    return desc;
  }
  const std::int64_t n = Bounded(shape, &DataShape::rows, kMaxPrototypes);
  if (n < 2) throw InvalidInput(id + " needs at least two rows to explain");
  const std::int64_t k_default = std::min<std::int64_t>(8, n);
  desc.family = Family::kPrototype;
  desc.explananda = {"what-data-lead"};
  desc.explanan = "data-point";
  desc.size_param = "k";
  if (id == "kmedoids") {
    desc.display_name = "k-medoids";
    desc.space = HyperparameterSpace({
        ParamDescriptor::Categorical("init", {"random", "heuristic", "build"}, "build"),
        ParamDescriptor::Integer("max_iter", 50, 500, 300),
        ParamDescriptor::Categorical("algorithm", {"pam", "alternate"}, "alternate"),
        ParamDescriptor::Categorical("metric", {"euclidean", "cosine"}, "euclidean"),
        ParamDescriptor::Integer("k", 2, n, k_default),
    });
  } else if (id == "mmd_critic") {
    desc.display_name = "MMD-critic";
    desc.space = HyperparameterSpace({
        ParamDescriptor::Continuous("gamma", 1e-3, 10.0, 1.0, /*log_scale=*/true),
        ParamDescriptor::Integer("k", 2, n, k_default),
    });
  } else if (id == "protodash") {
    desc.display_name = "Protodash";
    desc.space = HyperparameterSpace({
        ParamDescriptor::Categorical("kernel", {"gaussian", "linear"}, "gaussian"),
        ParamDescriptor::Continuous("sigma", 0.1, 50.0, 2.0, /*log_scale=*/true),
        ParamDescriptor::Integer("k", 2, n, k_default),
    });
  } else {
    throw InvalidInput("unknown XAI solution '" + id + "'");
  }
  return desc;
}

DistanceMetric ParseDistance(const std::string& name) {
  if (name == "euclidean") return DistanceMetric::kEuclidean;
  if (name == "cosine") return DistanceMetric::kCosine;
  throw InvalidInput("unknown distance '" + name + "'");
}

std::string ToString(DistanceMetric metric) {
  return metric == DistanceMetric::kEuclidean ? "euclidean" : "cosine";
}

double Distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, DistanceMetric metric) {
  if (metric == DistanceMetric::kEuclidean) return (a - b).norm();
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 && nb == 0.0) return 0.0;
  if (na == 0.0 || nb == 0.0) return 1.0;
  return std::max(0.0, 1.0 - a.dot(b) / (na * nb));
}

namespace {

Eigen::MatrixXd Gram(const data::FeatureMatrix& m) {
  if (m.is_sparse()) {
    const data::SparseMatrix& s = m.sparse();
    data::SparseMatrix g = s * data::SparseMatrix(s.transpose());
    return Eigen::MatrixXd(g);
  }
  return m.dense() * m.dense().transpose();
}

}  // namespace

Eigen::MatrixXd PairwiseSquaredEuclidean(const data::FeatureMatrix& m) {
  const Eigen::MatrixXd g = Gram(m);
  const Eigen::VectorXd sq = g.diagonal();
  Eigen::MatrixXd d2 = (-2.0 * g).colwise() + sq;
  d2.rowwise() += sq.transpose();
  d2 = d2.cwiseMax(0.0);
  d2.diagonal().setZero();
  return d2;
}

Eigen::MatrixXd PairwiseDistances(const data::FeatureMatrix& m, DistanceMetric metric) {
  if (metric == DistanceMetric::kEuclidean) return PairwiseSquaredEuclidean(m).cwiseSqrt();
  const Eigen::MatrixXd g = Gram(m);
  const Eigen::VectorXd norms = g.diagonal().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Index n = g.rows();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || (norms[i] == 0.0 && norms[j] == 0.0)) {
        out(i, j) = 0.0;
      } else if (norms[i] == 0.0 || norms[j] == 0.0) {
        out(i, j) = 1.0;
      } else {
        out(i, j) = std::max(0.0, 1.0 - g(i, j) / (norms[i] * norms[j]));
      }
    }
  }
  return out;
}

FeatureAttribution LimeExplainPoint(const models::InstanceFunction& f, const Eigen::VectorXd& x,
                                    const LimeParams& params, std::uint64_t seed) {
  const auto d = static_cast<std::size_t>(x.size());
  if (params.num_features == 0 || params.num_features > d) {
    throw InvalidInput("LIME num_features must lie in [1, " + std::to_string(d) + "]");
  }
  const auto n = static_cast<Eigen::Index>(std::max<std::size_t>(params.num_perturbations, 2));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  data::DenseMatrix samples(n, static_cast<Eigen::Index>(d));
  samples.row(0) = x.transpose();
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d); ++j) samples(i, j) = x[j] + normal(rng);
  }
  const Eigen::VectorXd y = f(samples);

  FeatureAttribution out;
  out.weights = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  if (y.maxCoeff() == y.minCoeff()) return out;

  const double width = params.kernel_width_factor * std::sqrt(static_cast<double>(d));
  const Eigen::VectorXd dist2 = (samples.rowwise() - x.transpose()).rowwise().squaredNorm();
  const Eigen::VectorXd kernel = (-dist2.array() / (width * width)).exp();
  const Eigen::MatrixXd xs = samples;

  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), 0);
  const Eigen::VectorXd full = WeightedRidge(xs, y, kernel, params.ridge_penalty, all);
  std::vector<std::size_t> chosen = RankByMagnitude(full);
  chosen.resize(params.num_features);
  std::sort(chosen.begin(), chosen.end());
  const Eigen::VectorXd refit = WeightedRidge(xs, y, kernel, params.ridge_penalty, chosen);
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    out.weights[static_cast<Eigen::Index>(chosen[j])] = refit[static_cast<Eigen::Index>(j)];
  }
  for (std::size_t j : RankByMagnitude(out.weights)) {
    if (out.weights[static_cast<Eigen::Index>(j)] != 0.0) out.selected_features.push_back(j);
  }
  return out;
}

std::vector<FeatureAttribution> LimeExplain(const models::PredictiveFunction& model, const data::Dataset& ds,
                                            const LimeParams& params, const std::vector<std::size_t>& targets,
                                            std::uint64_t seed) {
  if (targets.empty()) throw InvalidInput("LIME: no targets to explain");
  std::vector<FeatureAttribution> out;
  out.reserve(targets.size());
  for (std::size_t t : targets) {
    const Eigen::VectorXd x = ds.Row(t);
    models::InstanceFunction f(model, x);
    FeatureAttribution e = LimeExplainPoint(f, x, params, MixSeed(seed, t));
    e.instance_index = t;
    out.push_back(std::move(e));
  }
  return out;
}

PointExplainer MakePointExplainer(const std::string& id, const Assignment& h, const models::PredictiveFunction& model,
                                  const data::Dataset& ds, std::uint64_t seed) {
  if (id == "lime") {
    LimeParams p;
    p.num_features = static_cast<std::size_t>(h.Int("num_features"));
    p.num_perturbations = static_cast<std::size_t>(h.Int("num_perturbations"));
    return [p, &model, &ds, seed](std::size_t target, const Eigen::VectorXd& x) {
      models::InstanceFunction f(model, ds.Row(target));
      FeatureAttribution e = LimeExplainPoint(f, x, p, MixSeed(seed, target));
      e.instance_index = target;
      return e;
    };
  }
  if (id == "kernel_shap") {
    KernelShapParams p;
    p.num_features = static_cast<std::size_t>(h.Int("num_features"));
    p.num_coalitions = static_cast<std::size_t>(h.Int("num_coalitions"));
    p.l1_mode = ParseL1Mode(h.Choice("l1_mode"));
    const Eigen::VectorXd background = ds.feature_mean;
    return [p, background, &model, &ds, seed](std::size_t target, const Eigen::VectorXd& x) {
      models::InstanceFunction f(model, ds.Row(target));
      FeatureAttribution e = KernelShapExplainPoint(f, x, background, p, MixSeed(seed, target));
      e.instance_index = target;
      return e;
    };
  }
  throw InvalidInput("'" + id + "' is not a feature-attribution solution");
}

PrototypeSet ExplainPrototypes(const std::string& id, const Assignment& h, const data::Dataset& subset,
                               std::uint64_t seed) {
  if (id == "kmedoids") {
    KMedoidsParams p;
    p.init = h.Choice("init");
    p.max_iter = static_cast<std::size_t>(h.Int("max_iter"));
    p.algorithm = h.Choice("algorithm");
    p.metric = ParseDistance(h.Choice("metric"));
    p.k = static_cast<std::size_t>(h.Int("k"));
    return KMedoidsExplain(subset, p, seed);
  }
  if (id == "mmd_critic") {
    return MmdCriticExplain(subset, MmdCriticParams{h.Real("gamma"), static_cast<std::size_t>(h.Int("k"))});
  }
  if (id == "protodash") {
    ProtodashParams p;
    p.kernel = h.Choice("kernel");
    p.sigma = h.Real("sigma");
    p.k = static_cast<std::size_t>(h.Int("k"));
    return ProtodashExplain(subset, p);
  }
  throw InvalidInput("'" + id + "' is not a prototype solution");
}

}  // namespace xaiselect::explainers

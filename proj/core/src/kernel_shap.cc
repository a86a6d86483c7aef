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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_set>

#include "xaiselect/explainers.h"

namespace xaiselect::explainers {
namespace {

constexpr std::size_t kMaxShapFeatures = 62;
constexpr std::size_t kLassoPathLength = 50;
constexpr double kLassoPathRatio = 1e-3;

double BinomialCoefficient(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

// Coordinate-descent lasso path on the sqrt-weighted problem; returns the
// support chosen by the information criterion.
std::vector<std::size_t> SelectByInformationCriterion(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                                                      const Eigen::VectorXd& w, L1Mode mode) {
  const Eigen::Index n = z.rows();
  const Eigen::Index p = z.cols();
  const Eigen::VectorXd sw = w.cwiseSqrt();
  const Eigen::MatrixXd a = sw.asDiagonal() * z;
  const Eigen::VectorXd b = sw.cwiseProduct(y);
  const double nn = static_cast<double>(n);
  const Eigen::VectorXd col_sq = a.colwise().squaredNorm().transpose() / nn;
  const Eigen::VectorXd corr = a.transpose() * b / nn;
  const double lambda_max = corr.cwiseAbs().maxCoeff();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd resid = b;
  double best_score = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_beta = beta;
  const double penalty_per_df = mode == L1Mode::kBic ? std::log(nn) : 2.0;
  for (std::size_t step = 0; step < kLassoPathLength && lambda_max > 0; ++step) {
    const double lambda =
        lambda_max * std::pow(kLassoPathRatio, static_cast<double>(step) / static_cast<double>(kLassoPathLength - 1));
    for (int sweep = 0; sweep < 1000; ++sweep) {
      double max_change = 0.0;
      for (Eigen::Index j = 0; j < p; ++j) {
        if (col_sq[j] == 0.0) continue;
        const double rho = a.col(j).dot(resid) / nn + col_sq[j] * beta[j];
        const double updated = std::copysign(std::max(std::abs(rho) - lambda, 0.0), rho) / col_sq[j];
        const double delta = updated - beta[j];
        if (delta != 0.0) {
          resid -= delta * a.col(j);
          beta[j] = updated;
          max_change = std::max(max_change, std::abs(delta));
        }
      }
      if (max_change < 1e-10) break;
    }
    const double rss = std::max(resid.squaredNorm(), std::numeric_limits<double>::min());
    const double df = static_cast<double>((beta.array() != 0.0).count());
    const double score = nn * std::log(rss / nn) + penalty_per_df * df;
    if (score < best_score) {
      best_score = score;
      best_beta = beta;
    }
  }
  std::vector<std::size_t> support;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (best_beta[j] != 0.0) support.push_back(static_cast<std::size_t>(j));
  }
  if (support.empty()) {
    Eigen::Index arg = 0;
    corr.cwiseAbs().maxCoeff(&arg);
    support.push_back(static_cast<std::size_t>(arg));
  }
  return support;
}

// Weighted least squares over `support` with sum(phi) = delta enforced by
// eliminating the last supported feature.
Eigen::VectorXd ConstrainedWls(const Eigen::MatrixXd& z, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                               double delta, const std::vector<std::size_t>& support, Eigen::Index d) {
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(d);
  const auto last = static_cast<Eigen::Index>(support.back());
  if (support.size() == 1) {
    phi[last] = delta;
    return phi;
  }
  const auto q = static_cast<Eigen::Index>(support.size() - 1);
  Eigen::MatrixXd x(z.rows(), q);
  for (Eigen::Index j = 0; j < q; ++j) x.col(j) = z.col(static_cast<Eigen::Index>(support[static_cast<std::size_t>(j)])) - z.col(last);
  const Eigen::VectorXd target = y - z.col(last) * delta;
  const Eigen::MatrixXd gram = x.transpose() * w.asDiagonal() * x;
  const Eigen::VectorXd rhs = x.transpose() * w.cwiseProduct(target);
  const Eigen::VectorXd sol = gram.completeOrthogonalDecomposition().solve(rhs);
  double rest = 0.0;
  for (Eigen::Index j = 0; j < q; ++j) {
    phi[static_cast<Eigen::Index>(support[static_cast<std::size_t>(j)])] = sol[j];
    rest += sol[j];
  }
  phi[last] = delta - rest;
  return phi;
}

}  // namespace

L1Mode ParseL1Mode(const std::string& name) {
  if (name == "auto") return L1Mode::kAuto;
  if (name == "aic") return L1Mode::kAic;
  if (name == "bic") return L1Mode::kBic;
  if (name == "none") return L1Mode::kNone;
  throw InvalidInput("unknown l1_mode '" + name + "'");
}

std::string ToString(L1Mode mode) {
  switch (mode) {
    case L1Mode::kNone: return "none";
    case L1Mode::kAuto: return "auto";
    case L1Mode::kAic: return "aic";
    case L1Mode::kBic: return "bic";
  }
  return "none";
}

double ShapleyKernelWeight(std::size_t d, std::size_t s) {
  return static_cast<double>(d - 1) / (BinomialCoefficient(d, s) * static_cast<double>(s) * static_cast<double>(d - s));
}

FeatureAttribution KernelShapExplainPoint(const models::InstanceFunction& f, const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& background, const KernelShapParams& params,
                                          std::uint64_t seed) {
  const auto d = static_cast<std::size_t>(x.size());
  if (d == 0) throw InvalidInput("kernel_shap needs at least one feature");
  if (d > kMaxShapFeatures) throw InvalidInput("kernel_shap supports at most 62 features");
  if (params.num_features > d) {
    throw InvalidInput("kernel_shap num_features must lie in [1, " + std::to_string(d) + "]");
  }
  if (d == 1) {
    // No proper coalition exists; efficiency alone fixes the attribution.
    data::DenseMatrix ends(2, 1);
    ends << x[0], background[0];
    const Eigen::VectorXd v = f(ends);
    FeatureAttribution out;
    out.note = "l1_mode=none;coalitions=full";
    out.weights = Eigen::VectorXd::Constant(1, v[0] - v[1]);
    if (out.weights[0] != 0.0) out.selected_features.push_back(0);
    return out;
  }
  const std::uint64_t total = (std::uint64_t{1} << d) - 2;
  const bool full = params.num_coalitions >= total;

  std::vector<std::uint64_t> masks;
  if (full) {
    masks.resize(total);
    std::iota(masks.begin(), masks.end(), std::uint64_t{1});
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, total);
    std::unordered_set<std::uint64_t> seen;
    while (masks.size() < params.num_coalitions) {
      const std::uint64_t m = pick(rng);
      if (seen.insert(m).second) masks.push_back(m);
    }
  }

  const auto rows = static_cast<Eigen::Index>(masks.size());
  const auto di = static_cast<Eigen::Index>(d);
  data::DenseMatrix points(rows + 2, di);
  Eigen::MatrixXd z(rows, di);
  Eigen::VectorXd w(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::uint64_t m = masks[static_cast<std::size_t>(r)];
    std::size_t size = 0;
    for (Eigen::Index j = 0; j < di; ++j) {
      const bool on = (m >> j) & 1U;
      z(r, j) = on ? 1.0 : 0.0;
      points(r, j) = on ? x[j] : background[j];
      size += on;
    }
    w[r] = ShapleyKernelWeight(d, size);
  }
  points.row(rows) = x.transpose();
  points.row(rows + 1) = background.transpose();
  const Eigen::VectorXd values = f(points);
  const double fx = values[rows];
  const double fb = values[rows + 1];
  const double delta = fx - fb;
  const Eigen::VectorXd y = values.head(rows).array() - fb;

  L1Mode mode = params.l1_mode;
  if (mode == L1Mode::kAuto) mode = full ? L1Mode::kNone : L1Mode::kAic;

  FeatureAttribution out;
  out.note = "l1_mode=" + ToString(mode) + (full ? ";coalitions=full" : ";coalitions=sampled");
  std::vector<std::size_t> support(d);
  std::iota(support.begin(), support.end(), 0);
  if (mode != L1Mode::kNone) support = SelectByInformationCriterion(z, y, w, mode);
  out.weights = ConstrainedWls(z, y, w, delta, support, di);

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(out.weights[static_cast<Eigen::Index>(a)]) > std::abs(out.weights[static_cast<Eigen::Index>(b)]);
  });
  const std::size_t keep = params.num_features == 0 ? d : params.num_features;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto j = static_cast<Eigen::Index>(order[r]);
    if (r >= keep) {
      out.weights[j] = 0.0;
    } else if (out.weights[j] != 0.0) {
      out.selected_features.push_back(order[r]);
    }
  }
  return out;
}

std::vector<FeatureAttribution> KernelShapExplain(const models::PredictiveFunction& model, const data::Dataset& ds,
                                                  const KernelShapParams& params,
                                                  const std::vector<std::size_t>& targets, std::uint64_t seed) {
  if (targets.empty()) throw InvalidInput("kernel_shap: no targets to explain");
  std::vector<FeatureAttribution> out;
  out.reserve(targets.size());
  for (std::size_t t : targets) {
    const Eigen::VectorXd x = ds.Row(t);
    models::InstanceFunction f(model, x);
    FeatureAttribution e = KernelShapExplainPoint(f, x, ds.feature_mean, params, MixSeed(seed, t));
    e.instance_index = t;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace xaiselect::explainers

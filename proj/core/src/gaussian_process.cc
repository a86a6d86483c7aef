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

#include "xaiselect/gaussian_process.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xaiselect/common.h"

namespace xaiselect::hpo {
namespace {

double ToUnit(const ParamDescriptor& p, double v) {
  if (p.log_scale) return (std::log(v) - std::log(p.lo)) / (std::log(p.hi) - std::log(p.lo));
  return (v - p.lo) / (p.hi - p.lo);
}

double FromUnit(const ParamDescriptor& p, double u) {
  u = std::clamp(u, 0.0, 1.0);
  if (p.log_scale) return std::exp(std::log(p.lo) + u * (std::log(p.hi) - std::log(p.lo)));
  return p.lo + u * (p.hi - p.lo);
}

Eigen::MatrixXd Kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double length_scale) {
  Eigen::MatrixXd k(a.rows(), b.rows());
  const double inv = 1.0 / (2.0 * length_scale * length_scale);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) k(i, j) = std::exp(-(a.row(i) - b.row(j)).squaredNorm() * inv);
  }
  return k;
}

struct Factor {
  Eigen::MatrixXd lower;
  double jitter = 0.0;
};

Factor Factorize(const Eigen::MatrixXd& k) {
  for (double jitter = 1e-6; jitter <= 1e-2 * 1.0001; jitter *= 10.0) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(kj);
    if (llt.info() == Eigen::Success) return {llt.matrixL(), jitter};
  }
  throw ComputeFailure("GP covariance is not positive definite even with jitter 1e-2");
}

}  // namespace

std::size_t EncodedDimension(const HyperparameterSpace& space) {
  std::size_t dim = 0;
  for (const auto& p : space.params()) dim += p.kind == ParamKind::kCategorical ? p.options.size() : 1;
  return dim;
}

Eigen::VectorXd Encode(const HyperparameterSpace& space, const Assignment& a) {
  space.Check(a);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(EncodedDimension(space)));
  Eigen::Index at = 0;
  for (const auto& p : space.params()) {
    switch (p.kind) {
      case ParamKind::kContinuous:
        out(at++) = ToUnit(p, a.Real(p.name));
        break;
      case ParamKind::kInteger:
        out(at++) = ToUnit(p, static_cast<double>(a.Int(p.name)));
        break;
      case ParamKind::kCategorical: {
        const std::string& choice = a.Choice(p.name);
        for (const auto& option : p.options) out(at++) = option == choice ? 1.0 : 0.0;
        break;
      }
    }
  }
  return out;
}

Assignment Decode(const HyperparameterSpace& space, const Eigen::VectorXd& point) {
  if (static_cast<std::size_t>(point.size()) != EncodedDimension(space)) {
    throw InvalidInput("decode: point has the wrong dimension");
  }
  std::vector<std::pair<std::string, ParamValue>> entries;
  Eigen::Index at = 0;
  for (const auto& p : space.params()) {
    switch (p.kind) {
      case ParamKind::kContinuous:
        entries.emplace_back(p.name, std::clamp(FromUnit(p, point(at++)), p.lo, p.hi));
        break;
      case ParamKind::kInteger: {
        const double u = std::clamp(point(at++), 0.0, 1.0);
        auto v = static_cast<std::int64_t>(std::floor(p.lo + u * (p.hi - p.lo) + 0.5));
        v = std::clamp(v, static_cast<std::int64_t>(p.lo), static_cast<std::int64_t>(p.hi));
        entries.emplace_back(p.name, v);
        break;
      }
      case ParamKind::kCategorical: {
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.options.size(); ++i) {
          if (point(at + static_cast<Eigen::Index>(i)) > point(at + static_cast<Eigen::Index>(best))) best = i;
        }
        at += static_cast<Eigen::Index>(p.options.size());
        entries.emplace_back(p.name, p.options[best]);
        break;
      }
    }
  }
  return Assignment(std::move(entries));
}

Eigen::VectorXd Snap(const HyperparameterSpace& space, const Eigen::VectorXd& point) {
  return Encode(space, Decode(space, point));
}

GaussianProcess GaussianProcess::Fit(const std::vector<Eigen::VectorXd>& inputs, const std::vector<double>& targets,
                                     std::optional<double> length_scale) {
  if (inputs.size() != targets.size()) throw InvalidInput("GP fit: inputs and targets differ in length");
  // Merge exact duplicates, keeping first-seen order.
  std::vector<Eigen::VectorXd> xs;
  std::vector<double> sums;
  std::vector<int> counts;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!std::isfinite(targets[i])) throw InvalidInput("GP fit: non-finite target");
    auto it = std::find_if(xs.begin(), xs.end(), [&](const Eigen::VectorXd& x) { return x == inputs[i]; });
    if (it == xs.end()) {
      xs.push_back(inputs[i]);
      sums.push_back(targets[i]);
      counts.push_back(1);
    } else {
      const auto j = static_cast<std::size_t>(it - xs.begin());
      sums[j] += targets[i];
      ++counts[j];
    }
  }
  if (xs.size() < 2) throw InvalidInput("GP fit needs at least 2 distinct observations");

  GaussianProcess gp;
  const auto n = static_cast<Eigen::Index>(xs.size());
  gp.inputs_.resize(n, xs.front().size());
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gp.inputs_.row(i) = xs[static_cast<std::size_t>(i)].transpose();
    y(i) = sums[static_cast<std::size_t>(i)] / counts[static_cast<std::size_t>(i)];
  }
  gp.target_mean_ = y.mean();
  const double sd = std::sqrt((y.array() - gp.target_mean_).square().mean());
  gp.target_std_ = sd < 1e-12 ? 1.0 : sd;
  gp.targets_ = (y.array() - gp.target_mean_) / gp.target_std_;
  gp.best_ = gp.targets_.maxCoeff();

  std::vector<double> candidates;
  if (length_scale) {
    candidates.push_back(*length_scale);
  } else {
    candidates.assign(std::begin(kLengthScaleGrid), std::end(kLengthScaleGrid));
  }
  bool have = false;
  for (double ell : candidates) {
    Factor f = Factorize(Kernel(gp.inputs_, gp.inputs_, ell));
    Eigen::VectorXd alpha = f.lower.triangularView<Eigen::Lower>().solve(gp.targets_);
    alpha = f.lower.transpose().triangularView<Eigen::Upper>().solve(alpha);
    const double lml = -0.5 * gp.targets_.dot(alpha) - f.lower.diagonal().array().log().sum() -
                       0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
    gp.grid_.emplace_back(ell, lml);
    if (!have || lml > gp.lml_) {
      have = true;
      gp.lml_ = lml;
      gp.length_scale_ = ell;
      gp.jitter_ = f.jitter;
      gp.chol_lower_ = std::move(f.lower);
      gp.alpha_ = std::move(alpha);
    }
  }
  return gp;
}

void GaussianProcess::PredictStandardized(const Eigen::VectorXd& x, double* mean, double* variance) const {
  Eigen::MatrixXd row = x.transpose();
  const Eigen::VectorXd k = Kernel(inputs_, row, length_scale_).col(0);
  *mean = k.dot(alpha_);
  if (variance != nullptr) {
    const Eigen::VectorXd v = chol_lower_.triangularView<Eigen::Lower>().solve(k);
    *variance = std::max(0.0, 1.0 - v.squaredNorm());
  }
}

double GaussianProcess::PredictMean(const Eigen::VectorXd& x) const {
  double m = 0.0;
  PredictStandardized(x, &m, nullptr);
  return target_mean_ + target_std_ * m;
}

double ExpectedImprovement(double mean, double stddev, double best, double xi) {
  const double improvement = mean - best - xi;
  if (stddev <= 1e-12) return std::max(improvement, 0.0);
  const double z = improvement / stddev;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return improvement * cdf + stddev * pdf;
}

Assignment RandomAssignment(const HyperparameterSpace& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd u(static_cast<Eigen::Index>(EncodedDimension(space)));
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = unit(rng);
  return Decode(space, u);
}

Assignment Propose(const GaussianProcess& gp, const HyperparameterSpace& space, const Eigen::VectorXd& incumbent,
                   const std::vector<Assignment>& evaluated, std::mt19937_64& rng, const ProposeOptions& options) {
  const auto dim = static_cast<Eigen::Index>(EncodedDimension(space));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, options.local_sigma);
  auto perturb = [&](const Eigen::VectorXd& center) {
    Eigen::VectorXd p(dim);
    for (Eigen::Index i = 0; i < dim; ++i) p(i) = std::clamp(center(i) + gauss(rng), 0.0, 1.0);
    return Snap(space, p);
  };

  std::vector<Eigen::VectorXd> candidates;
  candidates.reserve(options.random_candidates + options.local_candidates);
  for (std::size_t c = 0; c < options.random_candidates; ++c) {
    Eigen::VectorXd p(dim);
    for (Eigen::Index i = 0; i < dim; ++i) p(i) = unit(rng);
    candidates.push_back(Snap(space, p));
  }
  for (std::size_t c = 0; c < options.local_candidates; ++c) candidates.push_back(perturb(incumbent));

  std::size_t best = 0;
  double best_ei = -1.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double mean = 0.0;
    double var = 0.0;
    gp.PredictStandardized(candidates[c], &mean, &var);
    const double ei = ExpectedImprovement(mean, std::sqrt(var), gp.best_standardized(), options.xi);
    if (ei > best_ei) {
      best_ei = ei;
      best = c;
    }
  }
  Assignment proposal = Decode(space, candidates[best]);
  if (std::find(evaluated.begin(), evaluated.end(), proposal) != evaluated.end()) {
    proposal = Decode(space, perturb(candidates[best]));
  }
  return proposal;
}

}  // namespace xaiselect::hpo

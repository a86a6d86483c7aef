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

#ifndef XAISELECT_GAUSSIAN_PROCESS_H_
#define XAISELECT_GAUSSIAN_PROCESS_H_

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "xaiselect/hyperparameters.h"

namespace xaiselect::hpo {

// Unit-hypercube coordinates of an assignment: one coordinate per ranged
// parameter, a one-hot block per categorical one.
std::size_t EncodedDimension(const HyperparameterSpace& space);
Eigen::VectorXd Encode(const HyperparameterSpace& space, const Assignment& a);
// Coordinates are clamped to [0, 1]; integers round half up; categorical
// blocks decode to their argmax (first index on ties).
Assignment Decode(const HyperparameterSpace& space, const Eigen::VectorXd& point);
// Encode(Decode(point)): the nearest point that is a valid assignment.
Eigen::VectorXd Snap(const HyperparameterSpace& space, const Eigen::VectorXd& point);

inline constexpr double kLengthScaleGrid[] = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6};

// Zero-mean GP with an isotropic squared-exponential kernel (unit signal
// variance) on standardized targets.
class GaussianProcess {
 public:
  // Needs at least 2 distinct inputs. Exact duplicate inputs are merged and
  // their targets averaged. Without `length_scale`, the grid value with the
  // largest log marginal likelihood is used.
  static GaussianProcess Fit(const std::vector<Eigen::VectorXd>& inputs, const std::vector<double>& targets,
                             std::optional<double> length_scale = std::nullopt);

  // Posterior in standardized target units.
  void PredictStandardized(const Eigen::VectorXd& x, double* mean, double* variance) const;
  // Posterior mean in original target units.
  double PredictMean(const Eigen::VectorXd& x) const;

  double length_scale() const { return length_scale_; }
  double jitter() const { return jitter_; }
  double log_marginal_likelihood() const { return lml_; }
  // (length scale, log marginal likelihood) for every grid value tried.
  const std::vector<std::pair<double, double>>& grid() const { return grid_; }
  // Largest standardized training target.
  double best_standardized() const { return best_; }
  std::size_t size() const { return static_cast<std::size_t>(inputs_.rows()); }

 private:
  Eigen::MatrixXd inputs_;
  Eigen::VectorXd targets_;
  Eigen::MatrixXd chol_lower_;
  Eigen::VectorXd alpha_;
  double target_mean_ = 0.0;
  double target_std_ = 1.0;
  double length_scale_ = 0.2;
  double jitter_ = 1e-6;
  double lml_ = 0.0;
  double best_ = 0.0;
  std::vector<std::pair<double, double>> grid_;
};

double ExpectedImprovement(double mean, double stddev, double best, double xi);

struct ProposeOptions {
  std::size_t random_candidates = 512;
  std::size_t local_candidates = 32;
  double local_sigma = 0.05;
  double xi = 0.01;
};

// Decoded EI argmax over random and incumbent-local candidates. A proposal
// equal to an already evaluated assignment is re-perturbed once.
Assignment Propose(const GaussianProcess& gp, const HyperparameterSpace& space, const Eigen::VectorXd& incumbent,
                   const std::vector<Assignment>& evaluated, std::mt19937_64& rng,
                   const ProposeOptions& options = {});

Assignment RandomAssignment(const HyperparameterSpace& space, std::mt19937_64& rng);

}  // namespace xaiselect::hpo

#endif  // XAISELECT_GAUSSIAN_PROCESS_H_

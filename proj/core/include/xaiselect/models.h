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

#ifndef XAISELECT_MODELS_H_
#define XAISELECT_MODELS_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "xaiselect/common.h"
#include "xaiselect/dataset.h"

namespace xaiselect::models {

enum class ModelKind { kMlp, kLinear, kLogistic, kExternal };

std::string ToString(ModelKind kind);

// The black box f. Implementations are immutable once built, so Predict may
// be called from several threads.
class PredictiveFunction {
 public:
  virtual ~PredictiveFunction() = default;

  // Regression: raw outputs. Classification: probability of class 1.
  virtual Eigen::VectorXd Predict(const data::DenseMatrix& x) const = 0;
  virtual Task task() const = 0;
  virtual ModelKind kind() const = 0;
  virtual std::size_t input_dim() const = 0;
  // Gradient of Predict at one point. Throws InvalidInput for model kinds
  // without one.
  virtual Eigen::VectorXd Gradient(const Eigen::VectorXd& x) const;

  double PredictOne(const Eigen::VectorXd& x) const;
};

class LinearModel final : public PredictiveFunction {
 public:
  LinearModel(Eigen::VectorXd weights, double bias) : weights_(std::move(weights)), bias_(bias) {}

  Eigen::VectorXd Predict(const data::DenseMatrix& x) const override;
  Task task() const override { return Task::kRegression; }
  ModelKind kind() const override { return ModelKind::kLinear; }
  std::size_t input_dim() const override { return static_cast<std::size_t>(weights_.size()); }
  Eigen::VectorXd Gradient(const Eigen::VectorXd& x) const override;

  const Eigen::VectorXd& weights() const { return weights_; }
  double bias() const { return bias_; }

 private:
  Eigen::VectorXd weights_;
  double bias_;
};

class LogisticModel final : public PredictiveFunction {
 public:
  LogisticModel(Eigen::VectorXd weights, double bias) : weights_(std::move(weights)), bias_(bias) {}

  Eigen::VectorXd Predict(const data::DenseMatrix& x) const override;
  Task task() const override { return Task::kClassification; }
  ModelKind kind() const override { return ModelKind::kLogistic; }
  std::size_t input_dim() const override { return static_cast<std::size_t>(weights_.size()); }
  Eigen::VectorXd Gradient(const Eigen::VectorXd& x) const override;

  const Eigen::VectorXd& weights() const { return weights_; }
  double bias() const { return bias_; }

 private:
  Eigen::VectorXd weights_;
  double bias_;
};

// One hidden ReLU layer. Regression outputs are `output_scale * z +
// output_offset`; classification outputs are sigmoid(z).
struct MlpParameters {
  Eigen::MatrixXd hidden_weights;  // width x d
  Eigen::VectorXd hidden_bias;     // width
  Eigen::VectorXd output_weights;  // width
  double output_bias = 0.0;
  double output_offset = 0.0;
  double output_scale = 1.0;
  Task task = Task::kRegression;
  std::uint64_t seed = 0;

  std::size_t input_dim() const { return static_cast<std::size_t>(hidden_weights.cols()); }
  std::size_t width() const { return static_cast<std::size_t>(hidden_weights.rows()); }
};

class Mlp final : public PredictiveFunction {
 public:
  explicit Mlp(MlpParameters params);

  Eigen::VectorXd Predict(const data::DenseMatrix& x) const override;
  Task task() const override { return params_.task; }
  ModelKind kind() const override { return ModelKind::kMlp; }
  std::size_t input_dim() const override { return params_.input_dim(); }
  Eigen::VectorXd Gradient(const Eigen::VectorXd& x) const override;

  const MlpParameters& parameters() const { return params_; }

 private:
  MlpParameters params_;
};

// Predictions supplied from outside, aligned to dataset rows. Serves row
// lookups only; it cannot be evaluated at new points.
class ExternalPredictions final : public PredictiveFunction {
 public:
  ExternalPredictions(std::vector<double> values, Task task) : values_(std::move(values)), task_(task) {}

  Eigen::VectorXd Predict(const data::DenseMatrix& x) const override;
  Task task() const override { return task_; }
  ModelKind kind() const override { return ModelKind::kExternal; }
  std::size_t input_dim() const override { return 0; }

  double Lookup(std::size_t row) const;
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
  Task task_;
};

// Wraps a model and counts the rows it has been asked to evaluate.
class CountingModel final : public PredictiveFunction {
 public:
  explicit CountingModel(std::shared_ptr<const PredictiveFunction> inner) : inner_(std::move(inner)) {}

  Eigen::VectorXd Predict(const data::DenseMatrix& x) const override;
  Task task() const override { return inner_->task(); }
  ModelKind kind() const override { return inner_->kind(); }
  std::size_t input_dim() const override { return inner_->input_dim(); }
  Eigen::VectorXd Gradient(const Eigen::VectorXd& x) const override { return inner_->Gradient(x); }

  std::uint64_t rows_evaluated() const { return rows_.load(); }
  void Reset() { rows_ = 0; }

 private:
  std::shared_ptr<const PredictiveFunction> inner_;
  mutable std::atomic<std::uint64_t> rows_{0};
};

// The scalar that explainers and metrics see for one explained instance.
// Regression: the raw output. Classification: the probability of the class
// the model predicts at the anchor point, held fixed for every input.
class InstanceFunction {
 public:
  InstanceFunction(const PredictiveFunction& model, const Eigen::VectorXd& anchor);

  Eigen::VectorXd operator()(const data::DenseMatrix& x) const;
  double operator()(const Eigen::VectorXd& x) const;
  Eigen::VectorXd Gradient(const Eigen::VectorXd& x) const;

  int anchored_class() const { return anchored_class_; }
  const PredictiveFunction& model() const { return *model_; }

 private:
  const PredictiveFunction* model_;
  int anchored_class_ = -1;  // -1 for regression
};

struct TrainOptions {
  std::size_t hidden_width = 100;
  std::size_t max_epochs = 200;
  std::uint64_t seed = 0;
  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  double validation_fraction = 0.1;
  std::size_t patience = 10;
};

struct TrainReport {
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  // Entry 0 is the loss before any update; entry e is after epoch e.
  std::vector<double> train_loss;
  std::vector<double> validation_loss;
};

// Adam on mini-batches, early-stopped on a held-out validation split. The
// parameters with the best validation loss are returned.
std::unique_ptr<Mlp> TrainMlp(const data::Dataset& ds, const TrainOptions& options, TrainReport* report = nullptr);

// Versioned binary container: magic, version, JSON header, raw doubles.
void SaveModel(const PredictiveFunction& model, const std::string& path);
std::unique_ptr<PredictiveFunction> LoadModel(const std::string& path);

}  // namespace xaiselect::models

#endif  // XAISELECT_MODELS_H_

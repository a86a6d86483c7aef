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

#include "xaiselect/models.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>

#include "json.hpp"

namespace xaiselect::models {
namespace {

using data::DenseMatrix;

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

constexpr char kMagic[8] = {'X', 'S', 'M', 'O', 'D', 'E', 'L', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

void WriteDoubles(std::ofstream& out, const double* values, std::size_t count) {
  out.write(reinterpret_cast<const char*>(values), static_cast<std::streamsize>(count * sizeof(double)));
}

void ReadDoubles(std::ifstream& in, double* values, std::size_t count, const std::string& path) {
  in.read(reinterpret_cast<char*>(values), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw InvalidInput(path + ": truncated model payload");
}

}  // namespace

std::string ToString(ModelKind kind) {
  switch (kind) {
    case ModelKind::kMlp: return "mlp";
    case ModelKind::kLinear: return "linear";
    case ModelKind::kLogistic: return "logistic";
    case ModelKind::kExternal: return "external";
  }
  return "unknown";
}

Eigen::VectorXd PredictiveFunction::Gradient(const Eigen::VectorXd&) const {
  throw InvalidInput("model kind '" + ToString(kind()) + "' has no analytic gradient");
}

double PredictiveFunction::PredictOne(const Eigen::VectorXd& x) const {
  DenseMatrix row = x.transpose();
  return Predict(row)[0];
}

Eigen::VectorXd LinearModel::Predict(const DenseMatrix& x) const {
  return (x * weights_).array() + bias_;
}

Eigen::VectorXd LinearModel::Gradient(const Eigen::VectorXd&) const { return weights_; }

Eigen::VectorXd LogisticModel::Predict(const DenseMatrix& x) const {
  Eigen::VectorXd z = (x * weights_).array() + bias_;
  return z.unaryExpr(&Sigmoid);
}

Eigen::VectorXd LogisticModel::Gradient(const Eigen::VectorXd& x) const {
  const double p = Sigmoid(x.dot(weights_) + bias_);
  return p * (1.0 - p) * weights_;
}

Mlp::Mlp(MlpParameters params) : params_(std::move(params)) {
  const auto h = params_.hidden_weights.rows();
  if (params_.hidden_bias.size() != h || params_.output_weights.size() != h) {
    throw InvalidInput("MLP parameter shapes are inconsistent");
  }
  if (!params_.hidden_weights.allFinite() || !params_.output_weights.allFinite()) {
    throw InvalidInput("MLP parameters must be finite");
  }
}

Eigen::VectorXd Mlp::Predict(const DenseMatrix& x) const {
  if (static_cast<std::size_t>(x.cols()) != input_dim()) {
    throw InvalidInput("MLP expects " + std::to_string(input_dim()) + " features, got " + std::to_string(x.cols()));
  }
  // Row at a time: the hidden layer is narrow, so blocked GEMM only adds packing cost.
  Eigen::VectorXd z(x.rows());
  Eigen::VectorXd pre(params_.hidden_bias.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    pre.noalias() = params_.hidden_weights * x.row(i).transpose();
    pre += params_.hidden_bias;
    z[i] = pre.cwiseMax(0.0).dot(params_.output_weights) + params_.output_bias;
  }
  if (params_.task == Task::kClassification) return z.unaryExpr(&Sigmoid);
  return (z.array() * params_.output_scale + params_.output_offset).matrix();
}

Eigen::VectorXd Mlp::Gradient(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd pre = params_.hidden_weights * x + params_.hidden_bias;
  Eigen::VectorXd upstream = params_.output_weights;
  for (Eigen::Index k = 0; k < pre.size(); ++k) {
    if (pre[k] <= 0) upstream[k] = 0.0;
  }
  Eigen::VectorXd grad = params_.hidden_weights.transpose() * upstream;
  if (params_.task == Task::kClassification) {
    const double z = pre.cwiseMax(0.0).dot(params_.output_weights) + params_.output_bias;
    const double p = Sigmoid(z);
    return p * (1.0 - p) * grad;
  }
  return params_.output_scale * grad;
}

Eigen::VectorXd ExternalPredictions::Predict(const DenseMatrix&) const {
  throw InvalidInput("external predictions serve row lookups only and cannot be evaluated at new points");
}

double ExternalPredictions::Lookup(std::size_t row) const {
  if (row >= values_.size()) throw InvalidInput("external prediction row out of range: " + std::to_string(row));
  return values_[row];
}

Eigen::VectorXd CountingModel::Predict(const DenseMatrix& x) const {
  rows_ += static_cast<std::uint64_t>(x.rows());
  return inner_->Predict(x);
}

InstanceFunction::InstanceFunction(const PredictiveFunction& model, const Eigen::VectorXd& anchor) : model_(&model) {
  if (model.task() == Task::kClassification) anchored_class_ = model.PredictOne(anchor) >= 0.5 ? 1 : 0;
}

Eigen::VectorXd InstanceFunction::operator()(const DenseMatrix& x) const {
  Eigen::VectorXd p = model_->Predict(x);
  if (anchored_class_ == 0) p = (1.0 - p.array()).matrix();
  return p;
}

double InstanceFunction::operator()(const Eigen::VectorXd& x) const {
  const double p = model_->PredictOne(x);
  return anchored_class_ == 0 ? 1.0 - p : p;
}

Eigen::VectorXd InstanceFunction::Gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = model_->Gradient(x);
  if (anchored_class_ == 0) g = -g;
  return g;
}

namespace {

struct Batch {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
};

class AdamState {
 public:
  explicit AdamState(const MlpParameters& p)
      : m_w1_(Eigen::MatrixXd::Zero(p.hidden_weights.rows(), p.hidden_weights.cols())),
        v_w1_(m_w1_),
        m_b1_(Eigen::VectorXd::Zero(p.hidden_bias.size())),
        v_b1_(m_b1_),
        m_w2_(Eigen::VectorXd::Zero(p.output_weights.size())),
        v_w2_(m_w2_) {}

  void Step(MlpParameters* p, const Eigen::MatrixXd& g_w1, const Eigen::VectorXd& g_b1, const Eigen::VectorXd& g_w2,
            double g_b2, double lr) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
      m = kBeta1 * m + (1.0 - kBeta1) * g;
      v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
      param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + kEps);
    };
    update(p->hidden_weights, m_w1_, v_w1_, g_w1);
    update(p->hidden_bias, m_b1_, v_b1_, g_b1);
    update(p->output_weights, m_w2_, v_w2_, g_w2);
    m_b2_ = kBeta1 * m_b2_ + (1.0 - kBeta1) * g_b2;
    v_b2_ = kBeta2 * v_b2_ + (1.0 - kBeta2) * g_b2 * g_b2;
    p->output_bias -= lr * (m_b2_ / c1) / (std::sqrt(v_b2_ / c2) + kEps);
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;
  Eigen::MatrixXd m_w1_, v_w1_;
  Eigen::VectorXd m_b1_, v_b1_, m_w2_, v_w2_;
  double m_b2_ = 0.0, v_b2_ = 0.0;
  long t_ = 0;
};

// Output pre-activation for a batch; fills `hidden_pre` for backprop.
Eigen::VectorXd Forward(const MlpParameters& p, const Eigen::MatrixXd& x, Eigen::MatrixXd* hidden_pre) {
  *hidden_pre = (x * p.hidden_weights.transpose()).rowwise() + p.hidden_bias.transpose();
  return (hidden_pre->cwiseMax(0.0) * p.output_weights).array() + p.output_bias;
}

// Loss on the training scale: MSE of standardized targets, or log-loss.
double Loss(const MlpParameters& p, const Batch& b) {
  Eigen::MatrixXd pre;
  const Eigen::VectorXd z = Forward(p, b.x, &pre);
  if (p.task == Task::kRegression) return (z - b.y).squaredNorm() / static_cast<double>(b.y.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    // log(1 + e^{-|z|}) form avoids overflow.
    const double lz = std::max(z[i], 0.0) - z[i] * b.y[i] + std::log1p(std::exp(-std::abs(z[i])));
    total += lz;
  }
  return total / static_cast<double>(z.size());
}

Batch Gather(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<std::size_t>& idx, std::size_t begin,
             std::size_t end) {
  Batch b{Eigen::MatrixXd(static_cast<Eigen::Index>(end - begin), x.cols()),
          Eigen::VectorXd(static_cast<Eigen::Index>(end - begin))};
  for (std::size_t i = begin; i < end; ++i) {
    b.x.row(static_cast<Eigen::Index>(i - begin)) = x.row(static_cast<Eigen::Index>(idx[i]));
    b.y[static_cast<Eigen::Index>(i - begin)] = y[static_cast<Eigen::Index>(idx[i])];
  }
  return b;
}

}  // namespace

std::unique_ptr<Mlp> TrainMlp(const data::Dataset& ds, const TrainOptions& options, TrainReport* report) {
  const std::size_t n = ds.n();
  const std::size_t d = ds.d();
  if (n < 10) throw InvalidInput("MLP training needs at least 10 rows, got " + std::to_string(n));
  if (options.hidden_width == 0 || options.batch_size == 0) throw InvalidInput("MLP width and batch size must be > 0");

  const Eigen::MatrixXd x = ds.observations.ToDense();
  Eigen::VectorXd y = ds.labels;

  MlpParameters params;
  params.task = ds.task;
  params.seed = options.seed;
  if (ds.task == Task::kRegression) {
    params.output_offset = y.mean();
    const double sd = std::sqrt((y.array() - params.output_offset).square().mean());
    params.output_scale = sd > 0 ? sd : 1.0;
    y = (y.array() - params.output_offset) / params.output_scale;
  } else {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] != 0.0 && y[i] != 1.0) throw InvalidInput("MLP classification supports binary 0/1 labels only");
    }
  }

  std::mt19937_64 rng(options.seed);
  const auto h = static_cast<Eigen::Index>(options.hidden_width);
  const auto di = static_cast<Eigen::Index>(d);
  auto glorot = [&](Eigen::Index rows, Eigen::Index cols, double fan_in, double fan_out) {
    std::uniform_real_distribution<double> u(-std::sqrt(6.0 / (fan_in + fan_out)), std::sqrt(6.0 / (fan_in + fan_out)));
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = u(rng);
    }
    return m;
  };
  params.hidden_weights = glorot(h, di, static_cast<double>(d), static_cast<double>(h));
  params.hidden_bias = Eigen::VectorXd::Zero(h);
  params.output_weights = glorot(h, 1, static_cast<double>(h), 1.0).col(0);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t n_val = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(options.validation_fraction * n)));
  std::vector<std::size_t> val_idx(order.end() - static_cast<std::ptrdiff_t>(n_val), order.end());
  std::vector<std::size_t> train_idx(order.begin(), order.end() - static_cast<std::ptrdiff_t>(n_val));
  const Batch train_all = Gather(x, y, train_idx, 0, train_idx.size());
  const Batch val_all = Gather(x, y, val_idx, 0, val_idx.size());

  TrainReport local;
  TrainReport& rep = report ? *report : local;
  rep = TrainReport{};
  rep.train_loss.push_back(Loss(params, train_all));
  rep.validation_loss.push_back(Loss(params, val_all));

  AdamState adam(params);
  MlpParameters best = params;
  double best_val = rep.validation_loss.back();
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= options.max_epochs; ++epoch) {
    std::shuffle(train_idx.begin(), train_idx.end(), rng);
    for (std::size_t begin = 0; begin < train_idx.size(); begin += options.batch_size) {
      const std::size_t end = std::min(train_idx.size(), begin + options.batch_size);
      const Batch b = Gather(x, y, train_idx, begin, end);
      const double bn = static_cast<double>(end - begin);
      Eigen::MatrixXd pre;
      const Eigen::VectorXd z = Forward(params, b.x, &pre);
      Eigen::VectorXd g(z.size());
      if (params.task == Task::kRegression) {
        g = 2.0 * (z - b.y) / bn;
      } else {
        g = (z.unaryExpr(&Sigmoid) - b.y) / bn;
      }
      const Eigen::MatrixXd act = pre.cwiseMax(0.0);
      const Eigen::VectorXd g_w2 = act.transpose() * g;
      const double g_b2 = g.sum();
      Eigen::MatrixXd d_pre = g * params.output_weights.transpose();
      d_pre = d_pre.cwiseProduct((pre.array() > 0.0).cast<double>().matrix());
      const Eigen::MatrixXd g_w1 = d_pre.transpose() * b.x;
      const Eigen::VectorXd g_b1 = d_pre.colwise().sum().transpose();
      adam.Step(&params, g_w1, g_b1, g_w2, g_b2, options.learning_rate);
    }
    const double train_loss = Loss(params, train_all);
    const double val_loss = Loss(params, val_all);
    if (!std::isfinite(train_loss) || !std::isfinite(val_loss)) {
      throw ComputeFailure("MLP training diverged at epoch " + std::to_string(epoch));
    }
    rep.train_loss.push_back(train_loss);
    rep.validation_loss.push_back(val_loss);
    rep.epochs_run = epoch;
    if (val_loss < best_val) {
      best_val = val_loss;
      best = params;
      rep.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= options.patience) {
      break;
    }
  }
  return std::make_unique<Mlp>(std::move(best));
}

void SaveModel(const PredictiveFunction& model, const std::string& path) {
  nlohmann::json header;
  header["kind"] = ToString(model.kind());
  header["task"] = ToString(model.task());
  header["feature_count"] = model.input_dim();
  std::vector<double> payload;
  if (const auto* mlp = dynamic_cast<const Mlp*>(&model)) {
    const MlpParameters& p = mlp->parameters();
    header["hidden_width"] = p.width();
    header["seed"] = p.seed;
    header["output_bias"] = p.output_bias;
    header["output_offset"] = p.output_offset;
    header["output_scale"] = p.output_scale;
    // Row-major hidden weights, then hidden bias, then output weights.
    for (Eigen::Index i = 0; i < p.hidden_weights.rows(); ++i) {
      for (Eigen::Index j = 0; j < p.hidden_weights.cols(); ++j) payload.push_back(p.hidden_weights(i, j));
    }
    payload.insert(payload.end(), p.hidden_bias.data(), p.hidden_bias.data() + p.hidden_bias.size());
    payload.insert(payload.end(), p.output_weights.data(), p.output_weights.data() + p.output_weights.size());
  } else if (const auto* lin = dynamic_cast<const LinearModel*>(&model)) {
    header["bias"] = lin->bias();
    payload.assign(lin->weights().data(), lin->weights().data() + lin->weights().size());
  } else if (const auto* logit = dynamic_cast<const LogisticModel*>(&model)) {
    header["bias"] = logit->bias();
    payload.assign(logit->weights().data(), logit->weights().data() + logit->weights().size());
  } else {
    throw InvalidInput("model kind '" + ToString(model.kind()) + "' cannot be saved");
  }
  header["payload_doubles"] = payload.size();
  const std::string text = header.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write model file: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t version = kFormatVersion;
  const auto header_len = static_cast<std::uint32_t>(text.size());
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  out.write(reinterpret_cast<const char*>(&header_len), sizeof(header_len));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  WriteDoubles(out, payload.data(), payload.size());
  if (!out) throw InvalidInput("failed writing model file: " + path);
}

std::unique_ptr<PredictiveFunction> LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open model file: " + path);
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw InvalidInput(path + ": not a model file");
  std::uint32_t version = 0;
  std::uint32_t header_len = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&header_len), sizeof(header_len));
  if (!in || version != kFormatVersion) throw InvalidInput(path + ": unsupported model format version");
  std::string text(header_len, '\0');
  in.read(text.data(), header_len);
  if (!in) throw InvalidInput(path + ": truncated model header");
  const nlohmann::json header = nlohmann::json::parse(text);
  const std::string kind = header.at("kind");
  const auto d = header.at("feature_count").get<std::size_t>();
  const auto count = header.at("payload_doubles").get<std::size_t>();
  std::vector<double> payload(count);
  ReadDoubles(in, payload.data(), count, path);

  if (kind == "mlp") {
    MlpParameters p;
    const auto h = header.at("hidden_width").get<std::size_t>();
    if (count != h * d + 2 * h) throw InvalidInput(path + ": payload size does not match architecture");
    p.task = ParseTask(header.at("task"));
    p.seed = header.at("seed");
    p.output_bias = header.at("output_bias");
    p.output_offset = header.at("output_offset");
    p.output_scale = header.at("output_scale");
    p.hidden_weights.resize(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(d));
    std::size_t k = 0;
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < d; ++j) p.hidden_weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = payload[k++];
    }
    p.hidden_bias = Eigen::Map<const Eigen::VectorXd>(payload.data() + k, static_cast<Eigen::Index>(h));
    k += h;
    p.output_weights = Eigen::Map<const Eigen::VectorXd>(payload.data() + k, static_cast<Eigen::Index>(h));
    return std::make_unique<Mlp>(std::move(p));
  }
  if (count != d) throw InvalidInput(path + ": payload size does not match feature count");
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(payload.data(), static_cast<Eigen::Index>(d));
  const double bias = header.at("bias");
  if (kind == "linear") return std::make_unique<LinearModel>(std::move(w), bias);
  if (kind == "logistic") return std::make_unique<LogisticModel>(std::move(w), bias);
  throw InvalidInput(path + ": unknown model kind '" + kind + "'");
}

}  // namespace xaiselect::models

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

#include <random>

#include <benchmark/benchmark.h>

#include "xaiselect/dataset.h"
#include "xaiselect/explainers.h"
#include "xaiselect/gaussian_process.h"
#include "xaiselect/metrics.h"
#include "xaiselect/models.h"

namespace {

using namespace xaiselect;

const data::Dataset& Diabetes() {
  static const data::Dataset ds =
      data::Standardize(data::LoadCsv(std::string(XAISELECT_DATA_DIR) + "/diabetes.csv", "target", Task::kRegression));
  return ds;
}

const models::Mlp& DiabetesMlp() {
  static const auto mlp = [] {
    models::TrainOptions opts;
    opts.max_epochs = 50;
    return models::TrainMlp(Diabetes(), opts);
  }();
  return *mlp;
}

void BM_MlpPredict(benchmark::State& state) {
  const auto& mlp = DiabetesMlp();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  data::DenseMatrix x(state.range(0), static_cast<Eigen::Index>(Diabetes().d()));
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(mlp.Predict(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MlpPredict)->Arg(1)->Arg(5000);

void BM_LimeExplain(benchmark::State& state) {
  const auto& ds = Diabetes();
  const models::InstanceFunction f(DiabetesMlp(), ds.Row(0));
  explainers::LimeParams p;
  p.num_features = 5;
  p.num_perturbations = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(explainers::LimeExplainPoint(f, ds.Row(0), p, ++seed));
}
BENCHMARK(BM_LimeExplain)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_KernelShapExplain(benchmark::State& state) {
  const auto& ds = Diabetes();
  const models::InstanceFunction f(DiabetesMlp(), ds.Row(0));
  explainers::KernelShapParams p;
  p.num_coalitions = static_cast<std::size_t>(state.range(0));
  p.l1_mode = explainers::L1Mode::kAic;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(explainers::KernelShapExplainPoint(f, ds.Row(0), ds.feature_mean, p, ++seed));
  }
}
BENCHMARK(BM_KernelShapExplain)->Arg(500)->Arg(2068)->Unit(benchmark::kMillisecond);

void BM_Robustness(benchmark::State& state) {
  const auto& ds = Diabetes();
  const auto explain = explainers::MakePointExplainer(
      "lime", explainers::Describe("lime", explainers::DataShape{ds.n(), ds.d()}).space.Parse("num_perturbations=1000"),
      DiabetesMlp(), ds, 7);
  const std::vector<std::size_t> targets = {0, 1, 2, 3};
  auto fn = [&](std::size_t t, const Eigen::VectorXd& x) { return explain(t, x).weights; };
  for (auto _ : state) benchmark::DoNotOptimize(metrics::Robustness(fn, ds, targets, {}, 3));
}
BENCHMARK(BM_Robustness)->Unit(benchmark::kMillisecond);

void BM_Infidelity(benchmark::State& state) {
  const auto& ds = Diabetes();
  std::vector<std::size_t> targets(64);
  for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = i;
  const Eigen::VectorXd e = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(ds.d()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::Infidelity([&](std::size_t) { return e; }, DiabetesMlp(), ds, targets, {}, 3));
  }
}
BENCHMARK(BM_Infidelity)->Unit(benchmark::kMillisecond);

void BM_PamKMedoids(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  data::DenseMatrix x(state.range(0), 8);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
  data::Dataset ds;
  ds.observations = data::FeatureMatrix(x);
  ds.labels = Eigen::VectorXd::Zero(x.rows());
  explainers::KMedoidsParams p;
  p.algorithm = "pam";
  p.k = 8;
  for (auto _ : state) benchmark::DoNotOptimize(explainers::KMedoidsExplain(ds, p, 1));
}
BENCHMARK(BM_PamKMedoids)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_GpFitAndPropose(benchmark::State& state) {
  const HyperparameterSpace space({ParamDescriptor::Integer("a", 1, 10, 5), ParamDescriptor::Integer("b", 100, 10000, 5000),
                                   ParamDescriptor::Categorical("c", {"x", "y", "z"}, "x")});
  std::mt19937_64 rng(9);
  std::vector<Eigen::VectorXd> inputs;
  std::vector<double> targets;
  for (int i = 0; i < state.range(0); ++i) {
    inputs.push_back(hpo::Encode(space, hpo::RandomAssignment(space, rng)));
    targets.push_back(-inputs.back().squaredNorm());
  }
  for (auto _ : state) {
    const auto gp = hpo::GaussianProcess::Fit(inputs, targets);
    benchmark::DoNotOptimize(hpo::Propose(gp, space, inputs.front(), {}, rng));
  }
}
BENCHMARK(BM_GpFitAndPropose)->Arg(10)->Arg(26)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

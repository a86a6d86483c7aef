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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Pass criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.h"
#include "xaiselect/config.h"
#include "xaiselect/context.h"
#include "xaiselect/evaluator.h"
#include "xaiselect/explainers.h"
#include "xaiselect/hpo.h"
#include "xaiselect/metrics.h"
#include "xaiselect/pipeline.h"
#include "xaiselect/strategy_bench.h"

namespace xaiselect {
namespace {

namespace fs = std::filesystem;

const std::string kData = XAISELECT_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("xaiselect_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

data::Dataset GaussianData(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return testing::MakeDataset(data::DenseMatrix::NullaryExpr(static_cast<Eigen::Index>(n),
                                                             static_cast<Eigen::Index>(d), [&] { return g(rng); }));
}

std::vector<std::size_t> AllRows(const data::Dataset& ds) {
  std::vector<std::size_t> t(ds.n());
  std::iota(t.begin(), t.end(), 0);
  return t;
}

// ---------------------------------------------------------------------------

Outcome AggregationArithmetic() {
  struct Row {
    double aggregated;
    double scaled[3];
  };
  const Row attribution[] = {
      {1.023, {0.727, 0.833, 1.351}},   {1.019, {0.703, 0.991, 0.745}},    {0.963, {0.682, 1.068, 0.139}},
      {-0.287, {0.310, -0.924, 1.351}}, {-0.633, {-0.319, -0.975, 0.745}}, {-0.639, {0.014, -1.000, 0.139}},
  };
  const Row prototypes[] = {
      {0.483, {0.904, 0.248, -0.303}}, {0.466, {0.463, 0.412, 0.030}},  {0.384, {0.224, 0.201, 0.251}},
      {0.367, {-0.660, 0.589, 0.917}}, {0.331, {-0.444, 0.048, 0.917}}, {0.255, {-0.580, 0.092, 0.917}},
  };
  auto check = [](const Row* rows, const std::vector<std::string>& ids, const eval::PropertyWeights& w, int* ok,
                  double* worst) {
    for (int r = 0; r < 6; ++r) {
      eval::ScoreMap s;
      for (int q = 0; q < 3; ++q) s[ids[static_cast<std::size_t>(q)]] = rows[r].scaled[q];
      const double gap = std::abs(eval::Aggregate(s, w) - rows[r].aggregated);
      *worst = std::max(*worst, gap);
      *ok += gap <= 0.0015;
    }
  };
  int ok = 0;
  double worst = 0.0;
  check(attribution, {"robustness", "infidelity", "number_of_features"},
        {{"robustness", 1.0}, {"infidelity", 2.0}, {"number_of_features", 0.5}}, &ok, &worst);
  check(prototypes, {"non_representativeness", "diversity", "number_of_prototypes"},
        {{"non_representativeness", 2.0}, {"diversity", 1.0}, {"number_of_prototypes", 2.0}}, &ok, &worst);
  return {ok == 12, Fmt("%.0f/12 rows within 0.0015, largest gap %.4f", ok, worst)};
}

Eigen::VectorXd PermutationShapley(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& background) {
  std::vector<std::size_t> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(x.size());
  double orderings = 0;
  do {
    Eigen::VectorXd z = background;
    double prev = f(z);
    for (std::size_t j : order) {
      z[static_cast<Eigen::Index>(j)] = x[static_cast<Eigen::Index>(j)];
      const double cur = f(z);
      phi[static_cast<Eigen::Index>(j)] += cur - prev;
      prev = cur;
    }
    orderings += 1;
  } while (std::next_permutation(order.begin(), order.end()));
  return phi / orderings;
}

Outcome KernelShapExactness() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  double worst = 0.0;
  int full = 0;
  for (int m = 0; m < 20; ++m) {
    const int d = 1 + m % 5;
    const Eigen::VectorXd a = Eigen::VectorXd::NullaryExpr(d, [&] { return g(rng); });
    const Eigen::VectorXd c = Eigen::VectorXd::NullaryExpr(d, [&] { return g(rng); });
    const double b = g(rng);
    std::function<double(const Eigen::VectorXd&)> fn;
    if (m < 10) {
      fn = [a, b](const Eigen::VectorXd& v) { return a.dot(v) + b; };
    } else {
      fn = [a, c](const Eigen::VectorXd& v) { return (a.cwiseProduct(v) + c).prod(); };
    }
    const Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(d, [&] { return g(rng); });
    const Eigen::VectorXd bg = Eigen::VectorXd::NullaryExpr(d, [&] { return g(rng); });
    testing::FunctionModel model(static_cast<std::size_t>(d), fn);
    models::InstanceFunction f(model, x);
    const auto e = explainers::KernelShapExplainPoint(f, x, bg, explainers::KernelShapParams{}, 1);
    full += e.note.find("coalitions=full") != std::string::npos;
    worst = std::max(worst, (e.weights - PermutationShapley(fn, x, bg)).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-6 && full == 20,
          Fmt("20 models (10 linear, 10 product), d=1..5, %.0f fully enumerated, max |error| %.2e", full, worst)};
}

Outcome InfidelityNullCase() {
  std::mt19937_64 rng(31);
  const data::Dataset ds = GaussianData(200, 6, rng);
  const Eigen::VectorXd w = (Eigen::VectorXd(6) << 1.5, -2.0, 0.3, 0.0, 4.0, -0.7).finished();
  const models::LinearModel model(w, 0.7);
  const metrics::AttributionProvider gradient = [&](std::size_t t) { return model.Gradient(ds.Row(t)); };
  const auto r = metrics::Infidelity(gradient, model, ds, AllRows(ds), metrics::InfidelityParams{}, 5);
  const double worst = *std::max_element(r.per_item_scores.begin(), r.per_item_scores.end());
  return {r.per_item_scores.size() == 200 && worst < 1e-12,
          Fmt("%.0f targets, largest infidelity %.2e", static_cast<double>(r.per_item_scores.size()), worst)};
}

Outcome RobustnessCalibration() {
  std::mt19937_64 rng(41);
  const data::Dataset ds = GaussianData(30, 2, rng);
  const auto rows = AllRows(ds);
  const metrics::ExplanationFn identity = [](std::size_t, const Eigen::VectorXd& x) { return x; };
  const metrics::ExplanationFn constant = [](std::size_t, const Eigen::VectorXd&) {
    return Eigen::Vector2d(0.3, -1.2).eval();
  };
  const metrics::ExplanationFn diag = [](std::size_t, const Eigen::VectorXd& x) {
    return Eigen::Vector2d(3.0 * x[0], x[1]).eval();
  };
  double id_gap = 0.0;
  for (double s : metrics::Robustness(identity, ds, rows, {}, 1).per_item_scores) id_gap = std::max(id_gap, std::abs(s - 1));
  const double const_score = metrics::Robustness(constant, ds, rows, {}, 2).aggregate;
  metrics::RobustnessParams p;
  p.candidates_per_point = 200;
  const auto d = metrics::Robustness(diag, ds, rows, p, 3).per_item_scores;
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  return {id_gap <= 1e-9 && const_score == 0.0 && *lo >= 2.5 && *hi <= 3.0,
          Fmt("identity |L-1| <= %.1e, constant %.3g, diag(3,1) in [%.4f, %.4f]", id_gap, const_score, *lo, *hi)};
}

double Distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, bool cosine) {
  double dot = 0, na = 0, nb = 0, sq = 0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    dot += a[j] * b[j];
    na += a[j] * a[j];
    nb += b[j] * b[j];
    sq += (a[j] - b[j]) * (a[j] - b[j]);
  }
  if (!cosine) return std::sqrt(sq);
  if (na == 0 && nb == 0) return 0;
  if (na == 0 || nb == 0) return 1;
  return std::max(0.0, 1 - dot / std::sqrt(na * nb));
}

Outcome PrototypeOracles() {
  std::mt19937_64 rng(51);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 19;
    const data::Dataset ds = GaussianData(n, 4, rng);
    std::vector<std::size_t> rows = AllRows(ds);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(1 + static_cast<std::size_t>(trial) % n);
    explainers::PrototypeSet protos;
    protos.indices = rows;
    for (bool cosine : {false, true}) {
      const auto metric = cosine ? explainers::DistanceMetric::kCosine : explainers::DistanceMetric::kEuclidean;
      double nr = 0;
      for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t p : rows) best = std::min(best, Distance(ds.Row(i), ds.Row(p), cosine));
        nr += best;
      }
      nr /= static_cast<double>(n);
      double div = 0, pairs = 0;
      for (std::size_t a : rows) {
        for (std::size_t b : rows) {
          if (a == b) continue;
          div += Distance(ds.Row(a), ds.Row(b), cosine);
          pairs += 1;
        }
      }
      div = pairs > 0 ? div / pairs : 0.0;
      worst = std::max(worst, std::abs(metrics::NonRepresentativeness(protos, ds, metric).aggregate - nr));
      worst = std::max(worst, std::abs(metrics::Diversity(protos, ds, metric).aggregate - div));
    }
  }

  int pam_match = 0;
  double pam_gap = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial) % 6;
    const data::Dataset ds = GaussianData(n, 3, rng);
    explainers::KMedoidsParams p;
    p.algorithm = "pam";
    p.k = 2;
    const auto s = explainers::KMedoidsExplain(ds, p, static_cast<std::uint64_t>(trial));
    const Eigen::MatrixXd dist = explainers::PairwiseDistances(ds.observations, explainers::DistanceMetric::kEuclidean);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        double c = 0;
        for (std::size_t i = 0; i < n; ++i) {
          c += std::min(dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)),
                        dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)));
        }
        best = std::min(best, c);
      }
    }
    const double gap = explainers::MedoidCost(dist, s.indices) - best;
    pam_gap = std::max(pam_gap, gap);
    // Tied medoid pairs can differ in summation order only.
    pam_match += gap <= 1e-12 * std::max(1.0, best);
  }
  return {worst <= 1e-9 && pam_match == 50,
          Fmt("NR/diversity max |error| %.2e over 50 instances; PAM k=2 matched the exhaustive cost on %.0f/50 "
              "(largest excess %.4f)",
              worst, pam_match, pam_gap)};
}

Outcome BoConvergence() {
  explainers::ExplainerDescriptor desc;
  desc.id = "quadratic";
  desc.display_name = "Quadratic";
  desc.space = HyperparameterSpace({ParamDescriptor::Continuous("x", 0.0, 1.0, 0.5)});
  const eval::TrialEvaluator evaluate = [](const std::string&, const Assignment& h) {
    const double x = h.Real("x");
    // Diversity is a gain, so maximizing it maximizes -(x - 0.7)^2.
    return eval::TrialEvaluation{{{"diversity", -(x - 0.7) * (x - 0.7)}}, {}};
  };
  const eval::PropertyWeights w = {{"diversity", 1.0}};
  int hits = 0;
  std::size_t most = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto cold = eval::ColdStart({desc}, {"diversity"}, evaluate, w);
    std::vector<eval::TrialRecord> ledger = std::move(cold.trials);
    hpo::HpoOptions opt;
    opt.epochs = 19;
    opt.seed = seed;
    hpo::RunHpo(desc, ledger, cold.state, w, evaluate, opt);
    most = std::max(most, ledger.size());
    const double x = eval::Rank(ledger, false).front().hyperparameters.Real("x");
    hits += std::abs(x - 0.7) <= 0.05;
  }
  return {hits >= 18 && most <= 20,
          Fmt("%.0f/20 seeds within 0.05 of 0.7 using at most %.0f evaluations", hits, static_cast<double>(most))};
}

bool SameFiles(const fs::path& a, const fs::path& b, std::string* which) {
  for (const char* name : {"ranking.csv", "ranking.json", "per_item_scores.csv", "trials.jsonl"}) {
    if (ReadFile(a / name) != ReadFile(b / name)) {
      *which = name;
      return false;
    }
  }
  return true;
}

// report.md without its wall-clock line.
std::string StableReport(const fs::path& dir) {
  std::istringstream in(ReadFile(dir / "report.md"));
  std::string out, line;
  while (std::getline(in, line)) {
    if (line.find("wall time") == std::string::npos) out += line + "\n";
  }
  return out;
}

Outcome EndToEnd() {
  const fs::path dir = FreshDir("use_case_1");
  config::RunConfig cfg = config::LoadConfig(kData + "/configs/use_case_1.json");
  cfg.output_dir = (dir / "run").string();
  const auto t0 = std::chrono::steady_clock::now();
  const pipeline::RunReport first = pipeline::Run(cfg);
  const double first_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fs::copy(dir / "run", dir / "first", fs::copy_options::recursive);
  const pipeline::RunReport second = pipeline::Run(cfg);

  std::string differs;
  bool identical = SameFiles(dir / "first", dir / "run", &differs);
  if (identical && StableReport(dir / "first") != StableReport(dir / "run")) {
    identical = false;
    differs = "report.md";
  }

  const pipeline::Workspace ws = pipeline::Prepare(cfg);
  std::size_t out_of_domain = 0;
  std::set<std::pair<std::string, std::int64_t>> sizes;
  std::set<std::string> ranked;
  bool unique_sizes = true;
  for (const auto& t : first.ranking) {
    try {
      pipeline::DescribeFor(t.solution_id, ws).space.Check(t.hyperparameters);
    } catch (const Error&) {
      ++out_of_domain;
    }
    unique_sizes &= sizes.insert({t.solution_id, t.explanation_size}).second;
    ranked.insert(t.solution_id);
  }
  const bool both = ranked.count("lime") && ranked.count("kernel_shap");
  std::string detail = std::to_string(first.trials.size()) + " trials, " + std::to_string(first.ranking.size()) +
                       " per-size rows (" + (both ? "both solutions" : "missing a solution") + "), " +
                       std::to_string(out_of_domain) + " out of domain, " +
                       (identical ? "outputs byte-identical across runs" : differs + " differs between runs") +
                       Fmt(", first run %.0f s", first_seconds);
  if (!first.ranking.empty()) {
    const auto& best = first.ranking.front();
    detail += ", best " + best.display_name + " [" + FormatValues(best.hyperparameters) + "]";
  }
  return {identical && out_of_domain == 0 && both && unique_sizes && second.trials.size() == first.trials.size(),
          detail};
}

Outcome TimeSavings() {
  const config::RunConfig cfg = config::LoadConfig(kData + "/configs/use_case_1.json");
  const pipeline::Workspace ws = pipeline::Prepare(cfg);
  bench::BenchOptions options = bench::DefaultBenchOptions(ws, "lime", cfg.seed);
  options.robustness = cfg.robustness;
  options.infidelity = cfg.infidelity;
  const bench::BenchResult r = bench::RunStrategyBench(ws, options);
  std::printf("%s", r.Table().c_str());
  const double es_saved = r.TimeSaved("robustness", "early_stopping");
  const double none_score = r.Find("robustness", "none").score;
  const double drift = std::abs(r.Find("robustness", "early_stopping").score - none_score) / std::abs(none_score);
  const auto& inf_none = r.Find("infidelity", "none");
  const auto& inf_shared = r.Find("infidelity", "information_sharing");
  const double eliminated =
      1.0 - static_cast<double>(inf_shared.model_rows) / static_cast<double>(std::max<std::uint64_t>(1, inf_none.model_rows));
  const double score_gap = std::abs(inf_shared.score - inf_none.score);
  const double both_saved = r.TimeSaved("robustness", "both");
  const bool pass = es_saved >= 0.8 && drift <= 0.1 && eliminated >= 0.9 && score_gap <= 1e-12 && both_saved >= 0.9;
  return {pass, Fmt("early stopping saved %.1f%% (drift %.1f%%); sharing removed %.1f%% of infidelity model rows ",
                    100 * es_saved, 100 * drift, 100 * eliminated) +
                    Fmt("(score gap %.1e); both saved %.1f%%", score_gap, 100 * both_saved)};
}

Outcome ContextFiltering() {
  const context::Registry registry = context::Registry::LoadDefault();
  const auto attribution = context::MakeShortlist(
      {"why-this-prediction", "feature-summary", {{"robustness", 1}, {"infidelity", 2}, {"number_of_features", 0.5}}},
      registry);
  const auto prototypes = context::MakeShortlist(
      {"what-data-lead", "data-point",
       {{"non_representativeness", 2}, {"diversity", 1}, {"number_of_prototypes", 2}}},
      registry);
  using Ids = std::vector<std::string>;
  const bool shortlists = attribution.explainers == Ids{"lime", "kernel_shap"} &&
            attribution.metrics == Ids{"robustness", "infidelity", "number_of_features"} &&
            prototypes.explainers == Ids{"kmedoids", "mmd_critic", "protodash"} &&
            prototypes.metrics == Ids{"non_representativeness", "diversity", "number_of_prototypes"};
  const auto zeroed = context::MakeShortlist(
      {"why-this-prediction", "feature-summary", {{"robustness", 1}, {"infidelity", 0}, {"number_of_features", 0.5}}},
      registry);
  const bool dropped = zeroed.metrics == Ids{"robustness", "number_of_features"} && !zeroed.weights.count("infidelity");

  // Permuting a zero-weight metric's raw scores across trials moves nothing.
  std::mt19937_64 rng(91);
  std::normal_distribution<double> g;
  const eval::PropertyWeights w = {{"robustness", 1.0}, {"infidelity", 0.0}, {"number_of_features", 0.5}};
  std::vector<eval::TrialRecord> trials(60);
  for (std::size_t i = 0; i < trials.size(); ++i) {
    trials[i].trial_id = i;
    trials[i].solution_id = i % 2 ? "lime" : "kernel_shap";
    trials[i].explanation_size = static_cast<std::int64_t>(1 + i % 6);
    trials[i].raw = {{"robustness", std::abs(g(rng))}, {"infidelity", std::abs(g(rng))},
                     {"number_of_features", static_cast<double>(1 + i % 6)}};
  }
  auto rank = [&](std::vector<eval::TrialRecord> ts) {
    eval::ScalingState state;
    for (const auto& t : ts) eval::ObserveTrial(state, t);
    eval::RescoreAll(ts, state, w);
    std::vector<std::pair<std::size_t, double>> out;
    for (const auto& t : eval::Rank(ts, false)) out.emplace_back(t.trial_id, t.aggregated);
    return out;
  };
  const auto base = rank(trials);
  int invariant = 0;
  for (int round = 0; round < 100; ++round) {
    std::vector<double> column;
    for (const auto& t : trials) column.push_back(t.raw.at("infidelity"));
    std::shuffle(column.begin(), column.end(), rng);
    auto permuted = trials;
    for (std::size_t i = 0; i < permuted.size(); ++i) permuted[i].raw["infidelity"] = column[i];
    invariant += rank(permuted) == base;
  }
  const bool ok = shortlists && dropped && invariant == 100;
  return {ok, std::string("use-case shortlists ") + (shortlists ? "as expected" : "differ") +
                  ", zero weight " + (dropped ? "drops the metric" : "keeps the metric") +
                  Fmt(", ranking unchanged under %.0f/100 permutations", invariant)};
}

config::RunConfig StrategiesOff(config::RunConfig cfg) {
  cfg.strategies = config::StrategySpec{};
  return cfg;
}

// Every strategy switched on with thresholds that cannot be met. Robustness
// maxima sharing has no such threshold: a warm start changes the searched
// points, so it stays off in both arms.
config::RunConfig StrategiesNeverFire(config::RunConfig cfg) {
  cfg.strategies = config::StrategySpec{};
  cfg.strategies.sampling = true;
  cfg.strategies.sampling_fraction = 1.0;
  cfg.strategies.metric_early_stopping = true;
  cfg.strategies.metric_stop = savers::StopSettings::Never();
  cfg.strategies.hpo_early_stopping = true;
  cfg.strategies.hpo_stop = savers::StopSettings::Never();
  cfg.strategies.share_infidelity_perturbations = true;
  return cfg;
}

Outcome StrategiesOffEquivalence() {
  const fs::path dir = FreshDir("strategies");
  // Attribution: the first 30 rows of the bundled data, since every row is
  // explained on every trial once sampling is off.
  {
    std::ifstream in(kData + "/diabetes.csv");
    std::ofstream out(dir / "slice.csv");
    std::string line;
    for (int i = 0; i <= 30 && std::getline(in, line); ++i) out << line << "\n";
  }
  config::RunConfig uc1 = config::LoadConfig(kData + "/configs/use_case_1.json");
  uc1.dataset.path = (dir / "slice.csv").string();
  uc1.epochs = 8;
  const config::RunConfig uc2 = config::LoadConfig(kData + "/configs/use_case_2.json");

  std::string detail;
  bool pass = true;
  for (const auto& [name, base] : {std::pair{std::string("attribution (30 rows, 8 epochs)"), uc1},
                                   std::pair{std::string("prototypes (bundled, 25 epochs)"), uc2}}) {
    config::RunConfig off = StrategiesOff(base);
    config::RunConfig never = StrategiesNeverFire(base);
    off.output_dir = (dir / (name.substr(0, 5) + "_off")).string();
    never.output_dir = (dir / (name.substr(0, 5) + "_never")).string();
    const auto a = pipeline::Run(off);
    const auto b = pipeline::Run(never);
    std::string differs;
    const bool same = SameFiles(off.output_dir, never.output_dir, &differs);
    pass = pass && same && a.trials.size() == b.trials.size();
    if (!detail.empty()) detail += "; ";
    detail += name + ": " + std::to_string(a.trials.size()) + " trials, " +
              (same ? "bit-identical" : differs + " differs");
  }
  return {pass, detail};
}

struct Criterion {
  int number;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace xaiselect

int main(int argc, char** argv) {
  using xaiselect::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "aggregation arithmetic", xaiselect::AggregationArithmetic},
      {2, "kernel SHAP exactness", xaiselect::KernelShapExactness},
      {3, "infidelity null case", xaiselect::InfidelityNullCase},
      {4, "robustness calibration", xaiselect::RobustnessCalibration},
      {5, "prototype metric oracles", xaiselect::PrototypeOracles},
      {6, "BO convergence", xaiselect::BoConvergence},
      {7, "end-to-end determinism and shape", xaiselect::EndToEnd},
      {8, "time-saving effectiveness", xaiselect::TimeSavings},
      {9, "context filtering", xaiselect::ContextFiltering},
      {10, "strategies-off equivalence", xaiselect::StrategiesOffEquivalence},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    xaiselect::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("criterion %2d %-34s %s  %s [%.2f s]\n", c.number, c.title, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

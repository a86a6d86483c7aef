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

#include "xaiselect/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "xaiselect/report.h"

namespace xaiselect::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

template <typename F>
auto Stage(const std::string& name, F&& fn) -> decltype(fn()) {
  const std::string prefix = "stage '" + name + "': ";
  try {
    return fn();
  } catch (const context::EmptyShortlist& e) {
    throw context::EmptyShortlist(prefix + e.what(), e.suggestions());
  } catch (const InvalidInput& e) {
    throw InvalidInput(prefix + e.what());
  } catch (const ComputeFailure& e) {
    throw ComputeFailure(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

std::vector<std::size_t> AllRows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

std::string Fixed(double v, const char* fmt = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

Workspace Prepare(const config::RunConfig& cfg) {
  Workspace ws;
  const auto& spec = cfg.dataset;
  if (spec.kind == "csv") {
    ws.dataset = data::LoadCsv(spec.path, spec.target_column, spec.task);
  } else {
    const std::vector<std::string> docs = data::ReadLines(spec.path);
    ws.dataset = data::TfidfVectorize(docs, spec.min_doc_freq);
    const std::vector<double> labels = data::LoadColumn(spec.labels_path);
    if (labels.size() != docs.size()) {
      throw InvalidInput(spec.labels_path + ": " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(docs.size()) + " documents");
    }
    ws.dataset.labels = Eigen::Map<const Eigen::VectorXd>(labels.data(), static_cast<Eigen::Index>(labels.size()));
    ws.dataset.task = spec.task;
  }
  if (spec.standardize) ws.dataset = data::Standardize(ws.dataset);
  ws.dataset.Validate();

  std::shared_ptr<const models::PredictiveFunction> inner;
  const auto& m = cfg.model;
  if (m.kind == "mlp") {
    models::TrainOptions opts;
    opts.hidden_width = m.hidden_width;
    opts.max_epochs = m.max_epochs;
    opts.seed = m.seed;
    models::TrainReport report;
    inner = models::TrainMlp(ws.dataset, opts, &report);
    ws.training = std::move(report);
  } else if (m.kind == "file") {
    inner = models::LoadModel(m.path);
    if (inner->input_dim() != ws.dataset.d()) {
      throw InvalidInput(m.path + ": model expects " + std::to_string(inner->input_dim()) + " features, dataset has " +
                         std::to_string(ws.dataset.d()));
    }
  } else if (m.kind == "external") {
    std::vector<double> values = data::LoadColumn(m.path);
    if (values.size() != ws.dataset.n()) {
      throw InvalidInput(m.path + ": " + std::to_string(values.size()) + " predictions for " +
                         std::to_string(ws.dataset.n()) + " rows");
    }
    ws.predictions = values;
    inner = std::make_shared<models::ExternalPredictions>(std::move(values), ws.dataset.task);
  }
  if (inner) ws.model = std::make_shared<models::CountingModel>(inner);

  if (ws.predictions.empty() && inner && inner->task() == Task::kClassification) {
    const Eigen::VectorXd p = inner->Predict(ws.dataset.observations.ToDense());
    for (Eigen::Index i = 0; i < p.size(); ++i) ws.predictions.push_back(p[i] >= 0.5 ? 1.0 : 0.0);
  }
  if (ws.dataset.task == Task::kClassification && !ws.predictions.empty()) {
    try {
      ws.split = data::MakeConfusionSplit(ws.dataset.labels, ws.predictions);
    } catch (const InvalidInput&) {
      if (cfg.confusion_cell != "all") throw;
    }
  }
  if (cfg.confusion_cell == "all") {
    ws.subset_rows = AllRows(ws.dataset.n());
  } else {
    if (!ws.split) {
      throw InvalidInput("confusion_cell '" + cfg.confusion_cell +
                         "' needs binary labels and a classifier or external predictions");
    }
    ws.subset_rows = ws.split->Cell(cfg.confusion_cell);
  }
  ws.subset = ws.dataset.Subset(ws.subset_rows);
  if (ws.model) ws.model->Reset();
  return ws;
}

explainers::ExplainerDescriptor DescribeFor(const std::string& solution_id, const Workspace& ws) {
  const auto nominal = explainers::Describe(solution_id);
  if (nominal.family == explainers::Family::kAttribution) {
    return explainers::Describe(solution_id, explainers::DataShape{ws.dataset.n(), ws.dataset.d()});
  }
  return explainers::Describe(solution_id, explainers::DataShape{ws.subset.n(), ws.subset.d()});
}

TrialRunner::TrialRunner(const Workspace& ws, const config::RunConfig& cfg, std::vector<std::string> metric_ids)
    : ws_(ws), cfg_(cfg), metric_ids_(std::move(metric_ids)) {
  const std::size_t n = ws_.dataset.n();
  targets_ = cfg_.strategies.sampling
                 ? savers::SampleTargets(n, cfg_.strategies.sampling_fraction, MixSeed(cfg_.seed, 0x7461726765ULL))
                 : AllRows(n);
  if (!cfg_.prototype_distance.empty()) {
    distance_ = explainers::ParseDistance(cfg_.prototype_distance);
  } else {
    distance_ = cfg_.dataset.kind == "text" ? explainers::DistanceMetric::kCosine : explainers::DistanceMetric::kEuclidean;
  }
  stats_.population = n;
  stats_.targets = targets_.size();
}

void TrialRunner::Replay(const std::string& solution_id, const eval::TrialEvaluation& evaluation) {
  if (!cfg_.strategies.share_robustness_maxima) return;
  auto it = evaluation.details.find("robustness");
  if (it == evaluation.details.end()) return;
  const metrics::MetricResult& r = it->second;
  const std::size_t n = std::min({r.item_points.size(), r.item_targets.size(), r.per_item_scores.size()});
  for (std::size_t i = 0; i < n; ++i) {
    if (r.item_points[i].size() == 0) continue;
    robustness_cache_.PutIfBetter(solution_id, r.item_targets[i], {r.item_points[i], r.per_item_scores[i]});
  }
}

StrategyStats TrialRunner::stats() const {
  StrategyStats s = stats_;
  s.robustness_cache = robustness_cache_.stats();
  s.infidelity_cache = infidelity_cache_.stats();
  s.model_rows_evaluated = ws_.model ? ws_.model->rows_evaluated() : 0;
  return s;
}

void TrialRunner::Account(const metrics::MetricResult& r, std::size_t available) {
  stats_.items_evaluated[r.metric_id] += r.items_evaluated;
  stats_.items_available[r.metric_id] += available;
  if (r.stopped_early) ++stats_.early_stops[r.metric_id];
}

eval::TrialEvaluation TrialRunner::Evaluate(const std::string& solution_id, const Assignment& h) {
  const auto start = std::chrono::steady_clock::now();
  const auto desc = DescribeFor(solution_id, ws_);
  desc.space.Check(h);
  eval::TrialEvaluation ev = desc.family == explainers::Family::kAttribution ? EvaluateAttribution(solution_id, h)
                                                                            : EvaluatePrototypes(solution_id, h);
  for (const auto& [id, r] : ev.details) {
    if (!std::isfinite(r.aggregate)) throw ComputeFailure(id + " produced a non-finite score");
    ev.raw[id] = r.aggregate;
  }
  stats_.metric_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ev;
}

eval::TrialEvaluation TrialRunner::EvaluateAttribution(const std::string& solution_id, const Assignment& h) {
  if (!ws_.model || ws_.model->kind() == models::ModelKind::kExternal) {
    throw InvalidInput(solution_id + " needs a model that can be evaluated on new points");
  }
  const data::Dataset& ds = ws_.dataset;
  const explainers::PointExplainer explain = explainers::MakePointExplainer(solution_id, h, *ws_.model, ds, cfg_.seed);
  std::map<std::size_t, explainers::FeatureAttribution> memo;
  auto at_target = [&](std::size_t t) -> const explainers::FeatureAttribution& {
    auto it = memo.find(t);
    if (it == memo.end()) it = memo.emplace(t, explain(t, ds.Row(t))).first;
    return it->second;
  };

  eval::TrialEvaluation ev;
  for (const auto& id : metric_ids_) {
    std::optional<savers::StopController> stop;
    if (cfg_.strategies.metric_early_stopping) stop.emplace(cfg_.strategies.metric_stop);
    savers::StopController* stopper = stop ? &*stop : nullptr;
    metrics::MetricResult r;
    if (id == "robustness") {
      auto fn = [&](std::size_t t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
        if (x == ds.Row(t)) return at_target(t).weights;
        return explain(t, x).weights;
      };
      r = metrics::Robustness(fn, ds, targets_, cfg_.robustness, cfg_.seed,
                              cfg_.strategies.share_robustness_maxima ? &robustness_cache_ : nullptr, solution_id,
                              stopper);
    } else if (id == "infidelity") {
      r = metrics::Infidelity([&](std::size_t t) { return at_target(t).weights; }, *ws_.model, ds, targets_,
                              cfg_.infidelity, cfg_.seed,
                              cfg_.strategies.share_infidelity_perturbations ? &infidelity_cache_ : nullptr, stopper);
    } else if (id == "number_of_features") {
      r = metrics::NumberOfFeatures([&](std::size_t t) { return at_target(t).size(); }, targets_, stopper);
    } else {
      throw InvalidInput("metric '" + id + "' does not apply to feature attributions");
    }
    Account(r, targets_.size());
    ev.details[id] = std::move(r);
  }
  return ev;
}

eval::TrialEvaluation TrialRunner::EvaluatePrototypes(const std::string& solution_id, const Assignment& h) {
  const explainers::PrototypeSet set = explainers::ExplainPrototypes(solution_id, h, ws_.subset, cfg_.seed);
  eval::TrialEvaluation ev;
  for (const auto& id : metric_ids_) {
    metrics::MetricResult r;
    if (id == "non_representativeness") {
      r = metrics::NonRepresentativeness(set, ws_.subset, distance_);
    } else if (id == "diversity") {
      r = metrics::Diversity(set, ws_.subset, distance_);
    } else if (id == "number_of_prototypes") {
      r = metrics::NumberOfPrototypes(set);
    } else {
      throw InvalidInput("metric '" + id + "' does not apply to prototypes");
    }
    if (set.truncated) r.note += (r.note.empty() ? "" : "; ") + std::string("prototype set truncated");
    Account(r, 1);
    ev.details[id] = std::move(r);
  }
  return ev;
}

std::vector<std::string> DecisionLog(const config::RunConfig& cfg) {
  const auto& s = cfg.strategies;
  std::vector<std::string> log = {
      "classifier output fed to metrics: probability of the class predicted at the explained row",
      "MLP: one ReLU hidden layer, Glorot-uniform init, Adam (lr 1e-3, batch 32), 10% validation split, patience 10",
      "LIME: Gaussian samples of unit variance around the row, kernel width 0.75*sqrt(d), ridge penalty 1.0, "
      "refit on the selected features",
      "Kernel SHAP: background = feature means; coalitions fully enumerated when num_coalitions >= 2^d - 2, "
      "otherwise sampled without replacement; sum constraint f(x) - f(background) solved exactly",
      "Kernel SHAP l1_mode auto: aic when coalitions are sampled, no selection under full enumeration",
      "robustness: randomized box search, half-width one feature std, " +
          std::to_string(cfg.robustness.candidates_per_point) + " uniform candidates + " +
          std::to_string(cfg.robustness.refine_rounds) + " refine rounds of " +
          std::to_string(cfg.robustness.refine_samples) + " (shrink " + Fixed(cfg.robustness.shrink) + ")",
      "infidelity: " + std::to_string(cfg.infidelity.num_perturbations) + " uniform perturbations of half-width " +
          Fixed(cfg.infidelity.noise_half_width) + " * feature std",
      "dataset-level score of per-item metrics = mean of the per-item scores",
      "prototype metric distance: " +
          (cfg.prototype_distance.empty() ? std::string(cfg.dataset.kind == "text" ? "cosine" : "euclidean")
                                          : cfg.prototype_distance),
      "diversity of a single prototype defined as 0",
      "scaling: z-score against the pool of all orientation-adjusted raw scores of the run, seeded by cold start; "
      "every trial is rescored each epoch",
      "aggregation: (1/c') * sum of weight * scaled score over positively weighted metrics",
      "HPO: one GP per solution, isotropic squared-exponential kernel, length scale by max marginal likelihood over "
      "{0.05, 0.1, 0.2, 0.4, 0.8, 1.6}, expected improvement (xi 0.01) over 512 random + 32 local candidates",
      "HPO: first " + std::to_string(cfg.random_epochs) + " epochs after cold start sample uniformly; " +
          std::to_string(cfg.epochs) + " epochs per solution",
      "failed trials are excluded from the GP and never re-proposed",
      std::string("sampling: ") + (s.sampling ? "on, fraction " + Fixed(s.sampling_fraction) : "off"),
      std::string("metric early stopping: ") +
          (s.metric_early_stopping ? "on, threshold " + Fixed(s.metric_stop.relative_threshold) + ", patience " +
                                         std::to_string(s.metric_stop.patience) + ", min samples " +
                                         std::to_string(s.metric_stop.min_samples)
                                   : "off"),
      std::string("HPO early stopping: ") +
          (s.hpo_early_stopping ? "on, threshold " + Fixed(s.hpo_stop.relative_threshold) + ", patience " +
                                      std::to_string(s.hpo_stop.patience) + ", min samples " +
                                      std::to_string(s.hpo_stop.min_samples)
                                : "off"),
      std::string("information sharing: robustness maxima ") + (s.share_robustness_maxima ? "on" : "off") +
          ", infidelity perturbations " + (s.share_infidelity_perturbations ? "on" : "off"),
      std::string("ranking: aggregated score descending, ties to the smaller explanation then solution id; ") +
          (cfg.per_size_rows ? "best row per explanation size" : "all trials"),
  };
  return log;
}

RunReport Run(const config::RunConfig& cfg, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.config = cfg;
  rep.decision_log = DecisionLog(cfg);
  auto say = [&](const std::string& line) {
    if (options.progress) *options.progress << line << '\n' << std::flush;
  };

  const context::Registry registry = Stage("registry", [&] {
    return cfg.registry_path.empty() ? context::Registry::LoadDefault() : context::Registry::Load(cfg.registry_path);
  });
  const context::Shortlist shortlist = Stage("context", [&] {
    context::Shortlist sl = context::MakeShortlist({cfg.explanandum, cfg.explanan, cfg.weights}, registry);
    if (sl.empty()) {
      throw context::EmptyShortlist("no compatible solution for (" + cfg.explanandum + ", " + cfg.explanan + "); " +
                                        context::DescribeSuggestions(sl.suggestions),
                                    sl.suggestions);
    }
    return sl;
  });
  rep.solutions = shortlist.explainers;
  rep.metrics = shortlist.metrics;
  rep.weights = shortlist.weights;
  say("shortlist: " + std::to_string(rep.solutions.size()) + " solutions, " + std::to_string(rep.metrics.size()) +
      " metrics");

  const Workspace ws = Stage("data", [&] { return Prepare(cfg); });
  say("data: " + std::to_string(ws.dataset.n()) + " rows, " + std::to_string(ws.dataset.d()) + " features");
  std::vector<explainers::ExplainerDescriptor> descriptors = Stage("context", [&] {
    std::vector<explainers::ExplainerDescriptor> out;
    for (const auto& id : rep.solutions) out.push_back(DescribeFor(id, ws));
    return out;
  });

  TrialRunner runner(ws, cfg, rep.metrics);

  std::map<std::string, std::deque<eval::TrialEvaluation>> replay;
  const fs::path out_dir(cfg.output_dir);
  const fs::path audit_path = out_dir / "trials.jsonl";
  if (options.resume && fs::exists(audit_path)) {
    for (auto& [rec, ev] : report::ReadTrialLog(audit_path.string())) {
      if (!rec.failed) replay[rec.solution_id + "|" + FormatValues(rec.hyperparameters)].push_back(std::move(ev));
    }
  }
  std::ofstream audit;
  if (options.write_outputs) {
    Stage("report", [&] {
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      audit.open(audit_path, std::ios::trunc);
      if (!audit) throw InvalidInput("cannot write " + audit_path.string());
      return 0;
    });
  }

  eval::TrialEvaluator evaluate = [&](const std::string& id, const Assignment& h) {
    auto it = replay.find(id + "|" + FormatValues(h));
    if (it != replay.end() && !it->second.empty()) {
      eval::TrialEvaluation ev = std::move(it->second.front());
      it->second.pop_front();
      ++rep.replayed_trials;
      runner.Replay(id, ev);
      return ev;
    }
    return runner.Evaluate(id, h);
  };
  auto on_trial = [&](const eval::TrialRecord& rec, const eval::TrialEvaluation& ev) {
    if (rep.evaluations.size() <= rec.trial_id) rep.evaluations.resize(rec.trial_id + 1);
    rep.evaluations[rec.trial_id] = ev;
    if (audit.is_open()) audit << report::TrialJsonLine(rec, ev) << '\n' << std::flush;
    say("trial " + std::to_string(rec.trial_id) + " " + rec.solution_id + " [" + FormatValues(rec.hyperparameters) +
        "] " + (rec.failed ? "failed: " + rec.error : "A=" + Fixed(rec.aggregated, "%.4f")));
  };

  eval::ColdStartResult cold = Stage("cold start", [&] {
    return eval::ColdStart(descriptors, rep.metrics, evaluate, rep.weights, on_trial);
  });
  rep.cold_start_failures = cold.failures;
  std::vector<eval::TrialRecord> ledger = std::move(cold.trials);
  eval::ScalingState state = std::move(cold.state);

  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    const auto& desc = descriptors[i];
    const bool survived = std::any_of(ledger.begin(), ledger.end(),
                                      [&](const eval::TrialRecord& t) { return t.solution_id == desc.id; });
    if (!survived) continue;
    hpo::HpoOptions opts;
    opts.epochs = cfg.epochs;
    opts.random_epochs = cfg.random_epochs;
    opts.seed = MixSeed(cfg.seed, 0x68706f00ULL + i);
    if (cfg.strategies.hpo_early_stopping) opts.early_stopping = cfg.strategies.hpo_stop;
    rep.hpo[desc.id] = Stage("hpo " + desc.id, [&] {
      return hpo::RunHpo(desc, ledger, state, rep.weights, evaluate, opts, on_trial);
    });
  }

  eval::RescoreAll(ledger, state, rep.weights);
  rep.ranking = eval::Rank(ledger, cfg.per_size_rows);
  for (const auto& id : rep.metrics) rep.scaling[id] = state.StatsFor(id);
  rep.trials = std::move(ledger);
  rep.evaluations.resize(rep.trials.size());
  rep.strategies = runner.stats();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (options.write_outputs) {
    audit.close();
    Stage("report", [&] {
      report::WriteOutputs(rep, cfg.output_dir);
      return 0;
    });
  }
  return rep;
}

ExplainOutput ExplainWith(const Workspace& ws, const config::RunConfig& cfg, const std::string& solution_id,
                          const Assignment& h, const std::vector<std::size_t>& targets, std::size_t top_k) {
  const auto desc = DescribeFor(solution_id, ws);
  desc.space.Check(h);
  ExplainOutput out;
  std::ostringstream text;
  const std::string hp = FormatValues(h);

  if (desc.family == explainers::Family::kAttribution) {
    if (!ws.model || ws.model->kind() == models::ModelKind::kExternal) {
      throw InvalidInput(solution_id + " needs a model that can be evaluated on new points");
    }
    if (targets.empty()) throw InvalidInput("explain: no target rows given");
    const auto explain = explainers::MakePointExplainer(solution_id, h, *ws.model, ws.dataset, cfg.seed);
    for (std::size_t t : targets) {
      if (t >= ws.dataset.n()) throw InvalidInput("explain: row " + std::to_string(t) + " is out of range");
      const Eigen::VectorXd x = ws.dataset.Row(t);
      const explainers::FeatureAttribution e = explain(t, x);
      json features = json::array();
      for (std::size_t j : e.selected_features) {
        features.push_back({{"feature", ws.dataset.feature_names[j]}, {"index", j}, {"weight", e.weights[static_cast<Eigen::Index>(j)]}});
      }
      json rec = {{"solution", solution_id}, {"hyperparameters", hp}, {"target", t},
                  {"prediction", ws.model->PredictOne(x)}, {"features", features}};
      if (!e.note.empty()) rec["note"] = e.note;
      out.jsonl += rec.dump() + "\n";

      text << desc.display_name << " [" << hp << "] row " << t << " (prediction " << Fixed(ws.model->PredictOne(x))
           << ")\n";
      const std::size_t shown = std::min(top_k, e.selected_features.size());
      for (std::size_t i = 0; i < shown; ++i) {
        const std::size_t j = e.selected_features[i];
        char line[160];
        std::snprintf(line, sizeof(line), "  %-24s %+.4f\n", ws.dataset.feature_names[j].c_str(),
                      e.weights[static_cast<Eigen::Index>(j)]);
        text << line;
      }
      if (shown == 0) text << "  (no features selected)\n";
    }
  } else {
    const explainers::PrototypeSet set = explainers::ExplainPrototypes(solution_id, h, ws.subset, cfg.seed);
    json protos = json::array();
    text << desc.display_name << " [" << hp << "] " << set.size() << " prototypes of " << ws.subset.n() << " rows ("
         << cfg.confusion_cell << ")" << (set.truncated ? ", truncated" : "") << "\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
      const std::size_t local = set.indices[i];
      const std::size_t row = ws.subset_rows[local];
      json p = {{"row", row}};
      if (!set.weights.empty()) p["weight"] = set.weights[i];
      std::string rendering;
      if (!ws.dataset.row_text.empty()) {
        rendering = ws.dataset.row_text[row];
        p["text"] = rendering;
      } else {
        const Eigen::VectorXd v = ws.dataset.Unstandardize(ws.dataset.Row(row));
        json values = json::object();
        for (Eigen::Index j = 0; j < v.size(); ++j) {
          values[ws.dataset.feature_names[static_cast<std::size_t>(j)]] = v[j];
          if (j) rendering += ", ";
          rendering += ws.dataset.feature_names[static_cast<std::size_t>(j)] + "=" + Fixed(v[j]);
        }
        p["values"] = values;
      }
      protos.push_back(p);
      text << "  row " << row;
      if (!set.weights.empty()) text << " (weight " << Fixed(set.weights[i]) << ")";
      text << ": " << rendering << "\n";
    }
    json rec = {{"solution", solution_id}, {"hyperparameters", hp}, {"cell", cfg.confusion_cell},
                {"truncated", set.truncated}, {"prototypes", protos}};
    out.jsonl = rec.dump() + "\n";
  }
  out.text = text.str();
  return out;
}

}  // namespace xaiselect::pipeline

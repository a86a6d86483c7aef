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

#include "xaiselect/config.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace xaiselect::config {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class Reader {
 public:
  Reader(const json& obj, std::string where, std::string source) : obj_(obj), where_(std::move(where)), source_(std::move(source)) {
    if (!obj_.is_object()) Fail("must be an object");
  }

  void AllowOnly(std::initializer_list<const char*> keys) const {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : obj_.items()) {
      if (!allowed.count(item.key())) Fail("unknown key '" + item.key() + "'");
    }
  }

  bool Has(const char* key) const { return obj_.contains(key); }

  std::string String(const char* key, const std::string& def, bool required = false) const {
    if (!obj_.contains(key)) {
      if (required) Fail(std::string("missing required key '") + key + "'");
      return def;
    }
    if (!obj_[key].is_string()) Fail(std::string("'") + key + "' must be a string");
    return obj_[key].get<std::string>();
  }

  double Number(const char* key, double def) const {
    if (!obj_.contains(key)) return def;
    if (!obj_[key].is_number()) Fail(std::string("'") + key + "' must be a number");
    return obj_[key].get<double>();
  }

  std::uint64_t Count(const char* key, std::uint64_t def) const {
    if (!obj_.contains(key)) return def;
    if (!obj_[key].is_number_integer() || obj_[key].get<std::int64_t>() < 0) {
      Fail(std::string("'") + key + "' must be a nonnegative integer");
    }
    return obj_[key].get<std::uint64_t>();
  }

  bool Bool(const char* key, bool def) const {
    if (!obj_.contains(key)) return def;
    if (!obj_[key].is_boolean()) Fail(std::string("'") + key + "' must be true or false");
    return obj_[key].get<bool>();
  }

  Reader Child(const char* key) const { return Reader(obj_[key], where_ + "." + key, source_); }
  const json& raw(const char* key) const { return obj_[key]; }

  [[noreturn]] void Fail(const std::string& message) const {
    throw InvalidInput(source_ + ": " + where_ + ": " + message);
  }

 private:
  const json& obj_;
  std::string where_;
  std::string source_;
};

std::string Resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

savers::StopSettings ReadStop(const Reader& r, savers::StopSettings def) {
  r.AllowOnly({"enabled", "relative_threshold", "patience", "min_samples"});
  savers::StopSettings s;
  s.relative_threshold = r.Number("relative_threshold", def.relative_threshold);
  s.patience = r.Count("patience", def.patience);
  s.min_samples = r.Count("min_samples", def.min_samples);
  if (s.relative_threshold < 0) r.Fail("relative_threshold must be >= 0");
  if (s.patience < 1) r.Fail("patience must be >= 1");
  return s;
}

json StopJson(bool enabled, const savers::StopSettings& s) {
  return {{"enabled", enabled},
          {"relative_threshold", s.relative_threshold},
          {"patience", s.patience},
          {"min_samples", s.min_samples}};
}

}  // namespace

RunConfig ParseConfig(const std::string& json_text, const std::string& base_dir, const std::string& source) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(source + ": " + e.what());
  }
  Reader top(root, "config", source);
  top.AllowOnly({"dataset", "model", "context", "confusion_cell", "epochs", "random_epochs", "seed", "strategies",
                 "metrics", "per_size_rows", "output_dir", "registry"});
  RunConfig c;

  if (!top.Has("dataset")) top.Fail("missing required key 'dataset'");
  {
    Reader r = top.Child("dataset");
    r.AllowOnly({"kind", "path", "target_column", "task", "labels_path", "min_doc_freq", "standardize"});
    c.dataset.kind = r.String("kind", "csv");
    if (c.dataset.kind != "csv" && c.dataset.kind != "text") r.Fail("kind must be 'csv' or 'text'");
    c.dataset.path = Resolve(r.String("path", "", true), base_dir);
    c.dataset.task = ParseTask(r.String("task", c.dataset.kind == "text" ? "classification" : "regression"));
    c.dataset.standardize = r.Bool("standardize", c.dataset.kind == "csv");
    if (c.dataset.kind == "csv") {
      c.dataset.target_column = r.String("target_column", "", true);
    } else {
      c.dataset.labels_path = Resolve(r.String("labels_path", "", true), base_dir);
      c.dataset.min_doc_freq = r.Count("min_doc_freq", 1);
      if (c.dataset.min_doc_freq < 1) r.Fail("min_doc_freq must be >= 1");
    }
  }

  if (top.Has("model")) {
    Reader r = top.Child("model");
    r.AllowOnly({"kind", "path", "hidden_width", "max_epochs", "seed"});
    c.model.kind = r.String("kind", "mlp");
    if (c.model.kind != "mlp" && c.model.kind != "file" && c.model.kind != "external" && c.model.kind != "none") {
      r.Fail("kind must be one of mlp, file, external, none");
    }
    const bool needs_path = c.model.kind == "file" || c.model.kind == "external";
    c.model.path = Resolve(r.String("path", "", needs_path), base_dir);
    c.model.hidden_width = r.Count("hidden_width", c.model.hidden_width);
    c.model.max_epochs = r.Count("max_epochs", c.model.max_epochs);
    c.model.seed = r.Count("seed", c.model.seed);
    if (c.model.hidden_width < 1) r.Fail("hidden_width must be >= 1");
  }

  if (!top.Has("context")) top.Fail("missing required key 'context'");
  {
    Reader r = top.Child("context");
    r.AllowOnly({"explanandum", "explanan", "weights"});
    c.explanandum = r.String("explanandum", "", true);
    c.explanan = r.String("explanan", "", true);
    if (r.Has("weights")) {
      const json& w = r.raw("weights");
      if (!w.is_object()) r.Fail("weights must be an object of metric id -> number");
      for (const auto& item : w.items()) {
        if (!item.value().is_number()) r.Fail("weight '" + item.key() + "' must be a number");
        c.weights[item.key()] = item.value().get<double>();
      }
    }
  }

  c.confusion_cell = top.String("confusion_cell", "all");
  if (c.confusion_cell != "all" && c.confusion_cell != "true_positives" && c.confusion_cell != "true_negatives" &&
      c.confusion_cell != "false_positives" && c.confusion_cell != "false_negatives") {
    top.Fail("confusion_cell must be all, true_positives, true_negatives, false_positives or false_negatives");
  }
  c.epochs = top.Count("epochs", c.epochs);
  c.random_epochs = top.Count("random_epochs", c.random_epochs);
  c.seed = top.Count("seed", c.seed);
  c.per_size_rows = top.Bool("per_size_rows", c.per_size_rows);
  c.output_dir = Resolve(top.String("output_dir", c.output_dir), base_dir);
  c.registry_path = Resolve(top.String("registry", ""), base_dir);

  if (top.Has("strategies")) {
    Reader r = top.Child("strategies");
    r.AllowOnly({"sampling", "early_stopping", "information_sharing"});
    if (r.Has("sampling")) {
      Reader s = r.Child("sampling");
      s.AllowOnly({"enabled", "fraction"});
      c.strategies.sampling = s.Bool("enabled", true);
      c.strategies.sampling_fraction = s.Number("fraction", 1.0);
      if (!(c.strategies.sampling_fraction > 0.0 && c.strategies.sampling_fraction <= 1.0)) {
        s.Fail("fraction must lie in (0, 1]");
      }
    }
    if (r.Has("early_stopping")) {
      Reader s = r.Child("early_stopping");
      s.AllowOnly({"metric", "hpo"});
      if (s.Has("metric")) {
        Reader m = s.Child("metric");
        c.strategies.metric_early_stopping = m.Bool("enabled", true);
        c.strategies.metric_stop = ReadStop(m, savers::StopSettings::MetricDefaults());
      }
      if (s.Has("hpo")) {
        Reader m = s.Child("hpo");
        c.strategies.hpo_early_stopping = m.Bool("enabled", true);
        c.strategies.hpo_stop = ReadStop(m, savers::StopSettings::HpoDefaults());
      }
    }
    if (r.Has("information_sharing")) {
      Reader s = r.Child("information_sharing");
      s.AllowOnly({"robustness_maxima", "infidelity_perturbations"});
      c.strategies.share_robustness_maxima = s.Bool("robustness_maxima", false);
      c.strategies.share_infidelity_perturbations = s.Bool("infidelity_perturbations", false);
    }
  }

  if (top.Has("metrics")) {
    Reader r = top.Child("metrics");
    r.AllowOnly({"robustness", "infidelity", "prototype_distance"});
    if (r.Has("robustness")) {
      Reader s = r.Child("robustness");
      s.AllowOnly({"candidates_per_point", "refine_rounds", "refine_samples", "shrink", "warm_candidates"});
      c.robustness.candidates_per_point = s.Count("candidates_per_point", c.robustness.candidates_per_point);
      c.robustness.refine_rounds = s.Count("refine_rounds", c.robustness.refine_rounds);
      c.robustness.refine_samples = s.Count("refine_samples", c.robustness.refine_samples);
      c.robustness.shrink = s.Number("shrink", c.robustness.shrink);
      c.robustness.warm_candidates = s.Count("warm_candidates", c.robustness.warm_candidates);
      if (c.robustness.candidates_per_point < 1) s.Fail("candidates_per_point must be >= 1");
      if (!(c.robustness.shrink > 0.0 && c.robustness.shrink <= 1.0)) s.Fail("shrink must lie in (0, 1]");
    }
    if (r.Has("infidelity")) {
      Reader s = r.Child("infidelity");
      s.AllowOnly({"num_perturbations", "noise_half_width"});
      c.infidelity.num_perturbations = s.Count("num_perturbations", c.infidelity.num_perturbations);
      c.infidelity.noise_half_width = s.Number("noise_half_width", c.infidelity.noise_half_width);
      if (c.infidelity.num_perturbations < 1) s.Fail("num_perturbations must be >= 1");
      if (!(c.infidelity.noise_half_width > 0.0)) s.Fail("noise_half_width must be > 0");
    }
    c.prototype_distance = r.String("prototype_distance", "");
    if (!c.prototype_distance.empty() && c.prototype_distance != "euclidean" && c.prototype_distance != "cosine") {
      r.Fail("prototype_distance must be euclidean or cosine");
    }
  }
  return c;
}

RunConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const fs::path parent = fs::path(path).parent_path();
  return ParseConfig(buf.str(), parent.empty() ? "." : parent.string(), path);
}

std::string ToJson(const RunConfig& c) {
  json dataset = {{"kind", c.dataset.kind}, {"path", c.dataset.path}, {"task", ToString(c.dataset.task)},
                  {"standardize", c.dataset.standardize}};
  if (c.dataset.kind == "csv") {
    dataset["target_column"] = c.dataset.target_column;
  } else {
    dataset["labels_path"] = c.dataset.labels_path;
    dataset["min_doc_freq"] = c.dataset.min_doc_freq;
  }
  json model = {{"kind", c.model.kind}};
  if (!c.model.path.empty()) model["path"] = c.model.path;
  if (c.model.kind == "mlp") {
    model["hidden_width"] = c.model.hidden_width;
    model["max_epochs"] = c.model.max_epochs;
    model["seed"] = c.model.seed;
  }
  json weights = json::object();
  for (const auto& [k, v] : c.weights) weights[k] = v;
  json root = {
      {"dataset", dataset},
      {"model", model},
      {"context", {{"explanandum", c.explanandum}, {"explanan", c.explanan}, {"weights", weights}}},
      {"confusion_cell", c.confusion_cell},
      {"epochs", c.epochs},
      {"random_epochs", c.random_epochs},
      {"seed", c.seed},
      {"per_size_rows", c.per_size_rows},
      {"output_dir", c.output_dir},
      {"strategies",
       {{"sampling", {{"enabled", c.strategies.sampling}, {"fraction", c.strategies.sampling_fraction}}},
        {"early_stopping",
         {{"metric", StopJson(c.strategies.metric_early_stopping, c.strategies.metric_stop)},
          {"hpo", StopJson(c.strategies.hpo_early_stopping, c.strategies.hpo_stop)}}},
        {"information_sharing",
         {{"robustness_maxima", c.strategies.share_robustness_maxima},
          {"infidelity_perturbations", c.strategies.share_infidelity_perturbations}}}}},
      {"metrics",
       {{"robustness",
         {{"candidates_per_point", c.robustness.candidates_per_point},
          {"refine_rounds", c.robustness.refine_rounds},
          {"refine_samples", c.robustness.refine_samples},
          {"shrink", c.robustness.shrink},
          {"warm_candidates", c.robustness.warm_candidates}}},
        {"infidelity",
         {{"num_perturbations", c.infidelity.num_perturbations},
          {"noise_half_width", c.infidelity.noise_half_width}}}}},
  };
  if (!c.prototype_distance.empty()) root["metrics"]["prototype_distance"] = c.prototype_distance;
  if (!c.registry_path.empty()) root["registry"] = c.registry_path;
  return root.dump(2) + "\n";
}

}  // namespace xaiselect::config

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

#ifndef XAISELECT_CONFIG_H_
#define XAISELECT_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "xaiselect/common.h"
#include "xaiselect/metrics.h"
#include "xaiselect/time_savers.h"

namespace xaiselect::config {

struct DatasetSpec {
  // "csv" for tabular data, "text" for one document per line.
  std::string kind = "csv";
  std::string path;
  std::string target_column;
  Task task = Task::kRegression;
  // Text corpora: one label per document (single-column CSV).
  std::string labels_path;
  std::size_t min_doc_freq = 1;
  bool standardize = true;
};

struct ModelSpec {
  // "mlp" trains a network, "file" loads a saved one, "external" reads
  // per-row predictions, "none" skips the model.
  std::string kind = "mlp";
  std::string path;
  std::size_t hidden_width = 100;
  std::size_t max_epochs = 200;
  std::uint64_t seed = 0;
};

struct StrategySpec {
  bool sampling = false;
  double sampling_fraction = 1.0;
  bool metric_early_stopping = false;
  savers::StopSettings metric_stop = savers::StopSettings::MetricDefaults();
  bool hpo_early_stopping = false;
  savers::StopSettings hpo_stop = savers::StopSettings::HpoDefaults();
  bool share_robustness_maxima = false;
  bool share_infidelity_perturbations = false;
};

struct RunConfig {
  DatasetSpec dataset;
  ModelSpec model;
  std::string explanandum;
  std::string explanan;
  std::map<std::string, double> weights;
  // Confusion cell explained by prototype solutions: true_positives,
  // true_negatives, false_positives, false_negatives, or "all".
  std::string confusion_cell = "all";
  std::size_t epochs = 25;
  std::size_t random_epochs = 3;
  std::uint64_t seed = 0;
  StrategySpec strategies;
  metrics::RobustnessParams robustness;
  metrics::InfidelityParams infidelity;
  // Distance for the prototype metrics; empty picks cosine for text and
  // euclidean otherwise.
  std::string prototype_distance;
  bool per_size_rows = true;
  std::string output_dir = "xaiselect_out";
  std::string registry_path;
};

// Parses and validates a config. Unknown keys anywhere are rejected.
// Relative paths resolve against `base_dir`.
RunConfig ParseConfig(const std::string& json_text, const std::string& base_dir = ".",
                      const std::string& source = "<config>");
RunConfig LoadConfig(const std::string& path);
std::string ToJson(const RunConfig& config);

}  // namespace xaiselect::config

#endif  // XAISELECT_CONFIG_H_

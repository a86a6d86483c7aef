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

#ifndef XAISELECT_TIME_SAVERS_H_
#define XAISELECT_TIME_SAVERS_H_

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace xaiselect::savers {

// ceil(fraction * n) distinct row indices, sorted. fraction == 1 returns
// every index in order. Throws InvalidInput unless 0 < fraction <= 1.
std::vector<std::size_t> SampleTargets(std::size_t n, double fraction, std::uint64_t seed);

enum class StopDecision { kContinue, kStop };

struct StopSettings {
  double relative_threshold = 0.005;
  std::size_t patience = 10;
  std::size_t min_samples = 20;

  static StopSettings MetricDefaults() { return {0.005, 10, 20}; }
  static StopSettings HpoDefaults() { return {0.001, 8, 5}; }
  // Thresholds that can never be met; the controller observes but never fires.
  static StopSettings Never() { return {0.0, 1, 0}; }
};

// Fires once a running statistic has moved by less than the relative
// threshold for `patience` consecutive observations past `min_samples`.
class StopController {
 public:
  explicit StopController(StopSettings settings = StopSettings::MetricDefaults());

  StopDecision Observe(double running_value);
  bool stopped() const { return stopped_; }
  std::size_t observations() const { return count_; }
  const StopSettings& settings() const { return settings_; }

 private:
  StopSettings settings_;
  std::size_t count_ = 0;
  std::size_t streak_ = 0;
  double previous_ = 0.0;
  bool stopped_ = false;
};

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t inserts = 0;
};

// Best robustness perturbation per (solution family, target), shared across
// hyperparameter trials of the same explainer.
class RobustnessMaximaCache {
 public:
  struct Entry {
    Eigen::VectorXd point;
    double ratio = 0.0;
  };

  std::optional<Entry> Get(const std::string& family, std::size_t target) const;
  // Keeps whichever of the stored and offered entries has the larger ratio.
  void PutIfBetter(const std::string& family, std::size_t target, Entry entry);
  CacheStats stats() const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::pair<std::string, std::size_t>, Entry> entries_;
  mutable CacheStats stats_;
  mutable std::mutex stats_mu_;
};

// Infidelity perturbations and the model values at them, per (target, seed).
class InfidelityPerturbationCache {
 public:
  struct Entry {
    std::vector<Eigen::VectorXd> perturbations;
    std::vector<double> perturbed_values;  // f(x - I)
    double value_at_x = 0.0;               // f(x)
  };

  std::optional<Entry> Get(std::size_t target, std::uint64_t seed) const;
  // Write-once: a second put for the same key is ignored.
  void PutIfAbsent(std::size_t target, std::uint64_t seed, Entry entry);
  CacheStats stats() const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::pair<std::size_t, std::uint64_t>, Entry> entries_;
  mutable CacheStats stats_;
  mutable std::mutex stats_mu_;
};

}  // namespace xaiselect::savers

#endif  // XAISELECT_TIME_SAVERS_H_

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

#include "xaiselect/time_savers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "xaiselect/common.h"

namespace xaiselect::savers {

std::vector<std::size_t> SampleTargets(std::size_t n, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw InvalidInput("sampling fraction must lie in (0, 1], got " + std::to_string(fraction));
  }
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (fraction == 1.0) return all;
  const auto count = std::min(n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

StopController::StopController(StopSettings settings) : settings_(settings) {
  if (settings_.patience == 0) throw InvalidInput("early stopping patience must be >= 1");
  if (settings_.relative_threshold < 0) throw InvalidInput("early stopping threshold must be >= 0");
}

StopDecision StopController::Observe(double running_value) {
  if (stopped_) return StopDecision::kStop;
  ++count_;
  if (count_ > 1 && count_ > settings_.min_samples) {
    const double change = std::abs(running_value - previous_) / std::max(std::abs(previous_), 1e-12);
    streak_ = change < settings_.relative_threshold ? streak_ + 1 : 0;
  }
  previous_ = running_value;
  if (streak_ >= settings_.patience) stopped_ = true;
  return stopped_ ? StopDecision::kStop : StopDecision::kContinue;
}

std::optional<RobustnessMaximaCache::Entry> RobustnessMaximaCache::Get(const std::string& family,
                                                                        std::size_t target) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find({family, target});
  std::lock_guard stats_lock(stats_mu_);
  if (it == entries_.end()) {
    ++stats_.misses;
    return std::nullopt;
  }
  ++stats_.hits;
  return it->second;
}

void RobustnessMaximaCache::PutIfBetter(const std::string& family, std::size_t target, Entry entry) {
  std::unique_lock lock(mu_);
  auto [it, inserted] = entries_.try_emplace({family, target}, entry);
  if (!inserted && entry.ratio > it->second.ratio) it->second = std::move(entry);
  if (inserted) {
    std::lock_guard stats_lock(stats_mu_);
    ++stats_.inserts;
  }
}

CacheStats RobustnessMaximaCache::stats() const {
  std::lock_guard lock(stats_mu_);
  return stats_;
}

std::size_t RobustnessMaximaCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::optional<InfidelityPerturbationCache::Entry> InfidelityPerturbationCache::Get(std::size_t target,
                                                                                    std::uint64_t seed) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find({target, seed});
  std::lock_guard stats_lock(stats_mu_);
  if (it == entries_.end()) {
    ++stats_.misses;
    return std::nullopt;
  }
  ++stats_.hits;
  return it->second;
}

void InfidelityPerturbationCache::PutIfAbsent(std::size_t target, std::uint64_t seed, Entry entry) {
  std::unique_lock lock(mu_);
  if (entries_.try_emplace({target, seed}, std::move(entry)).second) {
    std::lock_guard stats_lock(stats_mu_);
    ++stats_.inserts;
  }
}

CacheStats InfidelityPerturbationCache::stats() const {
  std::lock_guard lock(stats_mu_);
  return stats_;
}

std::size_t InfidelityPerturbationCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

}  // namespace xaiselect::savers

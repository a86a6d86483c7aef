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

#ifndef XAISELECT_CONTEXT_H_
#define XAISELECT_CONTEXT_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xaiselect/common.h"
#include "xaiselect/evaluator.h"

namespace xaiselect::context {

struct Question {
  std::string id;
  std::string text;
};

struct ExplananType {
  std::string id;
  std::string label;
};

struct RegistryExplainer {
  std::string id;
  std::vector<std::string> explananda;
  std::vector<std::string> explanans;
};

struct RegistryMetric {
  std::string id;
  std::string explanan;
  std::string property;
};

// Curated correspondence between user needs and implemented solutions.
// Immutable once loaded.
class Registry {
 public:
  // Throws InvalidInput naming the offending entry when a tag reference
  // dangles, an id repeats, or an entry has no implementation.
  static Registry Parse(const std::string& json_text, const std::string& source = "<registry>");
  static Registry Load(const std::string& path);
  // The registry shipped in the data directory.
  static Registry LoadDefault();

  const std::vector<Question>& explananda() const { return explananda_; }
  const std::vector<ExplananType>& explanans() const { return explanans_; }
  const std::vector<RegistryExplainer>& explainers() const { return explainers_; }
  const std::vector<RegistryMetric>& metrics() const { return metrics_; }

  bool HasExplanandum(const std::string& id) const;
  bool HasExplanan(const std::string& id) const;

 private:
  std::vector<Question> explananda_;
  std::vector<ExplananType> explanans_;
  std::vector<RegistryExplainer> explainers_;
  std::vector<RegistryMetric> metrics_;
};

std::vector<Question> ListQuestions(const Registry& registry);
std::vector<ExplananType> ListExplanans(const Registry& registry);

// Missing metrics default to 1; negative, non-finite, unknown, or all-zero
// weights are rejected. The result covers every registry metric.
eval::PropertyWeights ValidateWeights(const std::map<std::string, double>& given, const Registry& registry);

struct ContextSpec {
  std::string explanandum_id;
  std::string explanan_id;
  std::map<std::string, double> weights;
};

struct Shortlist {
  std::vector<std::string> explainers;
  std::vector<std::string> metrics;
  // Restricted to the shortlisted metrics (all weights > 0).
  eval::PropertyWeights weights;
  // (explanandum, explanan) pairs that do have solutions; filled when the
  // shortlist is empty.
  std::vector<std::pair<std::string, std::string>> suggestions;

  bool empty() const { return explainers.empty() || metrics.empty(); }
};

// Explainers tagged with the (explanandum, explanan) pair and metrics of that
// explanan whose weight is positive, in registry order.
Shortlist MakeShortlist(const ContextSpec& ctx, const Registry& registry);

// Raised when a context has no compatible solution.
class EmptyShortlist : public Error {
 public:
  EmptyShortlist(const std::string& message, std::vector<std::pair<std::string, std::string>> suggestions)
      : Error(message), suggestions_(std::move(suggestions)) {}
  const std::vector<std::pair<std::string, std::string>>& suggestions() const { return suggestions_; }

 private:
  std::vector<std::pair<std::string, std::string>> suggestions_;
};

std::string DescribeSuggestions(const std::vector<std::pair<std::string, std::string>>& suggestions);

}  // namespace xaiselect::context

#endif  // XAISELECT_CONTEXT_H_

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


#include "xaiselect/context.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

namespace xaiselect::context {
namespace {

using Pair = std::pair<std::string, std::string>;

TEST(RegistryTest, BundledRegistryLoads) {
  const Registry r = Registry::LoadDefault();
  EXPECT_EQ(r.explainers().size(), 5u);
  EXPECT_EQ(r.metrics().size(), 6u);
  EXPECT_EQ(ListQuestions(r).front().id, "why-this-prediction");
  EXPECT_FALSE(ListQuestions(r).front().text.empty());
  EXPECT_EQ(ListExplanans(r).size(), 3u);
}

TEST(ShortlistTest, AttributionContextPicksLimeShapAndThreeMetrics) {
  const Registry r = Registry::LoadDefault();
  const Shortlist s = MakeShortlist(
      {"why-this-prediction", "feature-summary", {{"robustness", 1}, {"infidelity", 2}, {"number_of_features", 0.5}}},
      r);
  EXPECT_EQ(s.explainers, (std::vector<std::string>{"lime", "kernel_shap"}));
  EXPECT_EQ(s.metrics, (std::vector<std::string>{"robustness", "infidelity", "number_of_features"}));
  EXPECT_EQ(s.weights.at("infidelity"), 2.0);
  EXPECT_EQ(s.weights.size(), 3u);
  EXPECT_TRUE(s.suggestions.empty());
}

TEST(ShortlistTest, PrototypeContextPicksThreePrototypeMethods) {
  const Registry r = Registry::LoadDefault();
  const Shortlist s = MakeShortlist({"what-data-lead", "data-point", {}}, r);
  EXPECT_EQ(s.explainers, (std::vector<std::string>{"kmedoids", "mmd_critic", "protodash"}));
  EXPECT_EQ(s.metrics, (std::vector<std::string>{"non_representativeness", "diversity", "number_of_prototypes"}));
}

TEST(ShortlistTest, ZeroWeightDropsTheMetric) {
  const Registry r = Registry::LoadDefault();
  const Shortlist s = MakeShortlist({"why-this-prediction", "feature-summary", {{"number_of_features", 0.0}}}, r);
  EXPECT_EQ(s.metrics, (std::vector<std::string>{"robustness", "infidelity"}));
  EXPECT_EQ(s.weights.count("number_of_features"), 0u);
}

TEST(ShortlistTest, IncompatiblePairIsEmptyWithSuggestions) {
  const Registry r = Registry::LoadDefault();
  const Shortlist s = MakeShortlist({"why-this-prediction", "data-point", {}}, r);
  EXPECT_TRUE(s.empty());
  ASSERT_EQ(s.suggestions.size(), 2u);
  EXPECT_NE(DescribeSuggestions(s.suggestions).find("why-this-prediction"), std::string::npos);
  const Shortlist unanswered = MakeShortlist({"how-to-change", "model-internals", {}}, r);
  EXPECT_TRUE(unanswered.empty());
  EXPECT_EQ(unanswered.suggestions,
            (std::vector<Pair>{{"why-this-prediction", "feature-summary"}, {"what-data-lead", "data-point"}}));
}

TEST(ShortlistTest, ZeroingEveryMetricOfTheExplananEmptiesIt) {
  const Registry r = Registry::LoadDefault();
  const Shortlist s = MakeShortlist(
      {"why-this-prediction", "feature-summary", {{"robustness", 0}, {"infidelity", 0}, {"number_of_features", 0}}}, r);
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.suggestions, (std::vector<Pair>{{"what-data-lead", "data-point"}}));
}

TEST(ShortlistTest, UnknownTagsAreInvalidInput) {
  const Registry r = Registry::LoadDefault();
  EXPECT_THROW(MakeShortlist({"why-not", "feature-summary", {}}, r), InvalidInput);
  EXPECT_THROW(MakeShortlist({"why-this-prediction", "rules", {}}, r), InvalidInput);
}

TEST(WeightsTest, DefaultsAndValidation) {
  const Registry r = Registry::LoadDefault();
  const auto w = ValidateWeights({{"diversity", 3.0}}, r);
  EXPECT_EQ(w.size(), 6u);
  EXPECT_EQ(w.at("diversity"), 3.0);
  EXPECT_EQ(w.at("robustness"), 1.0);
  EXPECT_THROW(ValidateWeights({{"accuracy", 1.0}}, r), InvalidInput);
  EXPECT_THROW(ValidateWeights({{"diversity", -1.0}}, r), InvalidInput);
  EXPECT_THROW(ValidateWeights({{"diversity", std::numeric_limits<double>::infinity()}}, r), InvalidInput);
  EXPECT_THROW(ValidateWeights({{"diversity", NAN}}, r), InvalidInput);
  std::map<std::string, double> zeros;
  for (const auto& m : r.metrics()) zeros[m.id] = 0.0;
  EXPECT_THROW(ValidateWeights(zeros, r), InvalidInput);
}

constexpr const char* kMinimal = R"({
  "explananda": [{"id": "q", "question": "Q?"}],
  "explanans": [{"id": "feature-summary", "label": "F"}],
  "explainers": [{"id": "lime", "explananda": ["q"], "explanans": ["feature-summary"]}],
  "metrics": [{"id": "robustness", "explanan": "feature-summary", "property": "continuity"}]
})";

std::string Replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

void ExpectRejected(const std::string& json, const std::string& needle) {
  try {
    Registry::Parse(json, "test.json");
    ADD_FAILURE() << "accepted: " << json;
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(RegistryParseTest, AcceptsAMinimalRegistry) {
  const Registry r = Registry::Parse(kMinimal);
  EXPECT_TRUE(r.HasExplanandum("q"));
  EXPECT_FALSE(r.HasExplanan("data-point"));
}

TEST(RegistryParseTest, RejectsDanglingAndDuplicateEntries) {
  ExpectRejected(Replace(kMinimal, R"("explananda": ["q"])", R"("explananda": ["nope"])"), "nope");
  ExpectRejected(Replace(kMinimal, R"("explanan": "feature-summary")", R"("explanan": "data-point")"), "data-point");
  ExpectRejected(Replace(kMinimal, R"({"id": "q", "question": "Q?"})",
                         R"({"id": "q", "question": "Q?"}, {"id": "q", "question": "again"})"),
                 "q");
  ExpectRejected(Replace(kMinimal, R"("id": "lime")", R"("id": "anchors")"), "anchors");
  ExpectRejected(Replace(kMinimal, R"("id": "robustness")", R"("id": "accuracy")"), "accuracy");
  ExpectRejected(Replace(kMinimal, R"("property": "continuity")", R"("property": "correctness")"), "robustness");
  ExpectRejected(Replace(kMinimal, R"("property": "continuity")", R"("property": ["continuity", "correctness"])"),
                 "robustness");
  ExpectRejected("{ not json", "test.json");
}

}  // namespace
}  // namespace xaiselect::context

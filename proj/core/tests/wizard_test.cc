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


#include "xaiselect/wizard.h"

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

namespace xaiselect::wizard {
namespace {

namespace fs = std::filesystem;

struct Session {
  std::optional<config::RunConfig> cfg;
  std::string transcript;
  fs::path config_path;
};

Session RunSession(const std::string& answers, const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("xaiselect_wizard_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::istringstream in(answers);
  std::ostringstream out;
  WizardDefaults defaults;
  defaults.tabular_path = "/data/diabetes.csv";
  defaults.text_path = "/data/sms.txt";
  defaults.text_labels_path = "/data/labels.csv";
  defaults.text_predictions_path = "/data/predictions.csv";
  Session s;
  s.config_path = dir / "config.json";
  s.cfg = RunWizard(context::Registry::LoadDefault(), in, out, s.config_path.string(), defaults);
  s.transcript = out.str();
  return s;
}

TEST(WizardTest, AttributionHappyPathWritesConfig) {
  const Session s = RunSession("1\n1\n1\n2\n0.5\n3\n\n\nregression\n7\n/tmp/xaiselect_wizard_out\n", "happy");
  ASSERT_TRUE(s.cfg.has_value()) << s.transcript;
  EXPECT_EQ(s.cfg->explanandum, "why-this-prediction");
  EXPECT_EQ(s.cfg->explanan, "feature-summary");
  EXPECT_DOUBLE_EQ(s.cfg->weights.at("robustness"), 1.0);
  EXPECT_DOUBLE_EQ(s.cfg->weights.at("infidelity"), 2.0);
  EXPECT_DOUBLE_EQ(s.cfg->weights.at("number_of_features"), 0.5);
  EXPECT_EQ(s.cfg->epochs, 3u);
  EXPECT_EQ(s.cfg->dataset.path, "/data/diabetes.csv");
  EXPECT_EQ(s.cfg->dataset.target_column, "target");
  EXPECT_EQ(s.cfg->dataset.task, Task::kRegression);
  EXPECT_EQ(s.cfg->seed, 7u);
  EXPECT_EQ(s.cfg->output_dir, "/tmp/xaiselect_wizard_out");
  ASSERT_TRUE(fs::exists(s.config_path));
  const config::RunConfig reread = config::LoadConfig(s.config_path.string());
  EXPECT_EQ(config::ToJson(reread), config::ToJson(*s.cfg));
  EXPECT_NE(s.transcript.find("Compatible solutions: lime kernel_shap"), std::string::npos);
}

TEST(WizardTest, PrototypePathUsesTextDefaults) {
  const Session s = RunSession("2\n2\n2\n1\n2\n4\n\n\n\nbogus\nfalse_positives\n\n\n", "text");
  ASSERT_TRUE(s.cfg.has_value()) << s.transcript;
  EXPECT_EQ(s.cfg->explanan, "data-point");
  EXPECT_EQ(s.cfg->dataset.kind, "text");
  EXPECT_EQ(s.cfg->dataset.labels_path, "/data/labels.csv");
  EXPECT_EQ(s.cfg->model.kind, "external");
  EXPECT_EQ(s.cfg->model.path, "/data/predictions.csv");
  EXPECT_EQ(s.cfg->confusion_cell, "false_positives");
  EXPECT_NE(s.transcript.find("unknown cell"), std::string::npos);
}

TEST(WizardTest, InvalidAnswersArePromptedAgain) {
  const Session s = RunSession("abc\n9\n1\n1\n-1\nx\n0\n0\n0\n1\n1\n1\n3\n\n\nneither\nregression\n0\nout\n", "reprompt");
  ASSERT_TRUE(s.cfg.has_value()) << s.transcript;
  EXPECT_NE(s.transcript.find("please enter a number between 1 and 4"), std::string::npos);
  EXPECT_NE(s.transcript.find("please enter a number between 0 and"), std::string::npos);
  EXPECT_NE(s.transcript.find("at least one weight must be positive"), std::string::npos);
  EXPECT_NE(s.transcript.find("please answer regression or classification"), std::string::npos);
  EXPECT_DOUBLE_EQ(s.cfg->weights.at("robustness"), 1.0);
  EXPECT_TRUE(fs::path(s.cfg->output_dir).is_absolute());
}

TEST(WizardTest, IncompatiblePairWritesNothing) {
  const Session s = RunSession("1\n2\n", "incompatible");
  EXPECT_FALSE(s.cfg.has_value());
  EXPECT_FALSE(fs::exists(s.config_path));
  EXPECT_NE(s.transcript.find("No config written"), std::string::npos);
}

TEST(WizardTest, EndOfInputAborts) {
  const Session s = RunSession("1\n1\n1\n", "eof");
  EXPECT_FALSE(s.cfg.has_value());
  EXPECT_FALSE(fs::exists(s.config_path));
  EXPECT_NE(s.transcript.find("Aborted"), std::string::npos);
}

}  // namespace
}  // namespace xaiselect::wizard

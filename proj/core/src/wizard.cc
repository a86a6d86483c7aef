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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <istream>
#include <ostream>

#include "xaiselect/metrics.h"
#include "xaiselect/report.h"

namespace xaiselect::wizard {
namespace {

// Signals that the input ended before the wizard finished.
struct Aborted {};

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

class Prompter {
 public:
  Prompter(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::string Text(const std::string& question, const std::string& def) {
    out_ << question << " [" << def << "]: " << std::flush;
    std::string line;
    if (!std::getline(in_, line)) throw Aborted{};
    line = Trim(line);
    return line.empty() ? def : line;
  }

  double Number(const std::string& question, double def, double lo, double hi) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", def);
    for (;;) {
      const std::string answer = Text(question, buf);
      try {
        std::size_t used = 0;
        const double v = std::stod(answer, &used);
        if (used == answer.size() && std::isfinite(v) && v >= lo && v <= hi) return v;
      } catch (const std::exception&) {
      }
      out_ << "  please enter a number between " << lo << " and " << hi << "\n";
    }
  }

  std::size_t Choice(const std::string& question, std::size_t count) {
    for (;;) {
      const std::string answer = Text(question, "1");
      try {
        std::size_t used = 0;
        const long v = std::stol(answer, &used);
        if (used == answer.size() && v >= 1 && static_cast<std::size_t>(v) <= count) {
          return static_cast<std::size_t>(v - 1);
        }
      } catch (const std::exception&) {
      }
      out_ << "  please enter a number between 1 and " << count << "\n";
    }
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace

WizardDefaults WizardDefaults::Bundled() {
  WizardDefaults d;
#ifdef XAISELECT_DATA_DIR
  const std::string dir = XAISELECT_DATA_DIR;
  d.tabular_path = dir + "/diabetes.csv";
  d.text_path = dir + "/sms_like.txt";
  d.text_labels_path = dir + "/sms_like_labels.csv";
  d.text_predictions_path = dir + "/sms_like_predictions.csv";
#endif
  return d;
}

std::optional<config::RunConfig> RunWizard(const context::Registry& registry, std::istream& in, std::ostream& out,
                                           const std::string& output_path, const WizardDefaults& defaults) {
  Prompter ask(in, out);
  config::RunConfig cfg;
  try {
    const auto questions = context::ListQuestions(registry);
    out << "What should be explained?\n";
    for (std::size_t i = 0; i < questions.size(); ++i) out << "  " << i + 1 << ". " << questions[i].text << "\n";
    cfg.explanandum = questions[ask.Choice("Question", questions.size())].id;

    const auto explanans = context::ListExplanans(registry);
    out << "In which form should the answer come?\n";
    for (std::size_t i = 0; i < explanans.size(); ++i) out << "  " << i + 1 << ". " << explanans[i].label << "\n";
    cfg.explanan = explanans[ask.Choice("Form", explanans.size())].id;

    const context::Shortlist probe = context::MakeShortlist({cfg.explanandum, cfg.explanan, {}}, registry);
    if (probe.empty()) {
      out << "No registered solution answers this question in this form; "
          << context::DescribeSuggestions(probe.suggestions) << ". No config written.\n";
      return std::nullopt;
    }
    out << "Compatible solutions:";
    for (const auto& id : probe.explainers) out << " " << id;
    out << "\nHow important is each property? 0 ignores it, 1 is the default.\n";
    for (;;) {
      cfg.weights.clear();
      for (const auto& id : probe.metrics) {
        const auto& d = metrics::DescribeMetric(id);
        cfg.weights[id] = ask.Number("Weight for " + d.display_name + " (" + metrics::ToString(d.property) + ")", 1.0,
                                     0.0, 1e6);
      }
      if (std::any_of(cfg.weights.begin(), cfg.weights.end(), [](const auto& kv) { return kv.second > 0; })) break;
      out << "  at least one weight must be positive\n";
    }
    cfg.epochs = static_cast<std::size_t>(ask.Number("Optimization epochs per solution", 25, 0, 10000));

    if (cfg.explanan == "data-point") {
      cfg.dataset.kind = "text";
      cfg.dataset.task = Task::kClassification;
      cfg.dataset.standardize = false;
      cfg.dataset.path = ask.Text("Text corpus (one document per line)", defaults.text_path);
      cfg.dataset.labels_path = ask.Text("Labels file", defaults.text_labels_path);
      cfg.model.kind = "external";
      cfg.model.path = ask.Text("Model predictions file", defaults.text_predictions_path);
      for (;;) {
        cfg.confusion_cell = ask.Text("Confusion cell to explain (true_positives, true_negatives, false_positives, "
                                      "false_negatives, all)",
                                      "true_positives");
        if (cfg.confusion_cell == "all" || cfg.confusion_cell == "true_positives" ||
            cfg.confusion_cell == "true_negatives" || cfg.confusion_cell == "false_positives" ||
            cfg.confusion_cell == "false_negatives") {
          break;
        }
        out << "  unknown cell\n";
      }
    } else {
      cfg.dataset.kind = "csv";
      cfg.dataset.path = ask.Text("Dataset CSV", defaults.tabular_path);
      cfg.dataset.target_column = ask.Text("Target column", defaults.tabular_target);
      for (;;) {
        const std::string task = ask.Text("Task (regression or classification)", "regression");
        try {
          cfg.dataset.task = ParseTask(task);
          break;
        } catch (const InvalidInput&) {
          out << "  please answer regression or classification\n";
        }
      }
      cfg.model.kind = "mlp";
    }
    cfg.seed = static_cast<std::uint64_t>(ask.Number("Random seed", 0, 0, 9.0e15));
    cfg.output_dir = ask.Text("Output directory", "xaiselect_out");
  } catch (const Aborted&) {
    out << "\nAborted; no config written.\n";
    return std::nullopt;
  }

  namespace fs = std::filesystem;
  for (std::string* p : {&cfg.dataset.path, &cfg.dataset.labels_path, &cfg.model.path, &cfg.output_dir}) {
    if (!p->empty()) *p = fs::absolute(*p).lexically_normal().string();
  }
  report::WriteFileAtomically(output_path, config::ToJson(cfg));
  out << "Config written to " << output_path << "\n";
  return cfg;
}

}  // namespace xaiselect::wizard

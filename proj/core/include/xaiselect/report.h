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

#ifndef XAISELECT_REPORT_H_
#define XAISELECT_REPORT_H_

#include <string>
#include <utility>
#include <vector>

#include "xaiselect/evaluator.h"
#include "xaiselect/pipeline.h"

namespace xaiselect::report {

// Audit log: one JSON object per trial, enough to replay it.
std::string TrialJsonLine(const eval::TrialRecord& record, const eval::TrialEvaluation& evaluation);
std::vector<std::pair<eval::TrialRecord, eval::TrialEvaluation>> ReadTrialLog(const std::string& path);

std::string RankingCsv(const pipeline::RunReport& report);
std::string RankingJson(const pipeline::RunReport& report);
std::string PerItemCsv(const pipeline::RunReport& report);
std::string ReportMarkdown(const pipeline::RunReport& report);

// Empty when the report is complete, else a description of what is missing.
std::string ValidateReport(const std::string& markdown);

struct Summary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};
// Quartiles by linear interpolation between order statistics.
Summary Summarize(std::vector<double> values);

// Writes ranking.csv, ranking.json, per_item_scores.csv and report.md,
// each through a temporary file renamed into place.
void WriteOutputs(const pipeline::RunReport& report, const std::string& dir);
void WriteFileAtomically(const std::string& path, const std::string& content);

}  // namespace xaiselect::report

#endif  // XAISELECT_REPORT_H_

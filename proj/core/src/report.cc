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

#include "xaiselect/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "xaiselect/metrics.h"

namespace xaiselect::report {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string Fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

json ValueJson(const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<std::string>(v);
}

ParamValue ParseValue(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return j.get<double>();
  return j.get<std::string>();
}

json AssignmentJson(const Assignment& a) {
  json out = json::array();
  for (const auto& [name, value] : a.entries()) out.push_back({{"name", name}, {"value", ValueJson(value)}});
  return out;
}

std::string MetricName(const std::string& id) { return metrics::DescribeMetric(id).display_name; }

}  // namespace

std::string TrialJsonLine(const eval::TrialRecord& r, const eval::TrialEvaluation& ev) {
  json details = json::object();
  for (const auto& [id, m] : ev.details) {
    details[id] = {{"aggregate", m.aggregate},
                   {"items_evaluated", m.items_evaluated},
                   {"stopped_early", m.stopped_early},
                   {"skipped_samples", m.skipped_samples},
                   {"note", m.note},
                   {"per_item_scores", m.per_item_scores},
                   {"item_targets", m.item_targets}};
    if (!m.item_points.empty()) {
      json points = json::array();
      for (const auto& v : m.item_points) points.push_back(std::vector<double>(v.data(), v.data() + v.size()));
      details[id]["item_points"] = std::move(points);
    }
  }
  json raw = json::object();
  for (const auto& [id, v] : r.raw) raw[id] = v;
  json line = {{"trial", r.trial_id},
               {"solution_id", r.solution_id},
               {"display_name", r.display_name},
               {"hyperparameters", AssignmentJson(r.hyperparameters)},
               {"explanation_size", r.explanation_size},
               {"epoch", r.epoch},
               {"cold_start", r.cold_start},
               {"failed", r.failed},
               {"error", r.error},
               {"raw", raw},
               {"aggregated_at_insert", r.failed ? json(nullptr) : json(r.aggregated)},
               {"details", details}};
  return line.dump();
}

std::vector<std::pair<eval::TrialRecord, eval::TrialEvaluation>> ReadTrialLog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open trial log " + path);
  std::vector<std::pair<eval::TrialRecord, eval::TrialEvaluation>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      eval::TrialRecord r;
      r.trial_id = j.at("trial").get<std::size_t>();
      r.solution_id = j.at("solution_id").get<std::string>();
      r.display_name = j.at("display_name").get<std::string>();
      std::vector<std::pair<std::string, ParamValue>> entries;
      for (const auto& e : j.at("hyperparameters")) entries.emplace_back(e.at("name").get<std::string>(), ParseValue(e.at("value")));
      r.hyperparameters = Assignment(std::move(entries));
      r.explanation_size = j.at("explanation_size").get<std::int64_t>();
      r.epoch = j.at("epoch").get<std::size_t>();
      r.cold_start = j.at("cold_start").get<bool>();
      r.failed = j.at("failed").get<bool>();
      r.error = j.at("error").get<std::string>();
      for (const auto& item : j.at("raw").items()) r.raw[item.key()] = item.value().get<double>();
      eval::TrialEvaluation ev;
      ev.raw = r.raw;
      for (const auto& item : j.at("details").items()) {
        metrics::MetricResult m;
        const json& d = item.value();
        m.metric_id = item.key();
        m.aggregate = d.at("aggregate").get<double>();
        m.items_evaluated = d.at("items_evaluated").get<std::size_t>();
        m.stopped_early = d.at("stopped_early").get<bool>();
        m.skipped_samples = d.at("skipped_samples").get<std::size_t>();
        m.note = d.at("note").get<std::string>();
        m.per_item_scores = d.at("per_item_scores").get<std::vector<double>>();
        m.item_targets = d.at("item_targets").get<std::vector<std::size_t>>();
        if (d.contains("item_points")) {
          for (const auto& v : d.at("item_points")) {
            const auto values = v.get<std::vector<double>>();
            m.item_points.push_back(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
          }
        }
        ev.details[m.metric_id] = std::move(m);
      }
      out.emplace_back(std::move(r), std::move(ev));
    } catch (const json::exception& e) {
      // A torn last line is what a crash leaves behind; anything earlier is corruption.
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw InvalidInput(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string RankingCsv(const pipeline::RunReport& rep) {
  std::ostringstream out;
  out << "rank,aggregated";
  for (const auto& m : rep.metrics) out << ",scaled_" << m;
  for (const auto& m : rep.metrics) out << ",raw_" << m;
  out << ",solution_id,solution,hyperparameters,trial,epoch\n";
  std::size_t rank = 0;
  for (const auto& t : rep.ranking) {
    out << ++rank << ',' << Fmt("%.6f", t.aggregated);
    for (const auto& m : rep.metrics) out << ',' << Fmt("%.6f", t.scaled.at(m));
    for (const auto& m : rep.metrics) out << ',' << Fmt("%.9g", t.raw.at(m));
    out << ',' << t.solution_id << ',' << t.display_name << ',' << FormatValues(t.hyperparameters) << ','
        << t.trial_id << ',' << t.epoch << '\n';
  }
  return out.str();
}

std::string RankingJson(const pipeline::RunReport& rep) {
  json rows = json::array();
  std::size_t rank = 0;
  for (const auto& t : rep.ranking) {
    json scaled = json::object();
    json raw = json::object();
    for (const auto& m : rep.metrics) {
      scaled[m] = t.scaled.at(m);
      raw[m] = t.raw.at(m);
    }
    json hp = json::object();
    for (const auto& [name, value] : t.hyperparameters.entries()) hp[name] = ValueJson(value);
    rows.push_back({{"rank", ++rank},
                    {"aggregated", t.aggregated},
                    {"scaled", scaled},
                    {"raw", raw},
                    {"solution_id", t.solution_id},
                    {"solution", t.display_name},
                    {"hyperparameters", FormatValues(t.hyperparameters)},
                    {"hyperparameter_values", hp},
                    {"explanation_size", t.explanation_size},
                    {"trial", t.trial_id},
                    {"epoch", t.epoch},
                    {"cold_start", t.cold_start}});
  }
  json weights = json::object();
  for (const auto& [k, v] : rep.weights) weights[k] = v;
  json root = {{"explanandum", rep.config.explanandum},
               {"explanan", rep.config.explanan},
               {"weights", weights},
               {"seed", rep.config.seed},
               {"epochs", rep.config.epochs},
               {"per_size_rows", rep.config.per_size_rows},
               {"ranking", rows}};
  return root.dump(2) + "\n";
}

std::string PerItemCsv(const pipeline::RunReport& rep) {
  std::ostringstream out;
  out << "trial,solution_id,target_index,metric_id,value\n";
  for (const auto& t : rep.trials) {
    if (t.failed || t.trial_id >= rep.evaluations.size()) continue;
    for (const auto& [id, m] : rep.evaluations[t.trial_id].details) {
      if (m.per_item_scores.empty()) {
        out << t.trial_id << ',' << t.solution_id << ",all," << id << ',' << Fmt("%.9g", m.aggregate) << '\n';
        continue;
      }
      for (std::size_t i = 0; i < m.per_item_scores.size(); ++i) {
        out << t.trial_id << ',' << t.solution_id << ',' << m.item_targets[i] << ',' << id << ','
            << Fmt("%.9g", m.per_item_scores[i]) << '\n';
      }
    }
  }
  return out.str();
}

Summary Summarize(std::vector<double> values) {
  Summary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.min = values.front();
  s.q1 = at(0.25);
  s.median = at(0.5);
  s.q3 = at(0.75);
  s.max = values.back();
  return s;
}

std::string ReportMarkdown(const pipeline::RunReport& rep) {
  const auto& cfg = rep.config;
  std::ostringstream md;
  md << "# xaiselect run report\n\n";

  md << "## Context\n\n";
  md << "- explanandum: `" << cfg.explanandum << "`\n";
  md << "- explanan: `" << cfg.explanan << "`\n";
  md << "- dataset: `" << cfg.dataset.path << "` (" << cfg.dataset.kind << ", " << ToString(cfg.dataset.task) << ")\n";
  md << "- model: " << cfg.model.kind << "\n";
  md << "- seed: " << cfg.seed << ", epochs per solution: " << cfg.epochs << "\n\n";

  md << "## Shortlist\n\n";
  md << "Solutions: ";
  for (std::size_t i = 0; i < rep.solutions.size(); ++i) md << (i ? ", " : "") << "`" << rep.solutions[i] << "`";
  md << "\n\n| Metric | Property | Orientation | Weight |\n|---|---|---|---|\n";
  for (const auto& id : rep.metrics) {
    const auto& d = metrics::DescribeMetric(id);
    md << "| " << id << " | " << metrics::ToString(d.property) << " | " << metrics::ToString(d.orientation) << " | "
       << Fmt("%g", rep.weights.at(id)) << " |\n";
  }
  md << "\n";

  md << "## Ranking\n\n| Rank | Aggregated |";
  for (const auto& m : rep.metrics) md << " Scaled " << MetricName(m) << " |";
  md << " Solution | Hyperparameters | Trial |\n|---|---|";
  for (std::size_t i = 0; i < rep.metrics.size(); ++i) md << "---|";
  md << "---|---|---|\n";
  std::size_t rank = 0;
  for (const auto& t : rep.ranking) {
    md << "| " << ++rank << " | " << Fmt("%.3f", t.aggregated) << " |";
    for (const auto& m : rep.metrics) md << " " << Fmt("%.3f", t.scaled.at(m)) << " |";
    md << " " << t.display_name << " | " << FormatValues(t.hyperparameters) << " | " << t.trial_id << " |\n";
  }
  md << "\n";

  md << "## Score distributions\n\n";
  md << "Per-item raw scores of the ranked trials (full data in `per_item_scores.csv`).\n\n";
  md << "| Trial | Solution | Metric | Items | Min | Q1 | Median | Q3 | Max |\n|---|---|---|---|---|---|---|---|---|\n";
  bool any = false;
  for (const auto& t : rep.ranking) {
    if (t.trial_id >= rep.evaluations.size()) continue;
    for (const auto& [id, m] : rep.evaluations[t.trial_id].details) {
      if (m.per_item_scores.empty()) continue;
      any = true;
      const Summary s = Summarize(m.per_item_scores);
      md << "| " << t.trial_id << " | " << t.solution_id << " | " << id << " | " << m.per_item_scores.size() << " | "
         << Fmt("%.4g", s.min) << " | " << Fmt("%.4g", s.q1) << " | " << Fmt("%.4g", s.median) << " | "
         << Fmt("%.4g", s.q3) << " | " << Fmt("%.4g", s.max) << " |\n";
    }
  }
  if (!any) md << "| - | - | set-level metrics only | | | | | | |\n";
  md << "\n";

  md << "## Scaling pools\n\n| Metric | Mean (oriented) | Std | Count |\n|---|---|---|---|\n";
  for (const auto& [id, s] : rep.scaling) {
    md << "| " << id << " | " << Fmt("%.6g", s.mean) << " | " << Fmt("%.6g", s.stddev) << " | " << s.count << " |\n";
  }
  md << "\n";

  md << "## Optimization\n\n| Solution | HPO trials | Failed | Stopped early at epoch | Last length scale |\n"
        "|---|---|---|---|---|\n";
  for (const auto& [id, o] : rep.hpo) {
    md << "| " << id << " | " << o.trials_run << " | " << o.failed_trials << " | "
       << (o.stopped_early ? std::to_string(o.stop_epoch) : std::string("-")) << " | "
       << (o.length_scales.empty() ? std::string("-") : Fmt("%g", o.length_scales.back())) << " |\n";
  }
  if (rep.replayed_trials) md << "\n" << rep.replayed_trials << " trials were replayed from an earlier audit log.\n";
  md << "\n";

  const auto& s = rep.strategies;
  md << "## Strategy statistics\n\n";
  md << "- explained rows: " << s.targets << " of " << s.population << "\n";
  for (const auto& [id, available] : s.items_available) {
    const std::size_t done = s.items_evaluated.count(id) ? s.items_evaluated.at(id) : 0;
    const double saved = available ? 100.0 * (1.0 - static_cast<double>(done) / static_cast<double>(available)) : 0.0;
    const std::size_t stops = s.early_stops.count(id) ? s.early_stops.at(id) : 0;
    md << "- " << id << ": " << done << " of " << available << " items evaluated (" << Fmt("%.1f", saved)
       << "% skipped), early stops in " << stops << " trials\n";
  }
  md << "- robustness maxima cache: " << s.robustness_cache.hits << " hits, " << s.robustness_cache.misses
     << " misses\n";
  md << "- infidelity perturbation cache: " << s.infidelity_cache.hits << " hits, " << s.infidelity_cache.misses
     << " misses\n";
  md << "- model rows evaluated: " << s.model_rows_evaluated << "\n";
  md << "- metric evaluation time: " << Fmt("%.2f", s.metric_seconds) << " s, total wall time "
     << Fmt("%.2f", rep.wall_seconds) << " s\n\n";

  md << "## Failures\n\n";
  bool failures = false;
  for (const auto& [id, msg] : rep.cold_start_failures) {
    failures = true;
    md << "- cold start `" << id << "`: " << msg << "\n";
  }
  for (const auto& t : rep.trials) {
    if (!t.failed) continue;
    failures = true;
    md << "- trial " << t.trial_id << " `" << t.solution_id << "` [" << FormatValues(t.hyperparameters)
       << "]: " << t.error << "\n";
  }
  if (!failures) md << "None.\n";
  md << "\n";

  md << "## Decision log\n\n";
  for (const auto& line : rep.decision_log) md << "- " << line << "\n";
  return md.str();
}

std::string ValidateReport(const std::string& markdown) {
  const std::string heading = "## Decision log\n";
  const auto at = markdown.find(heading);
  if (at == std::string::npos) return "report has no decision log section";
  const std::string rest = markdown.substr(at + heading.size());
  if (rest.find("\n- ") == std::string::npos && rest.rfind("- ", 0) != 0) return "decision log is empty";
  if (markdown.find("## Ranking\n") == std::string::npos) return "report has no ranking section";
  return "";
}

void WriteFileAtomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp);
    out << content;
    if (!out) throw InvalidInput("failed writing " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw InvalidInput("cannot move " + tmp + " to " + path + ": " + ec.message());
}

void WriteOutputs(const pipeline::RunReport& rep, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path base(dir);
  const std::string md = ReportMarkdown(rep);
  const std::string problem = ValidateReport(md);
  if (!problem.empty()) throw ComputeFailure("report validation failed: " + problem);
  WriteFileAtomically((base / "ranking.csv").string(), RankingCsv(rep));
  WriteFileAtomically((base / "ranking.json").string(), RankingJson(rep));
  WriteFileAtomically((base / "per_item_scores.csv").string(), PerItemCsv(rep));
  WriteFileAtomically((base / "report.md").string(), md);
}

}  // namespace xaiselect::report

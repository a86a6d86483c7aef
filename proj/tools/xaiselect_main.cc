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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xaiselect/config.h"
#include "xaiselect/context.h"
#include "xaiselect/explainers.h"
#include "xaiselect/pipeline.h"
#include "xaiselect/report.h"
#include "xaiselect/strategy_bench.h"
#include "xaiselect/wizard.h"

namespace {

using namespace xaiselect;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitEmptyShortlist = 3;
constexpr int kExitCompute = 4;

std::string BundledConfig(const std::string& name) {
  return std::string(XAISELECT_DATA_DIR) + "/configs/" + name;
}

context::Registry LoadRegistry(const std::string& path) {
  return path.empty() ? context::Registry::LoadDefault() : context::Registry::Load(path);
}

std::vector<std::size_t> ParseIndices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
    }
    if (v < 0 || used != item.size()) throw InvalidInput("bad row index '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

int ListSolutions(const std::string& registry_path) {
  const auto registry = LoadRegistry(registry_path);
  std::cout << "Questions (explananda):\n";
  for (const auto& q : context::ListQuestions(registry)) std::printf("  %-22s %s\n", q.id.c_str(), q.text.c_str());
  std::cout << "Answer forms (explanans):\n";
  for (const auto& e : context::ListExplanans(registry)) std::printf("  %-22s %s\n", e.id.c_str(), e.label.c_str());
  std::cout << "Solutions:\n";
  for (const auto& x : registry.explainers()) {
    const auto desc = explainers::Describe(x.id);
    std::string tags;
    for (const auto& q : x.explananda) {
      for (const auto& a : x.explanans) tags += " (" + q + ", " + a + ")";
    }
    std::printf("  %-12s %-12s%s\n", x.id.c_str(), desc.display_name.c_str(), tags.c_str());
    for (const auto& p : desc.space.params()) {
      std::printf("      %-18s %-38s default %s\n", p.name.c_str(), p.DomainString().c_str(),
                  FormatValue(p.default_value).c_str());
    }
  }
  std::cout << "Metrics:\n";
  for (const auto& m : registry.metrics()) {
    const auto& d = metrics::DescribeMetric(m.id);
    std::printf("  %-24s %-16s %-24s %s\n", m.id.c_str(), m.explanan.c_str(), m.property.c_str(),
                metrics::ToString(d.orientation).c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xaiselect: recommend and tune explainers for a model and a user context"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool resume = false;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Shortlist, tune and rank explainers for a config");
  run->add_option("--config", config_path, "Run config (JSON)")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_dir, "Override the output directory");
  run->add_flag("--resume", resume, "Replay trials recorded in an existing trials.jsonl");
  run->add_flag("--quiet", quiet, "Do not print progress");

  std::string wizard_out = "xaiselect_config.json";
  std::string registry_path;
  auto* wiz = app.add_subcommand("wizard", "Build a run config interactively");
  wiz->add_option("--output", wizard_out, "Where to write the config");
  wiz->add_option("--registry", registry_path, "Registry file (default: bundled)");

  auto* list = app.add_subcommand("list-solutions", "Show the registry and each solution's hyperparameters");
  list->add_option("--registry", registry_path, "Registry file (default: bundled)");

  std::string solution;
  std::string hp;
  std::string targets_text = "0";
  std::size_t top_k = 10;
  std::string explain_out;
  std::string explain_config;
  auto* explain = app.add_subcommand("explain", "Produce and export explanations of one solution");
  explain->add_option("--solution", solution, "Solution id")->required();
  explain->add_option("--hp", hp, "Hyperparameters as name=value,... (unset ones take defaults)");
  explain->add_option("--config", explain_config, "Config supplying data and model (default: bundled use case)");
  explain->add_option("--targets", targets_text, "Comma-separated row indices (attribution solutions)");
  explain->add_option("--top-k", top_k, "Features shown per row in the text rendering");
  explain->add_option("--out", explain_out, "Write the JSON-lines export here instead of stdout");

  std::string bench_config;
  std::string bench_solution = "lime";
  std::size_t bench_rows = 0;
  std::size_t repeats = 1;
  auto* bench = app.add_subcommand("bench-strategies", "Time robustness and infidelity under each strategy");
  bench->add_option("--config", bench_config, "Config supplying data and model (default: bundled use case 1)");
  bench->add_option("--solution", bench_solution, "Attribution solution to time");
  bench->add_option("--rows", bench_rows, "Explain only the first N rows (0 = all)");
  bench->add_option("--repeats", repeats, "Timing repetitions");
  bench->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      config::RunConfig cfg = config::LoadConfig(config_path);
      if (*seed_opt) cfg.seed = seed;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      pipeline::RunOptions options;
      options.resume = resume;
      options.progress = quiet ? nullptr : &std::cerr;
      const pipeline::RunReport rep = pipeline::Run(cfg, options);
      std::cout << "ranking written to " << cfg.output_dir << "/ranking.csv (" << rep.ranking.size() << " rows, "
                << rep.trials.size() << " trials)\n";
      if (!rep.ranking.empty()) {
        const auto& best = rep.ranking.front();
        std::cout << "best: " << best.display_name << " [" << FormatValues(best.hyperparameters) << "] A="
                  << best.aggregated << "\n";
      }
      return kExitOk;
    }
    if (*wiz) {
      const auto registry = LoadRegistry(registry_path);
      const auto cfg = wizard::RunWizard(registry, std::cin, std::cout, wizard_out);
      return cfg ? kExitOk : kExitEmptyShortlist;
    }
    if (*list) return ListSolutions(registry_path);
    if (*explain) {
      const auto nominal = explainers::Describe(solution);
      if (explain_config.empty()) {
        explain_config = BundledConfig(nominal.family == explainers::Family::kAttribution ? "use_case_1.json"
                                                                                           : "use_case_2.json");
      }
      const config::RunConfig cfg = config::LoadConfig(explain_config);
      const pipeline::Workspace ws = pipeline::Prepare(cfg);
      const auto desc = pipeline::DescribeFor(solution, ws);
      const Assignment h = desc.space.Parse(hp);
      const auto output = pipeline::ExplainWith(ws, cfg, solution, h, ParseIndices(targets_text), top_k);
      if (explain_out.empty()) {
        std::cout << output.jsonl;
      } else {
        report::WriteFileAtomically(explain_out, output.jsonl);
      }
      std::cerr << output.text;
      return kExitOk;
    }
    if (*bench) {
      if (bench_config.empty()) bench_config = BundledConfig("use_case_1.json");
      const config::RunConfig cfg = config::LoadConfig(bench_config);
      const pipeline::Workspace ws = pipeline::Prepare(cfg);
      bench::BenchOptions options = bench::DefaultBenchOptions(ws, bench_solution, seed);
      if (bench_rows > 0 && bench_rows < options.targets.size()) options.targets.resize(bench_rows);
      options.repeats = repeats;
      options.robustness = cfg.robustness;
      options.infidelity = cfg.infidelity;
      const auto result = bench::RunStrategyBench(ws, options);
      std::cout << "solution " << bench_solution << ", warm-up [" << FormatValues(options.warm_h) << "], measured ["
                << FormatValues(options.measured_h) << "], " << options.targets.size() << " rows\n\n";
      std::cout << result.Table();
      return kExitOk;
    }
  } catch (const context::EmptyShortlist& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEmptyShortlist;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  return kExitOk;
}

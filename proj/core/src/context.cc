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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "xaiselect/explainers.h"
#include "xaiselect/metrics.h"

namespace xaiselect::context {
namespace {

using nlohmann::json;

std::string RequireString(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string()) {
    throw InvalidInput(where + ": missing string field '" + key + "'");
  }
  return obj[key].get<std::string>();
}

std::vector<std::string> RequireStrings(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_array()) throw InvalidInput(where + ": missing array field '" + key + "'");
  std::vector<std::string> out;
  for (const auto& v : obj[key]) {
    if (!v.is_string()) throw InvalidInput(where + ": '" + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

const json& Section(const json& root, const char* key, const std::string& source) {
  if (!root.contains(key) || !root[key].is_array()) {
    throw InvalidInput(source + ": registry section '" + key + "' is missing or not an array");
  }
  return root[key];
}

}  // namespace

Registry Registry::Parse(const std::string& json_text, const std::string& source) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(source + ": " + e.what());
  }
  if (!root.is_object()) throw InvalidInput(source + ": registry must be a JSON object");

  Registry r;
  std::set<std::string> ids;
  auto unique = [&](const std::string& kind, const std::string& id) {
    if (!ids.insert(kind + "/" + id).second) throw InvalidInput(source + ": duplicate " + kind + " id '" + id + "'");
  };
  for (const auto& q : Section(root, "explananda", source)) {
    Question question{RequireString(q, "id", source + " explananda"), RequireString(q, "question", source)};
    unique("explanandum", question.id);
    r.explananda_.push_back(std::move(question));
  }
  for (const auto& e : Section(root, "explanans", source)) {
    ExplananType type{RequireString(e, "id", source + " explanans"), RequireString(e, "label", source)};
    unique("explanan", type.id);
    r.explanans_.push_back(std::move(type));
  }
  for (const auto& e : Section(root, "explainers", source)) {
    const std::string id = RequireString(e, "id", source + " explainers");
    const std::string where = source + " explainer '" + id + "'";
    RegistryExplainer x{id, RequireStrings(e, "explananda", where), RequireStrings(e, "explanans", where)};
    unique("explainer", id);
    for (const auto& tag : x.explananda) {
      if (!r.HasExplanandum(tag)) throw InvalidInput(where + " references unknown explanandum '" + tag + "'");
    }
    for (const auto& tag : x.explanans) {
      if (!r.HasExplanan(tag)) throw InvalidInput(where + " references unknown explanan '" + tag + "'");
    }
    const auto& known = explainers::KnownExplainers();
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw InvalidInput(where + " has no implementation");
    }
    r.explainers_.push_back(std::move(x));
  }
  for (const auto& m : Section(root, "metrics", source)) {
    const std::string id = RequireString(m, "id", source + " metrics");
    const std::string where = source + " metric '" + id + "'";
    if (m.contains("property") && m["property"].is_array()) {
      throw InvalidInput(where + " must evaluate exactly one property");
    }
    RegistryMetric x{id, RequireString(m, "explanan", where), RequireString(m, "property", where)};
    unique("metric", id);
    if (!r.HasExplanan(x.explanan)) throw InvalidInput(where + " references unknown explanan '" + x.explanan + "'");
    const metrics::MetricDescriptor* desc = nullptr;
    for (const auto& k : metrics::KnownMetrics()) {
      if (k.id == id) desc = &k;
    }
    if (desc == nullptr) throw InvalidInput(where + " has no implementation");
    if (metrics::ToString(desc->property) != x.property) {
      throw InvalidInput(where + " declares property '" + x.property + "' but evaluates '" +
                         metrics::ToString(desc->property) + "'");
    }
    r.metrics_.push_back(std::move(x));
  }
  return r;
}

Registry Registry::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open registry file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path);
}

Registry Registry::LoadDefault() {
#ifdef XAISELECT_DATA_DIR
  return Load(std::string(XAISELECT_DATA_DIR) + "/registry.json");
#else
  throw InvalidInput("no default registry location compiled in; pass a registry path");
#endif
}

bool Registry::HasExplanandum(const std::string& id) const {
  return std::any_of(explananda_.begin(), explananda_.end(), [&](const Question& q) { return q.id == id; });
}

bool Registry::HasExplanan(const std::string& id) const {
  return std::any_of(explanans_.begin(), explanans_.end(), [&](const ExplananType& e) { return e.id == id; });
}

std::vector<Question> ListQuestions(const Registry& registry) { return registry.explananda(); }
std::vector<ExplananType> ListExplanans(const Registry& registry) { return registry.explanans(); }

eval::PropertyWeights ValidateWeights(const std::map<std::string, double>& given, const Registry& registry) {
  eval::PropertyWeights out;
  for (const auto& m : registry.metrics()) out[m.id] = 1.0;
  for (const auto& [id, w] : given) {
    if (!out.count(id)) throw InvalidInput("weight given for unknown metric '" + id + "'");
    if (!std::isfinite(w)) throw InvalidInput("weight for '" + id + "' is not finite");
    if (w < 0) throw InvalidInput("weight for '" + id + "' is negative");
    out[id] = w;
  }
  if (std::none_of(out.begin(), out.end(), [](const auto& kv) { return kv.second > 0; })) {
    throw InvalidInput("all property weights are zero");
  }
  return out;
}

Shortlist MakeShortlist(const ContextSpec& ctx, const Registry& registry) {
  if (!registry.HasExplanandum(ctx.explanandum_id)) {
    throw InvalidInput("unknown explanandum '" + ctx.explanandum_id + "'");
  }
  if (!registry.HasExplanan(ctx.explanan_id)) throw InvalidInput("unknown explanan '" + ctx.explanan_id + "'");
  const eval::PropertyWeights weights = ValidateWeights(ctx.weights, registry);

  auto has = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  Shortlist out;
  for (const auto& e : registry.explainers()) {
    if (has(e.explananda, ctx.explanandum_id) && has(e.explanans, ctx.explanan_id)) out.explainers.push_back(e.id);
  }
  for (const auto& m : registry.metrics()) {
    if (m.explanan == ctx.explanan_id && weights.at(m.id) > 0) {
      out.metrics.push_back(m.id);
      out.weights[m.id] = weights.at(m.id);
    }
  }
  if (out.empty()) {
    // Pairs that would shortlist something: explainer tag combinations whose
    // explanan has at least one positively weighted metric. Pairs sharing the
    // requested explanandum or explanan come first.
    std::vector<std::pair<std::string, std::string>> close;
    std::vector<std::pair<std::string, std::string>> far;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : registry.explainers()) {
      for (const auto& q : e.explananda) {
        for (const auto& x : e.explanans) {
          const bool measurable = std::any_of(registry.metrics().begin(), registry.metrics().end(),
                                              [&](const RegistryMetric& m) { return m.explanan == x && weights.at(m.id) > 0; });
          if (!measurable || !seen.insert({q, x}).second) continue;
          (q == ctx.explanandum_id || x == ctx.explanan_id ? close : far).emplace_back(q, x);
        }
      }
    }
    out.suggestions = close;
    out.suggestions.insert(out.suggestions.end(), far.begin(), far.end());
  }
  return out;
}

std::string DescribeSuggestions(const std::vector<std::pair<std::string, std::string>>& suggestions) {
  if (suggestions.empty()) return "no registered (explanandum, explanan) pair has a solution";
  std::string out = "available pairs:";
  for (const auto& [q, x] : suggestions) out += " (" + q + ", " + x + ")";
  return out;
}

}  // namespace xaiselect::context

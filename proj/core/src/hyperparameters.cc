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

#include "xaiselect/hyperparameters.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "xaiselect/common.h"

namespace xaiselect {

ParamDescriptor ParamDescriptor::Continuous(std::string name, double lo, double hi, double def, bool log_scale) {
  ParamDescriptor p;
  p.name = std::move(name);
  p.kind = ParamKind::kContinuous;
  p.lo = lo;
  p.hi = hi;
  p.default_value = def;
  p.log_scale = log_scale;
  return p;
}

ParamDescriptor ParamDescriptor::Integer(std::string name, std::int64_t lo, std::int64_t hi, std::int64_t def) {
  ParamDescriptor p;
  p.name = std::move(name);
  p.kind = ParamKind::kInteger;
  p.lo = static_cast<double>(lo);
  p.hi = static_cast<double>(hi);
  p.default_value = def;
  return p;
}

ParamDescriptor ParamDescriptor::Categorical(std::string name, std::vector<std::string> options, std::string def) {
  ParamDescriptor p;
  p.name = std::move(name);
  p.kind = ParamKind::kCategorical;
  p.options = std::move(options);
  p.default_value = std::move(def);
  return p;
}

bool ParamDescriptor::Contains(const ParamValue& value) const {
  switch (kind) {
    case ParamKind::kContinuous: {
      const auto* v = std::get_if<double>(&value);
      return v && std::isfinite(*v) && *v >= lo && *v <= hi;
    }
    case ParamKind::kInteger: {
      const auto* v = std::get_if<std::int64_t>(&value);
      return v && static_cast<double>(*v) >= lo && static_cast<double>(*v) <= hi;
    }
    case ParamKind::kCategorical: {
      const auto* v = std::get_if<std::string>(&value);
      return v && std::find(options.begin(), options.end(), *v) != options.end();
    }
  }
  return false;
}

std::string ParamDescriptor::DomainString() const {
  std::ostringstream out;
  switch (kind) {
    case ParamKind::kContinuous:
      out << "continuous[" << lo << ", " << hi << "]" << (log_scale ? " log" : "");
      break;
    case ParamKind::kInteger:
      out << "integer[" << static_cast<std::int64_t>(lo) << ", " << static_cast<std::int64_t>(hi) << "]";
      break;
    case ParamKind::kCategorical: {
      out << "categorical{";
      for (std::size_t i = 0; i < options.size(); ++i) out << (i ? ", " : "") << options[i];
      out << "}";
      break;
    }
  }
  return out.str();
}

const ParamValue& Assignment::Get(const std::string& name) const {
  for (const auto& [k, v] : entries_) {
    if (k == name) return v;
  }
  throw InvalidInput("hyperparameter '" + name + "' not set");
}

std::int64_t Assignment::Int(const std::string& name) const {
  const auto* v = std::get_if<std::int64_t>(&Get(name));
  if (!v) throw InvalidInput("hyperparameter '" + name + "' is not an integer");
  return *v;
}

double Assignment::Real(const std::string& name) const {
  const auto* v = std::get_if<double>(&Get(name));
  if (!v) throw InvalidInput("hyperparameter '" + name + "' is not real-valued");
  return *v;
}

const std::string& Assignment::Choice(const std::string& name) const {
  const auto* v = std::get_if<std::string>(&Get(name));
  if (!v) throw InvalidInput("hyperparameter '" + name + "' is not categorical");
  return *v;
}

void Assignment::Set(const std::string& name, ParamValue value) {
  for (auto& [k, v] : entries_) {
    if (k == name) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(name, std::move(value));
}

HyperparameterSpace::HyperparameterSpace(std::vector<ParamDescriptor> params) : params_(std::move(params)) {
  std::set<std::string> names;
  for (const auto& p : params_) {
    if (!names.insert(p.name).second) throw InvalidInput("duplicate hyperparameter name: " + p.name);
    if (p.kind == ParamKind::kCategorical) {
      if (p.options.empty()) throw InvalidInput("categorical hyperparameter without options: " + p.name);
    } else if (!(p.lo < p.hi)) {
      throw InvalidInput("hyperparameter '" + p.name + "' needs lo < hi");
    }
    if (p.log_scale && p.lo <= 0) throw InvalidInput("log-scaled hyperparameter needs lo > 0: " + p.name);
    if (!p.Contains(p.default_value)) throw InvalidInput("default of '" + p.name + "' lies outside its domain");
  }
}

const ParamDescriptor& HyperparameterSpace::Find(const std::string& name) const {
  for (const auto& p : params_) {
    if (p.name == name) return p;
  }
  throw InvalidInput("unknown hyperparameter '" + name + "'");
}

Assignment HyperparameterSpace::Defaults() const {
  std::vector<std::pair<std::string, ParamValue>> entries;
  for (const auto& p : params_) entries.emplace_back(p.name, p.default_value);
  return Assignment(std::move(entries));
}

void HyperparameterSpace::Check(const Assignment& a) const {
  if (a.size() != params_.size()) throw InvalidInput("assignment does not match hyperparameter space");
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const auto& [name, value] = a.entries()[i];
    if (name != params_[i].name) throw InvalidInput("assignment out of order at '" + name + "'");
    if (!params_[i].Contains(value)) {
      throw InvalidInput("hyperparameter " + name + "=" + FormatValue(value) + " outside " +
                         params_[i].DomainString());
    }
  }
}

Assignment HyperparameterSpace::Parse(const std::string& text) const {
  Assignment a = Defaults();
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("expected name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::string raw = item.substr(eq + 1);
    const ParamDescriptor& p = Find(name);
    switch (p.kind) {
      case ParamKind::kContinuous: {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (ec != std::errc() || ptr != raw.data() + raw.size()) throw InvalidInput("bad number for " + name);
        a.Set(name, v);
        break;
      }
      case ParamKind::kInteger: {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (ec != std::errc() || ptr != raw.data() + raw.size()) throw InvalidInput("bad integer for " + name);
        a.Set(name, v);
        break;
      }
      case ParamKind::kCategorical:
        a.Set(name, raw);
        break;
    }
  }
  Check(a);
  return a;
}

std::string FormatValue(const ParamValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.4g", std::get<double>(v));
  return buf;
}

std::string FormatValues(const Assignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ';';
    out += FormatValue(a.entries()[i].second);
  }
  return out;
}

}  // namespace xaiselect

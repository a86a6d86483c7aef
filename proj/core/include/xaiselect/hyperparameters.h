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

#ifndef XAISELECT_HYPERPARAMETERS_H_
#define XAISELECT_HYPERPARAMETERS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace xaiselect {

using ParamValue = std::variant<double, std::int64_t, std::string>;

enum class ParamKind { kContinuous, kInteger, kCategorical };

struct ParamDescriptor {
  std::string name;
  ParamKind kind = ParamKind::kContinuous;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::string> options;
  ParamValue default_value;
  // Continuous parameters spanning decades are searched in log space.
  bool log_scale = false;

  static ParamDescriptor Continuous(std::string name, double lo, double hi, double def, bool log_scale = false);
  static ParamDescriptor Integer(std::string name, std::int64_t lo, std::int64_t hi, std::int64_t def);
  static ParamDescriptor Categorical(std::string name, std::vector<std::string> options, std::string def);

  bool Contains(const ParamValue& value) const;
  std::string DomainString() const;
};

// One concrete hyperparameter vector h, in the order of its space.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::pair<std::string, ParamValue>> entries) : entries_(std::move(entries)) {}

  const std::vector<std::pair<std::string, ParamValue>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const ParamValue& Get(const std::string& name) const;
  std::int64_t Int(const std::string& name) const;
  double Real(const std::string& name) const;
  const std::string& Choice(const std::string& name) const;
  void Set(const std::string& name, ParamValue value);

  bool operator==(const Assignment& other) const { return entries_ == other.entries_; }

 private:
  std::vector<std::pair<std::string, ParamValue>> entries_;
};

class HyperparameterSpace {
 public:
  HyperparameterSpace() = default;
  // Throws InvalidInput if a descriptor is malformed or names repeat.
  explicit HyperparameterSpace(std::vector<ParamDescriptor> params);

  const std::vector<ParamDescriptor>& params() const { return params_; }
  std::size_t size() const { return params_.size(); }
  const ParamDescriptor& Find(const std::string& name) const;

  Assignment Defaults() const;
  // Throws InvalidInput when a value is missing or outside its domain.
  void Check(const Assignment& a) const;
  // Parses "name=value,name=value"; unspecified names take their default.
  Assignment Parse(const std::string& text) const;

 private:
  std::vector<ParamDescriptor> params_;
};

// Semicolon-joined values in space order, e.g. "5;5392" or "gaussian;11.90;11".
std::string FormatValues(const Assignment& a);
std::string FormatValue(const ParamValue& v);

}  // namespace xaiselect

#endif  // XAISELECT_HYPERPARAMETERS_H_

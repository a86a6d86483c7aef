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

#ifndef XAISELECT_WIZARD_H_
#define XAISELECT_WIZARD_H_

#include <iosfwd>
#include <optional>
#include <string>

#include "xaiselect/config.h"
#include "xaiselect/context.h"

namespace xaiselect::wizard {

// Default answers offered for data locations.
struct WizardDefaults {
  std::string tabular_path;
  std::string tabular_target = "target";
  std::string text_path;
  std::string text_labels_path;
  std::string text_predictions_path;

  // Bundled sample data.
  static WizardDefaults Bundled();
};

// Asks for the context, weights, epochs and data, then writes the config to
// `output_path`. Returns nullopt without writing anything when the input ends
// early or the chosen pair has no compatible solution.
std::optional<config::RunConfig> RunWizard(const context::Registry& registry, std::istream& in, std::ostream& out,
                                           const std::string& output_path,
                                           const WizardDefaults& defaults = WizardDefaults::Bundled());

}  // namespace xaiselect::wizard

#endif  // XAISELECT_WIZARD_H_

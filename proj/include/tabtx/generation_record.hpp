// Copyright 2026 The tabtx Authors
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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tabtx/eval.hpp"
#include "tabtx/tx_structure.hpp"

namespace tabtx {

/// Everything one pipeline run produced for a document.
struct GenerationRecord {
  std::string id;
  std::string step1_prompt;
  std::string step1_output;
  std::vector<std::string> step2_prompts;  // one per attempt
  std::vector<std::string> step2_outputs;
  std::string final_summary;
  TXSummary parsed;
  tx::TXValidationReport validation;
  bool tx_valid = false;
  std::optional<std::string> failure_reason;
  std::optional<eval::ScoreTriple> scores;  // present when a reference exists
};

}  // namespace tabtx

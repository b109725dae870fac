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
#include <span>
#include <string>
#include <vector>

#include "tabtx/backend.hpp"
#include "tabtx/eval.hpp"
#include "tabtx/generation_record.hpp"
#include "tabtx/prompt.hpp"
#include "tabtx/table_model.hpp"

// preprocess -> analysis -> step-1 prompt -> backend -> step-2 prompt ->
// backend -> TX parse/validate, with regeneration on invalid structure.
namespace tabtx::pipeline {

struct PipelineConfig {
  std::string locale = "auto";  // en | ko | auto
  prompt::PromptOptions prompt_options;
  prompt::PromptLibrary prompts = prompt::PromptLibrary::load(std::nullopt);
  prompt::Glossary glossary;
  int max_regeneration = 1;
  backend::GenerationParams step1_params;
  backend::GenerationParams step2_params = [] {
    backend::GenerationParams p;
    p.stop_sequences = {"\n\n"};
    return p;
  }();
  std::optional<eval::TokenMode> tokenizer;  // nullopt: detect from reference
};

/// Throws EmptyTitleError, EmptyResultError (nothing highlighted survives
/// preprocessing) and BackendError after retries.
GenerationRecord run_pipeline(const TableDocument& doc, const backend::TextBackend& backend,
                              const PipelineConfig& config);

struct DocumentOutcome {
  std::optional<GenerationRecord> record;  // absent on backend or config failure
  std::optional<std::string> error;
  int exit_code = 0;  // of `error`: 2 backend, 3 config
};

/// Runs every document with at most `parallelism` in flight. Data errors
/// become failed records (tx_valid = false, failure_reason set); backend
/// and config errors leave the record empty and set `error`. Output order matches input order.
std::vector<DocumentOutcome> run_corpus(std::span<const TableDocument> docs, const backend::TextBackend& backend,
                                        const PipelineConfig& config, std::size_t parallelism);

}  // namespace tabtx::pipeline

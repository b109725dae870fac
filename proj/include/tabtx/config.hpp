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

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "tabtx/backend.hpp"
#include "tabtx/pipeline.hpp"

namespace tabtx {

struct BackendSettings {
  std::string kind = "mock";  // mock | http
  std::string endpoint;
  std::string model;
  std::string api_key_env = "TABTX_API_KEY";
  std::string mock_responses;  // script path; empty: echo mock
  int timeout_ms = 30000;
  int retries = 2;
  int backoff_ms = 250;
  int max_tokens = 512;
  double temperature = 0.0;
};

/// Everything a CLI run needs. Defaults < config file < command-line flags.
struct RunConfig {
  std::string corpus;
  std::string out;         // "-" or empty: stdout where a command allows it
  std::string results;     // validate/evaluate input
  std::string report;      // pipeline evaluation report
  std::string prompt_log;  // JSONL of every prompt sent
  std::string format = "json";
  BackendSettings backend;
  std::string locale = "auto";
  bool persona = true;
  bool theme_instruction = true;
  std::string tokenizer = "auto";
  int parallelism = 1;
  bool skip_invalid = false;
  int max_regeneration = 1;
  std::string glossary;
  std::string template_dir;
};

/// Config file keys (JSON object): corpus, out, locale, persona,
/// theme_instruction, tokenizer, parallelism, skip_invalid,
/// max_regeneration, glossary, template_dir, prompt_log, backend{kind,
/// endpoint, model, api_key_env, mock_responses, timeout_ms, retries,
/// backoff_ms, max_tokens, temperature}. Unknown keys are rejected.
void apply_config_file(const std::filesystem::path& path, RunConfig& config);

/// Throws ConfigError on out-of-range values.
void check_config(const RunConfig& config);

/// The HTTP backend reads its token from the environment variable named in
/// `api_key_env`.
std::unique_ptr<backend::TextBackend> make_backend(const BackendSettings& settings);

pipeline::PipelineConfig make_pipeline_config(const RunConfig& config);

}  // namespace tabtx

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

#include "tabtx/config.hpp"

#include <cstdlib>
#include <fstream>

#include "json.hpp"
#include "tabtx/error.hpp"
#include "tabtx/eval.hpp"
#include "tabtx/tx_structure.hpp"

namespace tabtx {

using json = nlohmann::json;

namespace {

template <typename T>
void read_key(const json& obj, const char* key, T& into) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    into = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config key '" + where + key + "'");
  }
}

}  // namespace

void apply_config_file(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"corpus", "out", "locale", "persona", "theme_instruction", "tokenizer", "parallelism", "skip_invalid",
                  "max_regeneration", "glossary", "template_dir", "prompt_log", "backend"},
                 "");
  read_key(j, "corpus", config.corpus);
  read_key(j, "out", config.out);
  read_key(j, "locale", config.locale);
  read_key(j, "persona", config.persona);
  read_key(j, "theme_instruction", config.theme_instruction);
  read_key(j, "tokenizer", config.tokenizer);
  read_key(j, "parallelism", config.parallelism);
  read_key(j, "skip_invalid", config.skip_invalid);
  read_key(j, "max_regeneration", config.max_regeneration);
  read_key(j, "glossary", config.glossary);
  read_key(j, "template_dir", config.template_dir);
  read_key(j, "prompt_log", config.prompt_log);
  if (auto b = j.find("backend"); b != j.end()) {
    if (!b->is_object()) throw ConfigError("config key 'backend' must be an object");
    reject_unknown(*b,
                   {"kind", "endpoint", "model", "api_key_env", "mock_responses", "timeout_ms", "retries",
                    "backoff_ms", "max_tokens", "temperature"},
                   "backend.");
    auto& s = config.backend;
    read_key(*b, "kind", s.kind);
    read_key(*b, "endpoint", s.endpoint);
    read_key(*b, "model", s.model);
    read_key(*b, "api_key_env", s.api_key_env);
    read_key(*b, "mock_responses", s.mock_responses);
    read_key(*b, "timeout_ms", s.timeout_ms);
    read_key(*b, "retries", s.retries);
    read_key(*b, "backoff_ms", s.backoff_ms);
    read_key(*b, "max_tokens", s.max_tokens);
    read_key(*b, "temperature", s.temperature);
  }
  // Relative paths in a config file resolve against the file's directory.
  const auto base = path.parent_path();
  for (std::string* p : {&config.corpus, &config.glossary, &config.template_dir, &config.backend.mock_responses}) {
    if (!p->empty() && std::filesystem::path(*p).is_relative()) *p = (base / *p).lexically_normal().string();
  }
}

void check_config(const RunConfig& c) {
  if (c.parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (c.max_regeneration < 0) throw ConfigError("max_regeneration must be >= 0");
  if (c.backend.retries < 0) throw ConfigError("backend.retries must be >= 0");
  if (c.backend.max_tokens < 1) throw ConfigError("backend.max_tokens must be >= 1");
  if (c.backend.timeout_ms < 1) throw ConfigError("backend.timeout_ms must be >= 1");
  if (c.backend.kind != "mock" && c.backend.kind != "http") {
    throw ConfigError("backend.kind must be 'mock' or 'http'");
  }
  if (c.locale != "auto" && !tx::parse_locale(c.locale)) throw ConfigError("locale must be en, ko or auto");
  if (c.tokenizer != "auto" && !eval::parse_mode(c.tokenizer)) throw ConfigError("tokenizer must be word, char or auto");
  if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
}

std::unique_ptr<backend::TextBackend> make_backend(const BackendSettings& s) {
  if (s.kind == "mock") {
    if (s.mock_responses.empty()) return std::make_unique<backend::ScriptedBackend>();
    return std::make_unique<backend::ScriptedBackend>(backend::ScriptedBackend::from_file(s.mock_responses));
  }
  if (s.endpoint.empty()) throw ConfigError("http backend needs an endpoint");
  std::string key;
  if (!s.api_key_env.empty()) {
    if (const char* v = std::getenv(s.api_key_env.c_str())) key = v;
  }
  return std::make_unique<backend::HttpBackend>(backend::HttpBackendConfig{s.endpoint, s.model, key});
}

pipeline::PipelineConfig make_pipeline_config(const RunConfig& c) {
  check_config(c);
  pipeline::PipelineConfig p;
  p.locale = c.locale;
  p.prompt_options = {c.persona, c.theme_instruction};
  p.prompts = prompt::PromptLibrary::load(c.template_dir.empty() ? std::nullopt
                                                                  : std::optional<std::filesystem::path>(c.template_dir));
  if (!c.glossary.empty()) p.glossary = prompt::Glossary::load(c.glossary);
  p.max_regeneration = c.max_regeneration;
  for (backend::GenerationParams* g : {&p.step1_params, &p.step2_params}) {
    g->temperature = c.backend.temperature;
    g->max_tokens = c.backend.max_tokens;
    g->timeout = std::chrono::milliseconds(c.backend.timeout_ms);
    g->retries = c.backend.retries;
    g->retry_backoff = std::chrono::milliseconds(c.backend.backoff_ms);
  }
  p.tokenizer = eval::parse_mode(c.tokenizer);
  return p;
}

}  // namespace tabtx

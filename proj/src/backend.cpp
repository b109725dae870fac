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

#include "tabtx/backend.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

#include "tabtx/text.hpp"

namespace tabtx::backend {

using json = nlohmann::json;

std::string_view to_string(BackendErrorKind k) noexcept {
  switch (k) {
    case BackendErrorKind::Timeout: return "Timeout";
    case BackendErrorKind::RateLimited: return "RateLimited";
    case BackendErrorKind::Transport: return "Transport";
    case BackendErrorKind::EmptyCompletion: return "EmptyCompletion";
  }
  return "Transport";
}

BackendError::BackendError(BackendErrorKind kind, const std::string& detail)
    : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

BackendResponse complete_with_retries(const TextBackend& backend, const BackendRequest& request) {
  if (text::trim(request.prompt).empty()) throw BackendError(BackendErrorKind::Transport, "empty prompt");
  auto backoff = request.params.retry_backoff;
  const int attempts = 1 + std::max(0, request.params.retries);
  for (int i = 1;; ++i) {
    try {
      BackendResponse r = backend.complete(request);
      if (text::trim(r.text).empty()) throw BackendError(BackendErrorKind::EmptyCompletion, "backend returned no text");
      return r;
    } catch (const BackendError&) {
      if (i >= attempts) throw;
    }
    if (backoff.count() > 0) std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

std::string apply_stop_sequences(std::string text, const std::vector<std::string>& stops) {
  std::size_t cut = text.size();
  for (const auto& s : stops) {
    if (s.empty()) continue;
    cut = std::min(cut, text.find(s));
  }
  text.resize(cut);
  return text;
}

ScriptedBackend::ScriptedBackend(json script) : script_(std::move(script)) {
  if (!script_.is_object()) throw ConfigError("mock script must be a JSON object");
}

ScriptedBackend ScriptedBackend::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mock responses '" + path.string() + "'");
  try {
    return ScriptedBackend(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("mock responses '" + path.string() + "': " + e.what());
  }
}

namespace {

int approx_tokens(std::string_view s) {
  int n = 0;
  bool in_word = false;
  for (const char c : s) {
    const bool space = c == ' ' || c == '\n' || c == '\t';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

BackendResponse resolve(const json& entry, const BackendRequest& request) {
  const json* e = &entry;
  if (e->is_array()) {
    if (e->empty()) throw ConfigError("mock response list is empty");
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(std::max(0, request.tag.attempt)), e->size() - 1);
    e = &(*e)[idx];
  }
  if (e->is_object()) {
    const std::string kind = e->value("error", "transport");
    if (kind == "timeout") throw BackendError(BackendErrorKind::Timeout, "scripted timeout");
    if (kind == "rate_limited") throw BackendError(BackendErrorKind::RateLimited, "scripted rate limit");
    if (kind == "empty") return BackendResponse{};
    throw BackendError(BackendErrorKind::Transport, "scripted transport failure");
  }
  if (!e->is_string()) throw ConfigError("mock response must be a string, object or array");
  BackendResponse r;
  r.text = apply_stop_sequences(e->get<std::string>(), request.params.stop_sequences);
  r.prompt_tokens = approx_tokens(request.prompt);
  r.completion_tokens = approx_tokens(r.text);
  return r;
}

std::string echo(const BackendRequest& request, const std::string& hash) {
  if (request.tag.step == "step1") {
    std::string out;
    std::size_t start = 0;
    const std::string& p = request.prompt;
    while (start < p.size()) {
      std::size_t end = p.find('\n', start);
      if (end == std::string::npos) end = p.size();
      const std::string_view line(p.data() + start, end - start);
      if (line.starts_with("- ")) out.append(line).push_back('\n');
      start = end + 1;
    }
    if (!out.empty()) return out;
  }
  return "[mock " + hash + "]";
}

}  // namespace

BackendResponse ScriptedBackend::complete(const BackendRequest& request) const {
  const std::string hash = text::fnv1a_hex(request.prompt);
  if (auto prompts = script_.find("prompts"); prompts != script_.end() && prompts->contains(hash)) {
    return resolve((*prompts)[hash], request);
  }
  if (auto docs = script_.find("documents"); docs != script_.end()) {
    if (auto doc = docs->find(request.tag.document_id); doc != docs->end()) {
      if (auto step = doc->find(request.tag.step); step != doc->end()) return resolve(*step, request);
    }
  }
  if (script_.value("fallback", std::string("echo")) == "error") {
    throw BackendError(BackendErrorKind::Transport, "no scripted response for '" + request.tag.document_id + "'");
  }
  BackendResponse r;
  r.text = apply_stop_sequences(echo(request, hash), request.params.stop_sequences);
  r.prompt_tokens = approx_tokens(request.prompt);
  r.completion_tokens = approx_tokens(r.text);
  return r;
}

}  // namespace tabtx::backend

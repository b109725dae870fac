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

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tabtx/error.hpp"

// Text-generation backends: the interface contract, a scripted mock and an
// HTTP chat-completion client.
namespace tabtx::backend {

struct GenerationParams {
  double temperature = 0.0;
  int max_tokens = 512;
  std::vector<std::string> stop_sequences;
  std::chrono::milliseconds timeout{30000};
  int retries = 2;
  std::chrono::milliseconds retry_backoff{250};  // doubled after each failed attempt
};

/// Identifies the pipeline step a request belongs to. Not sent over the wire.
struct RequestTag {
  std::string document_id;
  std::string step;  // "step1" | "step2"
  int attempt = 0;   // step-2 regeneration index
};

struct BackendRequest {
  std::string prompt;
  GenerationParams params;
  RequestTag tag;
};

struct BackendResponse {
  std::string text;
  int prompt_tokens = 0;
  int completion_tokens = 0;
  std::chrono::milliseconds latency{0};
};

enum class BackendErrorKind { Timeout, RateLimited, Transport, EmptyCompletion };

std::string_view to_string(BackendErrorKind k) noexcept;

class BackendError : public Error {
 public:
  BackendError(BackendErrorKind kind, const std::string& detail);
  [[nodiscard]] BackendErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] int exit_code() const noexcept override { return 2; }

 private:
  BackendErrorKind kind_;
};

/// Implementations must be safe to call concurrently.
class TextBackend {
 public:
  virtual ~TextBackend() = default;
  /// One attempt. Throws BackendError.
  virtual BackendResponse complete(const BackendRequest& request) const = 0;
};

/// Calls `backend` up to 1 + params.retries times, sleeping the backoff
/// between failures. Throws the last BackendError. An empty prompt is a
/// Transport error without any attempt.
BackendResponse complete_with_retries(const TextBackend& backend, const BackendRequest& request);

/// Truncates at the earliest stop sequence.
std::string apply_stop_sequences(std::string text, const std::vector<std::string>& stops);

/// Canned responses keyed by prompt hash or by (document id, step). Schema:
///   {"documents": {"<id>": {"step1": R, "step2": R}},
///    "prompts": {"<fnv1a-64 hex of prompt>": R},
///    "fallback": "echo" | "error"}
/// where R is a string, {"error": "timeout|rate_limited|transport|empty"},
/// or an array of those indexed by the request's attempt (last entry repeats).
/// Unscripted requests echo deterministically: step 1 returns the prompt's
/// "- " record lines, step 2 returns "[mock <hash>]".
class ScriptedBackend final : public TextBackend {
 public:
  ScriptedBackend() = default;
  explicit ScriptedBackend(nlohmann::json script);
  static ScriptedBackend from_file(const std::filesystem::path& path);

  BackendResponse complete(const BackendRequest& request) const override;

 private:
  nlohmann::json script_ = nlohmann::json::object();
};

struct HttpBackendConfig {
  std::string endpoint;  // e.g. http://localhost:8080/v1/chat/completions
  std::string model;
  std::string api_key;   // empty: no Authorization header
};

/// POSTs {model, messages, temperature, max_tokens[, stop]} and returns the
/// first choice's message content.
class HttpBackend final : public TextBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  BackendResponse complete(const BackendRequest& request) const override;

  /// Request body for `request`; exposed for wire-format tests.
  [[nodiscard]] nlohmann::json request_body(const BackendRequest& request) const;

 private:
  HttpBackendConfig config_;
  std::string base_;  // scheme://host[:port]
  std::string path_;
};

}  // namespace tabtx::backend

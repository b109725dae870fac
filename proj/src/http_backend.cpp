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

#include <regex>

#include "httplib.h"
#include "tabtx/backend.hpp"

namespace tabtx::backend {

using json = nlohmann::json;

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(config_.endpoint, m, url_re)) {
    throw ConfigError("backend endpoint '" + config_.endpoint + "' is not an http(s) URL");
  }
  base_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/";
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (base_.rfind("https", 0) == 0 || base_.rfind("HTTPS", 0) == 0) {
    throw ConfigError("https endpoints need a build with OpenSSL");
  }
#endif
}

json HttpBackend::request_body(const BackendRequest& request) const {
  json body{
      {"model", config_.model},
      {"messages", json::array({json{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.params.temperature},
      {"max_tokens", request.params.max_tokens},
  };
  if (!request.params.stop_sequences.empty()) body["stop"] = request.params.stop_sequences;
  return body;
}

BackendResponse HttpBackend::complete(const BackendRequest& request) const {
  httplib::Client client(base_);
  const auto timeout = request.params.timeout;
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(path_, headers, request_body(request).dump(), "application/json");
  const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);

  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || (err == httplib::Error::Read && latency >= timeout)) {
      throw BackendError(BackendErrorKind::Timeout, config_.endpoint);
    }
    throw BackendError(BackendErrorKind::Transport, config_.endpoint + ": " + httplib::to_string(err));
  }
  if (res->status == 429) throw BackendError(BackendErrorKind::RateLimited, config_.endpoint);
  if (res->status == 408 || res->status == 504) throw BackendError(BackendErrorKind::Timeout, config_.endpoint);
  if (res->status < 200 || res->status >= 300) {
    throw BackendError(BackendErrorKind::Transport, config_.endpoint + ": HTTP " + std::to_string(res->status));
  }

  BackendResponse out;
  out.latency = latency;
  try {
    const json j = json::parse(res->body);
    const json& choice = j.at("choices").at(0);
    if (choice.contains("message")) {
      out.text = choice.at("message").at("content").get<std::string>();
    } else {
      out.text = choice.at("text").get<std::string>();
    }
    if (auto usage = j.find("usage"); usage != j.end() && usage->is_object()) {
      out.prompt_tokens = usage->value("prompt_tokens", 0);
      out.completion_tokens = usage->value("completion_tokens", 0);
    }
  } catch (const json::exception& e) {
    throw BackendError(BackendErrorKind::Transport, "malformed completion response: " + std::string(e.what()));
  }
  out.text = apply_stop_sequences(std::move(out.text), request.params.stop_sequences);
  if (out.text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw BackendError(BackendErrorKind::EmptyCompletion, config_.endpoint);
  }
  return out;
}

}  // namespace tabtx::backend

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

#include "json.hpp"
#include "tabtx/ingest.hpp"

// Synthetic corpus reconstructing worked table-summary examples, plus the
// scripted backend responses that drive them through the pipeline.
namespace tabtx::fixtures {

ingest::Corpus fixture_corpus();

/// ScriptedBackend script keyed by fixture document id.
nlohmann::json fixture_mock_script();

/// Writes corpus.jsonl and mock_responses.json into `dir`.
void write_fixtures(const std::filesystem::path& dir);

}  // namespace tabtx::fixtures

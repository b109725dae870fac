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

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tabtx/error.hpp"
#include "tabtx/generation_record.hpp"
#include "tabtx/table_model.hpp"

// Line-delimited corpus I/O and pipeline result persistence.
namespace tabtx::ingest {

struct Corpus {
  std::vector<TableDocument> documents;
  std::string source_path;
};

enum class IngestErrorKind { MalformedRecord, DuplicateId, SpanOverlap, HighlightOutOfBounds };

class IngestError : public DataError {
 public:
  IngestError(IngestErrorKind kind, std::size_t line, std::string id, std::optional<Coord> coord,
              const std::string& reason);

  [[nodiscard]] IngestErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t line() const noexcept { return line_; }  // 1-based, 0 when unknown
  [[nodiscard]] const std::string& id() const noexcept { return id_; }
  [[nodiscard]] const std::optional<Coord>& coord() const noexcept { return coord_; }
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

 private:
  IngestErrorKind kind_;
  std::size_t line_;
  std::string id_;
  std::optional<Coord> coord_;
  std::string reason_;
};

struct LoadOptions {
  bool skip_invalid = false;
};

/// A record dropped in skip-invalid mode.
struct SkippedRecord {
  std::size_t line = 0;
  std::string id;
  std::string reason;
};

/// Checks the TableDocument and RawCell invariants. Throws IngestError
/// (line 0) on the first violation.
void validate_document(const TableDocument& doc);

/// Parses one corpus line without validating document invariants.
/// Throws IngestError(MalformedRecord) on schema violations.
TableDocument parse_document(const std::string& line, std::size_t line_no = 0);

nlohmann::ordered_json to_json(const TableDocument& doc);

/// Blank lines are ignored. In strict mode the first invalid record throws;
/// with `skip_invalid` bad records are dropped and reported via `skipped`.
Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options = {},
                   std::vector<SkippedRecord>* skipped = nullptr);

void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

nlohmann::ordered_json to_json(const GenerationRecord& record);

/// One line per record: id, summary, TX verdict, checks and (when a
/// reference was available) metric scores.
void write_results(std::span<const GenerationRecord> records, const std::filesystem::path& path);

/// The subset of a results line the validate/evaluate commands consume.
struct ResultLine {
  std::string id;
  std::string summary;
  bool tx_valid = false;
};

std::vector<ResultLine> read_results(const std::filesystem::path& path);

/// Opens `path` for writing, creating parent directories. Throws Error with
/// path context on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace tabtx::ingest

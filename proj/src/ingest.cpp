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

#include "tabtx/ingest.hpp"

#include <fstream>
#include <set>

#include "tabtx/preprocess.hpp"

namespace tabtx::ingest {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string kind_name(IngestErrorKind k) {
  switch (k) {
    case IngestErrorKind::MalformedRecord: return "MalformedRecord";
    case IngestErrorKind::DuplicateId: return "DuplicateId";
    case IngestErrorKind::SpanOverlap: return "SpanOverlap";
    case IngestErrorKind::HighlightOutOfBounds: return "HighlightOutOfBounds";
  }
  return "MalformedRecord";
}

std::string describe(IngestErrorKind kind, std::size_t line, const std::string& id,
                     const std::optional<Coord>& coord, const std::string& reason) {
  std::string msg = kind_name(kind);
  if (line != 0) msg += " at line " + std::to_string(line);
  if (!id.empty()) msg += " (document '" + id + "')";
  if (coord) msg += " at (" + std::to_string(coord->row) + "," + std::to_string(coord->col) + ")";
  if (!reason.empty()) msg += ": " + reason;
  return msg;
}

[[noreturn]] void malformed(std::size_t line, const std::string& id, const std::string& reason) {
  throw IngestError(IngestErrorKind::MalformedRecord, line, id, std::nullopt, reason);
}

const json& field(const json& obj, const char* key, std::size_t line, const std::string& id) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(line, id, std::string("missing key '") + key + "'");
  return *it;
}

std::string get_string(const json& obj, const char* key, std::size_t line, const std::string& id) {
  const json& v = field(obj, key, line, id);
  if (!v.is_string()) malformed(line, id, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t get_index(const json& v, const char* what, std::size_t line, const std::string& id) {
  if (!v.is_number_unsigned()) malformed(line, id, std::string("'") + what + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

IngestError::IngestError(IngestErrorKind kind, std::size_t line, std::string id, std::optional<Coord> coord,
                         const std::string& reason)
    : DataError(describe(kind, line, id, coord, reason)),
      kind_(kind),
      line_(line),
      id_(std::move(id)),
      coord_(coord),
      reason_(reason) {}

TableDocument parse_document(const std::string& line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    malformed(line_no, "", e.what());
  }
  if (!j.is_object()) malformed(line_no, "", "record is not an object");

  TableDocument doc;
  doc.id = get_string(j, "id", line_no, "");
  const json& meta = field(j, "metadata", line_no, doc.id);
  if (!meta.is_object()) malformed(line_no, doc.id, "'metadata' must be an object");
  doc.metadata.document_title = get_string(meta, "document_title", line_no, doc.id);
  doc.metadata.table_title = get_string(meta, "table_title", line_no, doc.id);
  doc.metadata.publication_date = get_string(meta, "publication_date", line_no, doc.id);
  doc.metadata.publishing_org = get_string(meta, "publishing_org", line_no, doc.id);
  doc.metadata.source_url = get_string(meta, "source_url", line_no, doc.id);

  const json& cells = field(j, "cells", line_no, doc.id);
  if (!cells.is_array()) malformed(line_no, doc.id, "'cells' must be an array");
  for (const json& c : cells) {
    if (!c.is_object()) malformed(line_no, doc.id, "cell is not an object");
    RawCell cell;
    cell.row = get_index(field(c, "row", line_no, doc.id), "row", line_no, doc.id);
    cell.col = get_index(field(c, "col", line_no, doc.id), "col", line_no, doc.id);
    cell.rowspan = get_index(field(c, "rowspan", line_no, doc.id), "rowspan", line_no, doc.id);
    cell.colspan = get_index(field(c, "colspan", line_no, doc.id), "colspan", line_no, doc.id);
    cell.value = get_string(c, "value", line_no, doc.id);
    const json& h = field(c, "is_header", line_no, doc.id);
    if (!h.is_boolean()) malformed(line_no, doc.id, "'is_header' must be a boolean");
    cell.is_header = h.get<bool>();
    doc.cells.push_back(std::move(cell));
  }

  const json& hl = field(j, "highlighted_cells", line_no, doc.id);
  if (!hl.is_array()) malformed(line_no, doc.id, "'highlighted_cells' must be an array");
  for (const json& p : hl) {
    if (!p.is_array() || p.size() != 2) malformed(line_no, doc.id, "highlight must be a [row, col] pair");
    doc.highlighted_cells.push_back(
        {get_index(p[0], "highlight row", line_no, doc.id), get_index(p[1], "highlight col", line_no, doc.id)});
  }

  if (auto it = j.find("reference_summary"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) malformed(line_no, doc.id, "'reference_summary' must be a string");
    doc.reference_summary = it->get<std::string>();
  }
  return doc;
}

void validate_document(const TableDocument& doc) {
  if (doc.id.empty()) malformed(0, doc.id, "empty id");
  for (const auto& c : doc.cells) {
    if (c.rowspan < 1 || c.colspan < 1) {
      throw IngestError(IngestErrorKind::MalformedRecord, 0, doc.id, c.anchor(), "rowspan and colspan must be >= 1");
    }
  }
  if (doc.highlighted_cells.empty()) malformed(0, doc.id, "highlighted_cells is empty");
  NormalizedGrid grid;
  try {
    grid = preprocess::expand_merged_cells(doc.cells);
  } catch (const SpanOverlapError& e) {
    throw IngestError(IngestErrorKind::SpanOverlap, 0, doc.id, Coord{e.row(), e.col()}, "two cells cover this coordinate");
  }
  for (const Coord& h : doc.highlighted_cells) {
    if (!grid.contains(h)) {
      throw IngestError(IngestErrorKind::HighlightOutOfBounds, 0, doc.id, h,
                        "grid is " + std::to_string(grid.rows()) + "x" + std::to_string(grid.cols()));
    }
  }
}

ojson to_json(const TableDocument& doc) {
  ojson j;
  j["id"] = doc.id;
  j["metadata"] = ojson{{"document_title", doc.metadata.document_title},
                        {"table_title", doc.metadata.table_title},
                        {"publication_date", doc.metadata.publication_date},
                        {"publishing_org", doc.metadata.publishing_org},
                        {"source_url", doc.metadata.source_url}};
  ojson cells = ojson::array();
  for (const auto& c : doc.cells) {
    cells.push_back(ojson{{"row", c.row},
                          {"col", c.col},
                          {"rowspan", c.rowspan},
                          {"colspan", c.colspan},
                          {"value", c.value},
                          {"is_header", c.is_header}});
  }
  j["cells"] = std::move(cells);
  ojson hl = ojson::array();
  for (const auto& h : doc.highlighted_cells) hl.push_back(ojson::array({h.row, h.col}));
  j["highlighted_cells"] = std::move(hl);
  if (doc.reference_summary) j["reference_summary"] = *doc.reference_summary;
  return j;
}

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options,
                   std::vector<SkippedRecord>* skipped) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus '" + path.string() + "'");
  Corpus corpus;
  corpus.source_path = path.string();
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      TableDocument doc = parse_document(line, line_no);
      try {
        validate_document(doc);
      } catch (const IngestError& e) {
        throw IngestError(e.kind(), line_no, e.id(), e.coord(), e.reason());
      }
      if (!ids.insert(doc.id).second) {
        throw IngestError(IngestErrorKind::DuplicateId, line_no, doc.id, std::nullopt, "id already used");
      }
      corpus.documents.push_back(std::move(doc));
    } catch (const IngestError& e) {
      if (!options.skip_invalid) throw;
      if (skipped) skipped->push_back({line_no, e.id(), e.what()});
    }
  }
  return corpus;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (const auto& doc : corpus.documents) out << to_json(doc).dump() << '\n';
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

ojson to_json(const GenerationRecord& r) {
  ojson j;
  j["id"] = r.id;
  j["summary"] = r.final_summary;
  j["tx_valid"] = r.tx_valid;
  if (r.failure_reason) j["failure_reason"] = *r.failure_reason;
  j["theme"] = r.parsed.theme.rendered;
  j["explanation"] = r.parsed.explanation;
  ojson checks = ojson::array();
  for (const auto& c : r.validation.checks) {
    checks.push_back(ojson{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["checks"] = std::move(checks);
  j["step1_output"] = r.step1_output;
  j["attempts"] = r.step2_outputs.size();
  if (r.scores) {
    j["scores"] = ojson{{"rouge1", r.scores->rouge1}, {"rougeL", r.scores->rougeL}, {"bleu", r.scores->bleu}};
  }
  return j;
}

void write_results(std::span<const GenerationRecord> records, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (const auto& r : records) out << to_json(r).dump() << '\n';
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<ResultLine> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open results '" + path.string() + "'");
  std::vector<ResultLine> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      ResultLine r;
      r.id = j.at("id").get<std::string>();
      r.summary = j.at("summary").get<std::string>();
      r.tx_valid = j.value("tx_valid", false);
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw DataError("results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace tabtx::ingest

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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tabtx {

/// 0-based (row, col) grid position.
struct Coord {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// A source cell anchored at its top-left corner.
struct RawCell {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t rowspan = 1;
  std::size_t colspan = 1;
  std::string value;
  bool is_header = false;

  [[nodiscard]] Coord anchor() const noexcept { return {row, col}; }
  [[nodiscard]] bool covers(Coord c) const noexcept {
    return c.row >= row && c.row < row + rowspan && c.col >= col && c.col < col + colspan;
  }
  friend bool operator==(const RawCell&, const RawCell&) = default;
};

struct TableMetadata {
  std::string document_title;
  std::string table_title;
  std::string publication_date;
  std::string publishing_org;
  std::string source_url;

  friend bool operator==(const TableMetadata&, const TableMetadata&) = default;
};

struct TableDocument {
  std::string id;
  TableMetadata metadata;
  std::vector<RawCell> cells;
  std::vector<Coord> highlighted_cells;
  std::optional<std::string> reference_summary;

  friend bool operator==(const TableDocument&, const TableDocument&) = default;
};

struct GridEntry {
  std::string value;
  bool is_header = false;
  Coord origin;
  bool is_padding = true;

  friend bool operator==(const GridEntry&, const GridEntry&) = default;
};

/// Dense row-major grid produced by merged-cell expansion.
class NormalizedGrid {
 public:
  NormalizedGrid() = default;
  NormalizedGrid(std::size_t rows, std::size_t cols);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool contains(Coord c) const noexcept { return c.row < rows_ && c.col < cols_; }

  [[nodiscard]] const GridEntry& at(std::size_t row, std::size_t col) const;
  [[nodiscard]] GridEntry& at(std::size_t row, std::size_t col);
  [[nodiscard]] const GridEntry& at(Coord c) const { return at(c.row, c.col); }
  [[nodiscard]] GridEntry& at(Coord c) { return at(c.row, c.col); }

  [[nodiscard]] const std::vector<GridEntry>& entries() const noexcept { return entries_; }

  friend bool operator==(const NormalizedGrid&, const NormalizedGrid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GridEntry> entries_;
};

struct KeyValueRecord {
  std::vector<std::string> key_chain;  // row headers, then column headers; outermost first
  std::string value;
  Coord coordinate;
  bool highlighted = false;

  friend bool operator==(const KeyValueRecord&, const KeyValueRecord&) = default;
};

/// A header entry sharing a row or column with a highlighted cell.
struct RelatedHeader {
  Coord coordinate;
  std::string value;

  friend auto operator<=>(const RelatedHeader&, const RelatedHeader&) = default;
};

/// A highlighted record with every header sharing its row or column attached.
struct RelatedRecord {
  KeyValueRecord record;
  std::vector<RelatedHeader> context;  // row-major order

  /// Context headers whose value is not already part of the key chain.
  [[nodiscard]] std::vector<std::string> extra_context() const;

  friend bool operator==(const RelatedRecord&, const RelatedRecord&) = default;
};

enum class CellType { Monetary, Percentage, PlainNumeric, Categorical, Textual };

enum class AnalysisMethod { Enumeration, MagnitudeComparison, TrendAnalysis };

[[nodiscard]] std::string_view to_string(CellType t) noexcept;
[[nodiscard]] std::string_view to_string(AnalysisMethod m) noexcept;
[[nodiscard]] bool is_numeric(CellType t) noexcept;

inline constexpr CellType kAllCellTypes[] = {CellType::Monetary, CellType::Percentage,
                                             CellType::PlainNumeric, CellType::Categorical,
                                             CellType::Textual};

struct ThemePart {
  std::string citation_expression;
  std::string title_phrase;
  std::string rendered;

  friend bool operator==(const ThemePart&, const ThemePart&) = default;
};

struct TXSummary {
  ThemePart theme;
  std::string explanation;
  std::string full_text;

  friend bool operator==(const TXSummary&, const TXSummary&) = default;
};

}  // namespace tabtx

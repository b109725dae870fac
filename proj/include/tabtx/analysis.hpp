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
#include <string_view>
#include <vector>

#include "tabtx/table_model.hpp"

// Reasoning substrate for the recognition step: cell typing, numeric
// normalization and analysis-method selection.
namespace tabtx::analysis {

struct ParsedNumber {
  double value = 0.0;               // unit words folded in: "9.435 trillion" -> 9.435e12
  std::optional<std::string> unit;  // residual token, e.g. "KRW", "%", "명"

  friend bool operator==(const ParsedNumber&, const ParsedNumber&) = default;
};

/// Ordered rule table, first match wins:
///   number whose unit carries a percent marker   -> Percentage
///   number whose unit carries a currency marker  -> Monetary
///   any other number                             -> PlainNumeric
///   <= 20 code points, no sentence-final mark    -> Categorical
///   otherwise                                    -> Textual
/// A "number" is an optionally signed decimal with thousands separators,
/// optional Korean (십 백 천 만 억 조 경) or English (thousand .. trillion)
/// scale words, compound Korean groups ("61조 3,010억"), an optional leading
/// currency symbol and a short digit-free trailing unit.
CellType classify_cell_type(std::string_view value);

/// Returns nullopt for Categorical/Textual. Throws NumericParseError when the
/// type is numeric but the value holds no parseable number.
std::optional<ParsedNumber> parse_numeric(std::string_view value, CellType cell_type);

struct TypedCell {
  KeyValueRecord record;
  CellType cell_type = CellType::Textual;
  std::optional<double> numeric_value;
  std::optional<std::string> unit;
};

/// Classifies and, for numeric types, normalizes one record.
TypedCell type_cell(const KeyValueRecord& record);

/// Position on a time axis decoded from a header label.
struct TemporalKey {
  std::optional<int> year;
  int granularity = 0;  // 0 year only, 1 half, 2 quarter, 3 month
  int index = 0;

  [[nodiscard]] bool same_shape(const TemporalKey& o) const noexcept {
    return year.has_value() == o.year.has_value() && granularity == o.granularity;
  }
  friend auto operator<=>(const TemporalKey&, const TemporalKey&) = default;
};

/// Recognizes years ("2020", "2020년", "FY2020"), year-months ("2020-03",
/// "2020년 3월"), quarters ("Q1 2020", "2020 Q1", "1분기") and halves
/// ("H1", "상반기", "first half").
std::optional<TemporalKey> parse_temporal(std::string_view header);

struct AnalysisPlan {
  AnalysisMethod method = AnalysisMethod::Enumeration;
  std::vector<TypedCell> ordered_cells;
  std::optional<std::string> axis;
  std::vector<double> deltas;  // consecutive differences, TrendAnalysis only
};

/// Decision procedure:
///   single cell                                            -> Enumeration
///   one numeric type, one unit, totally ordered time axis  -> TrendAnalysis
///   one numeric type, one unit                             -> MagnitudeComparison
///   otherwise                                              -> Enumeration
/// Headers considered for the time axis are the key chain plus every header
/// sharing the cell's row or column in `grid`.
AnalysisPlan select_analysis_method(std::span<const TypedCell> cells, const NormalizedGrid& grid);

}  // namespace tabtx::analysis

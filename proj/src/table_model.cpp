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

#include "tabtx/table_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace tabtx {

NormalizedGrid::NormalizedGrid(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) entries_[r * cols + c].origin = {r, c};
  }
}

const GridEntry& NormalizedGrid::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("grid coordinate out of range");
  return entries_[row * cols_ + col];
}

GridEntry& NormalizedGrid::at(std::size_t row, std::size_t col) {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("grid coordinate out of range");
  return entries_[row * cols_ + col];
}

std::vector<std::string> RelatedRecord::extra_context() const {
  std::vector<std::string> out;
  for (const auto& h : context) {
    const bool in_chain =
        std::find(record.key_chain.begin(), record.key_chain.end(), h.value) != record.key_chain.end();
    const bool seen = std::find(out.begin(), out.end(), h.value) != out.end();
    if (!in_chain && !seen && !h.value.empty()) out.push_back(h.value);
  }
  return out;
}

std::string_view to_string(CellType t) noexcept {
  switch (t) {
    case CellType::Monetary: return "Monetary";
    case CellType::Percentage: return "Percentage";
    case CellType::PlainNumeric: return "PlainNumeric";
    case CellType::Categorical: return "Categorical";
    case CellType::Textual: return "Textual";
  }
  return "Textual";
}

std::string_view to_string(AnalysisMethod m) noexcept {
  switch (m) {
    case AnalysisMethod::Enumeration: return "Enumeration";
    case AnalysisMethod::MagnitudeComparison: return "MagnitudeComparison";
    case AnalysisMethod::TrendAnalysis: return "TrendAnalysis";
  }
  return "Enumeration";
}

bool is_numeric(CellType t) noexcept {
  return t == CellType::Monetary || t == CellType::Percentage || t == CellType::PlainNumeric;
}

}  // namespace tabtx

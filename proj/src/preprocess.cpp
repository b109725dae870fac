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

#include "tabtx/preprocess.hpp"

#include <algorithm>

#include "tabtx/error.hpp"

namespace tabtx::preprocess {

NormalizedGrid expand_merged_cells(std::span<const RawCell> cells) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& cell : cells) {
    rows = std::max(rows, cell.row + cell.rowspan);
    cols = std::max(cols, cell.col + cell.colspan);
  }
  NormalizedGrid grid(rows, cols);
  for (const auto& cell : cells) {
    for (std::size_t r = cell.row; r < cell.row + cell.rowspan; ++r) {
      for (std::size_t c = cell.col; c < cell.col + cell.colspan; ++c) {
        GridEntry& e = grid.at(r, c);
        if (!e.is_padding) throw SpanOverlapError(r, c);
        e = GridEntry{cell.value, cell.is_header, cell.anchor(), false};
      }
    }
  }
  return grid;
}

NormalizedGrid infer_headers(NormalizedGrid grid) {
  const auto& entries = grid.entries();
  if (std::any_of(entries.begin(), entries.end(), [](const GridEntry& e) { return e.is_header; })) {
    return grid;
  }
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      GridEntry& e = grid.at(r, c);
      if ((r == 0 || c == 0) && !e.is_padding) e.is_header = true;
    }
  }
  return grid;
}

namespace {

bool contains(std::span<const Coord> coords, Coord c) {
  return std::find(coords.begin(), coords.end(), c) != coords.end();
}

// Header values along one line of the grid, skipping repeats of a merged
// header that has already contributed (same origin).
void append_headers(const NormalizedGrid& grid, Coord from, Coord step, std::size_t count,
                    std::vector<std::string>& chain) {
  std::vector<Coord> seen;
  Coord at = from;
  for (std::size_t i = 0; i < count; ++i) {
    const GridEntry& e = grid.at(at);
    if (e.is_header && !e.is_padding && !contains(seen, e.origin)) {
      seen.push_back(e.origin);
      chain.push_back(e.value);
    }
    at.row += step.row;
    at.col += step.col;
  }
}

}  // namespace

std::vector<KeyValueRecord> to_key_value_records(const NormalizedGrid& grid,
                                                 std::span<const Coord> highlights) {
  std::vector<KeyValueRecord> records;
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const GridEntry& e = grid.at(r, c);
      if (e.is_header || e.is_padding || e.value.empty()) continue;
      KeyValueRecord rec;
      rec.value = e.value;
      rec.coordinate = {r, c};
      rec.highlighted = contains(highlights, rec.coordinate);
      append_headers(grid, {r, 0}, {0, 1}, c, rec.key_chain);
      append_headers(grid, {0, c}, {1, 0}, r, rec.key_chain);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<RelatedRecord> filter_related(std::span<const KeyValueRecord> records,
                                          const NormalizedGrid& grid,
                                          std::span<const Coord> highlights) {
  std::vector<RelatedRecord> out;
  for (const auto& rec : records) {
    if (!contains(highlights, rec.coordinate)) continue;
    RelatedRecord related{rec, {}};
    related.record.highlighted = true;
    const Coord at = rec.coordinate;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      for (std::size_t c = 0; c < grid.cols(); ++c) {
        if ((r != at.row && c != at.col) || (r == at.row && c == at.col)) continue;
        const GridEntry& e = grid.at(r, c);
        if (e.is_header && !e.is_padding) related.context.push_back({{r, c}, e.value});
      }
    }
    out.push_back(std::move(related));
  }
  if (out.empty()) throw EmptyResultError("no highlighted data cell");
  return out;
}

PreparedTable prepare(const TableDocument& doc) {
  PreparedTable out;
  out.grid = infer_headers(expand_merged_cells(doc.cells));
  const auto records = to_key_value_records(out.grid, doc.highlighted_cells);
  out.related = filter_related(records, out.grid, doc.highlighted_cells);
  return out;
}

}  // namespace tabtx::preprocess

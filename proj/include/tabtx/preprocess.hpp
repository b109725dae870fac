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

#include <span>
#include <vector>

#include "tabtx/table_model.hpp"

// Table normalization: merged-cell replication, header inference, key-value
// flattening and related-cell filtering.
namespace tabtx::preprocess {

/// Replicates every span's value, header flag and origin across the
/// coordinates it covers. Coordinates covered by no cell become padding.
/// Throws SpanOverlapError on the first doubly-covered coordinate
/// (row-major scan order of the offending cell).
NormalizedGrid expand_merged_cells(std::span<const RawCell> cells);

/// Returns the grid unchanged when any entry carries a header flag;
/// otherwise marks row 0 and column 0 (non-padding entries only) as headers.
NormalizedGrid infer_headers(NormalizedGrid grid);

/// One record per non-header, non-padding, non-empty entry, in row-major order.
std::vector<KeyValueRecord> to_key_value_records(const NormalizedGrid& grid,
                                                 std::span<const Coord> highlights);

/// Keeps the highlighted records and attaches, for each, every header entry
/// sharing its row or column. Throws EmptyResultError when nothing survives.
std::vector<RelatedRecord> filter_related(std::span<const KeyValueRecord> records,
                                          const NormalizedGrid& grid,
                                          std::span<const Coord> highlights);

struct PreparedTable {
  NormalizedGrid grid;  // headers resolved
  std::vector<RelatedRecord> related;
};

/// expand -> infer -> flatten -> filter, the sequence the pipeline runs.
PreparedTable prepare(const TableDocument& doc);

}  // namespace tabtx::preprocess

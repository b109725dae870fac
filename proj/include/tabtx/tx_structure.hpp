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
#include <string>
#include <string_view>
#include <vector>

#include "tabtx/table_model.hpp"

// Theme-Explanation sentence structure: composition, parsing, validation.
namespace tabtx::tx {

enum class Locale { En, Ko };

std::string_view to_string(Locale l) noexcept;
std::optional<Locale> parse_locale(std::string_view tag) noexcept;  // "en" | "ko"

/// "auto" picks Korean when the title contains Hangul.
Locale resolve_locale(std::string_view setting, std::string_view table_title);

/// Citation markers recognized for a locale. The first one is used when
/// composing. English markers open the sentence ("According to X,");
/// Korean markers are postpositional ("X에 따르면").
const std::vector<std::string>& citation_markers(Locale locale);

/// Throws EmptyTitleError for a blank title.
ThemePart compose_theme_part(std::string_view table_title, Locale locale);

/// Theme followed by a single space and the explanation clause.
std::string compose_sentence(const ThemePart& theme, std::string_view explanation);

/// Splits at the earliest citation marker. Total: when no marker (or, for
/// English, no delimiting comma) is found the theme is empty and the whole
/// trimmed text is the explanation.
TXSummary parse_tx_summary(std::string_view text, std::string_view table_title, Locale locale);

struct TXCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct TXValidationReport {
  bool valid = false;
  std::vector<TXCheck> checks;

  [[nodiscard]] std::vector<std::string> failed_checks() const;
  [[nodiscard]] const TXCheck* find(std::string_view name) const noexcept;
};

/// Runs has_citation_expression, theme_contains_title_phrase,
/// theme_is_prefix, explanation_nonempty and single_sentence.
TXValidationReport validate_tx(const TXSummary& summary, std::string_view table_title);

/// Case-folded, whitespace-collapsed form used for title containment. Korean
/// titles additionally lose one trailing particle.
std::string normalize_title(std::string_view title);

/// Number of sentence terminators (runs of . ! ? and their full-width forms
/// followed by whitespace or end of text).
std::size_t count_sentence_terminators(std::string_view text);

}  // namespace tabtx::tx

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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tabtx/analysis.hpp"
#include "tabtx/table_model.hpp"
#include "tabtx/tx_structure.hpp"

// Two-step prompt construction: data recognition, then persona-guided
// sentence generation.
namespace tabtx::prompt {

/// Placeholders a template body may reference, written `{name}`.
const std::vector<std::string>& known_placeholders();

struct PromptTemplate {
  std::string name;
  std::string locale;
  std::string body;
};

/// Placeholder names in order of appearance (duplicates kept).
std::vector<std::string> placeholders(std::string_view body);

/// Throws TemplateError on an empty body or an unknown placeholder.
void check_template(const PromptTemplate& t);

using Context = std::map<std::string, std::string, std::less<>>;

/// Single-pass substitution; substituted text is never re-scanned. Throws
/// TemplateError when a placeholder has no value in `ctx`.
std::string render(const PromptTemplate& t, const Context& ctx);

/// Every template and fixed text block for one locale.
struct PromptSet {
  PromptTemplate recognition;
  PromptTemplate generation;
  PromptTemplate persona;           // journalist preamble, prepended to step 2
  PromptTemplate theme_instruction; // fills {theme_instruction} in step 2
  PromptTemplate correction;        // appended when a step-2 answer fails validation
};

PromptSet builtin_prompt_set(tx::Locale locale);

/// Template files are named `<step>.<locale>.txt` with step one of
/// recognition, generation, persona, theme, correction. Missing files fall
/// back to the built-in text.
PromptSet load_prompt_set(tx::Locale locale, const std::optional<std::filesystem::path>& dir);

/// Writes the built-in templates for both locales into `dir`.
void write_builtin_templates(const std::filesystem::path& dir);

struct PromptLibrary {
  PromptSet en;
  PromptSet ko;

  [[nodiscard]] const PromptSet& get(tx::Locale l) const noexcept { return l == tx::Locale::Ko ? ko : en; }
  static PromptLibrary load(const std::optional<std::filesystem::path>& dir);
};

/// Administrative-term glossary: `term<TAB>definition` or `term: definition`
/// per line, `#` comments.
struct Glossary {
  std::vector<std::pair<std::string, std::string>> entries;

  static Glossary load(const std::filesystem::path& path);
  /// Entries whose term occurs in `haystack`, one "- term: definition" line
  /// each; "(none)" when nothing matches.
  [[nodiscard]] std::string render_for(std::string_view haystack) const;
};

struct PromptOptions {
  bool persona = true;
  bool theme_instruction = true;
};

/// "- header > header: value [CellType] (related: ...)" per record.
std::string serialize_records(std::span<const RelatedRecord> records, const analysis::AnalysisPlan& plan);

std::string serialize_plan(const analysis::AnalysisPlan& plan);

std::string build_recognition_prompt(std::span<const RelatedRecord> records, const analysis::AnalysisPlan& plan,
                                     const TableMetadata& metadata, const PromptTemplate& tmpl,
                                     const Glossary& glossary = {});

std::string build_generation_prompt(std::string_view step1_output, const TableMetadata& metadata,
                                    const PromptSet& set, const PromptOptions& options = {});

/// Corrective instruction appended to a rejected step-2 prompt.
std::string build_correction(const PromptSet& set, const TableMetadata& metadata,
                             std::span<const std::string> failed_checks);

}  // namespace tabtx::prompt

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

#include "tabtx/prompt.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tabtx/error.hpp"
#include "tabtx/text.hpp"

namespace tabtx::prompt {

namespace {

// Built-in wording. The recognition prompt walks the model through typing,
// unit normalization and the chosen analysis method; the generation prompt
// carries the Theme-Explanation instruction.
constexpr std::string_view kRecognitionEn = R"(You are preparing the facts for a one-sentence summary of a table.

Document: {document_title}
Table title: {table_title}
Published by {publishing_org} on {publication_date}

Highlighted cells as key-value records (header chain: value [cell type]):
{records}

Analysis plan:
{analysis_plan}

Glossary:
{glossary}

Step 1. Data recognition and classification.
1. For each highlighted value, say what it measures using its header chain and related headers.
2. Confirm its type (monetary amount, percentage, plain number, category or text) and restate numbers in consistent units.
3. Apply the analysis method of the plan (enumeration, magnitude comparison or trend analysis) and list the key facts.
Answer with a short numbered list of facts. Do not write the final sentence yet.
)";

constexpr std::string_view kGenerationEn = R"(Step 2. Sentence generation.
Facts identified from the table:
{step1_output}

Table title: {table_title}

{theme_instruction}Write exactly one sentence that summarizes the highlighted data. Keep the numbers exactly as given and do not speculate beyond the facts.
)";

constexpr std::string_view kPersonaEn =
    R"(You are a journalist writing a straight news article. Report only facts taken from the source, concisely and objectively, and always state where the information comes from.)";

constexpr std::string_view kThemeEn =
    R"(Begin the sentence with the Theme Part "According to {table_title}," and continue with the Explanation Part, a predicate clause that explains the highlighted values.
)";

constexpr std::string_view kCorrectionEn =
    R"(The previous answer did not follow the required format (failed checks: {failed_checks}). Rewrite it as a single sentence that begins with "According to {table_title},".)";

constexpr std::string_view kRecognitionKo = R"(표의 내용을 한 문장으로 요약하기 위한 사실을 정리합니다.

문서 제목: {document_title}
표 제목: {table_title}
발행 기관: {publishing_org} ({publication_date})

강조된 셀의 키-값 목록 (헤더 경로: 값 [셀 유형]):
{records}

분석 계획:
{analysis_plan}

용어 사전:
{glossary}

1단계. 데이터 인식 및 분류.
1. 강조된 각 값이 무엇을 나타내는지 헤더 경로와 관련 헤더를 이용해 설명하십시오.
2. 값의 유형(금액, 백분율, 일반 수치, 범주, 텍스트)을 확인하고 수치는 한국어 표기 관례에 맞게 단위를 통일하십시오.
3. 분석 계획의 방법(나열, 크기 비교, 추세 분석)을 적용하여 핵심 사실을 정리하십시오.
번호를 붙인 짧은 사실 목록으로 답하고, 최종 문장은 아직 작성하지 마십시오.
)";

constexpr std::string_view kGenerationKo = R"(2단계. 문장 생성.
표에서 확인한 사실:
{step1_output}

표 제목: {table_title}

{theme_instruction}강조된 데이터를 요약하는 한 문장만 작성하십시오. 수치는 주어진 그대로 쓰고 사실을 넘어서는 추측은 하지 마십시오.
)";

constexpr std::string_view kPersonaKo =
    R"(당신은 스트레이트 기사를 쓰는 기자입니다. 출처에 있는 사실만 간결하고 객관적으로 전달하고, 정보의 출처를 반드시 밝히십시오.)";

constexpr std::string_view kThemeKo =
    R"(문장은 반드시 "{table_title}에 따르면"으로 시작하는 주제부(Theme Part)로 시작하고, 이어서 강조된 값을 설명하는 서술부(Explanation Part)를 쓰십시오.
)";

constexpr std::string_view kCorrectionKo =
    R"(이전 답변이 요구된 형식을 따르지 않았습니다(실패한 검사: {failed_checks}). "{table_title}에 따르면"으로 시작하는 한 문장으로 다시 쓰십시오.)";

PromptTemplate make(std::string name, tx::Locale locale, std::string_view body) {
  return PromptTemplate{std::move(name), std::string(tx::to_string(locale)), std::string(body)};
}

bool is_name_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; }

// Finds the next `{name}` token at or after `from`; returns npos when none.
std::size_t next_placeholder(std::string_view body, std::size_t from, std::string_view& name) {
  for (std::size_t open = body.find('{', from); open != std::string_view::npos; open = body.find('{', open + 1)) {
    std::size_t end = open + 1;
    while (end < body.size() && is_name_char(body[end])) ++end;
    if (end > open + 1 && end < body.size() && body[end] == '}') {
      name = body.substr(open + 1, end - open - 1);
      return open;
    }
  }
  return std::string_view::npos;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const analysis::TypedCell* find_cell(const analysis::AnalysisPlan& plan, Coord at) {
  for (const auto& c : plan.ordered_cells) {
    if (c.record.coordinate == at) return &c;
  }
  return nullptr;
}

std::string describe_value(const analysis::TypedCell& c) {
  std::string out = c.record.value;
  if (c.numeric_value) {
    out += " (normalized " + text::format_number(*c.numeric_value);
    if (c.unit) out += " " + *c.unit;
    out += ")";
  }
  return out;
}

std::string chain_label(const KeyValueRecord& r) {
  return r.key_chain.empty() ? std::string("(no header)") : text::join(r.key_chain, " > ");
}

}  // namespace

const std::vector<std::string>& known_placeholders() {
  static const std::vector<std::string> names{
      "table_title",  "document_title", "publishing_org", "publication_date",  "records",
      "analysis_plan", "step1_output",  "glossary",       "theme_instruction", "failed_checks"};
  return names;
}

std::vector<std::string> placeholders(std::string_view body) {
  std::vector<std::string> out;
  std::string_view name;
  for (std::size_t at = next_placeholder(body, 0, name); at != std::string_view::npos;
       at = next_placeholder(body, at + name.size() + 2, name)) {
    out.emplace_back(name);
  }
  return out;
}

void check_template(const PromptTemplate& t) {
  if (text::trim(t.body).empty()) throw TemplateError("template '" + t.name + "' has an empty body");
  const auto& known = known_placeholders();
  for (const auto& p : placeholders(t.body)) {
    if (std::find(known.begin(), known.end(), p) == known.end()) {
      throw TemplateError("template '" + t.name + "' uses unknown placeholder {" + p + "}");
    }
  }
}

std::string render(const PromptTemplate& t, const Context& ctx) {
  check_template(t);
  std::string out;
  std::string_view body = t.body;
  std::size_t pos = 0;
  std::string_view name;
  for (std::size_t at = next_placeholder(body, 0, name); at != std::string_view::npos;
       at = next_placeholder(body, pos, name)) {
    out.append(body.substr(pos, at - pos));
    auto it = ctx.find(name);
    if (it == ctx.end()) {
      throw TemplateError("template '" + t.name + "' placeholder {" + std::string(name) + "} has no value");
    }
    out.append(it->second);
    pos = at + name.size() + 2;
  }
  out.append(body.substr(pos));
  return out;
}

PromptSet builtin_prompt_set(tx::Locale locale) {
  const bool ko = locale == tx::Locale::Ko;
  return PromptSet{
      make("recognition", locale, ko ? kRecognitionKo : kRecognitionEn),
      make("generation", locale, ko ? kGenerationKo : kGenerationEn),
      make("persona", locale, ko ? kPersonaKo : kPersonaEn),
      make("theme", locale, ko ? kThemeKo : kThemeEn),
      make("correction", locale, ko ? kCorrectionKo : kCorrectionEn),
  };
}

PromptSet load_prompt_set(tx::Locale locale, const std::optional<std::filesystem::path>& dir) {
  PromptSet set = builtin_prompt_set(locale);
  if (!dir) return set;
  const std::string loc(tx::to_string(locale));
  for (PromptTemplate* t : {&set.recognition, &set.generation, &set.persona, &set.theme_instruction, &set.correction}) {
    const auto file = *dir / (t->name + "." + loc + ".txt");
    if (std::filesystem::exists(file)) {
      t->body = read_file(file);
      check_template(*t);
    }
  }
  return set;
}

void write_builtin_templates(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto locale : {tx::Locale::En, tx::Locale::Ko}) {
    const PromptSet set = builtin_prompt_set(locale);
    for (const PromptTemplate* t : {&set.recognition, &set.generation, &set.persona, &set.theme_instruction,
                                    &set.correction}) {
      std::ofstream out(dir / (t->name + "." + t->locale + ".txt"), std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot write templates into '" + dir.string() + "'");
      out << t->body;
    }
  }
}

PromptLibrary PromptLibrary::load(const std::optional<std::filesystem::path>& dir) {
  return PromptLibrary{load_prompt_set(tx::Locale::En, dir), load_prompt_set(tx::Locale::Ko, dir)};
}

Glossary Glossary::load(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  Glossary g;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view l = text::trim(line);
    if (l.empty() || l.front() == '#') continue;
    std::size_t sep = l.find('\t');
    std::size_t skip = 1;
    if (sep == std::string_view::npos) {
      sep = l.find(": ");
      skip = 2;
    }
    if (sep == std::string_view::npos) throw ConfigError("glossary line without separator: " + std::string(l));
    g.entries.emplace_back(std::string(text::trim(l.substr(0, sep))), std::string(text::trim(l.substr(sep + skip))));
  }
  return g;
}

std::string Glossary::render_for(std::string_view haystack) const {
  std::string out;
  for (const auto& [term, definition] : entries) {
    if (term.empty() || haystack.find(term) == std::string_view::npos) continue;
    out += "- " + term + ": " + definition + "\n";
  }
  if (out.empty()) return "(none)";
  out.pop_back();
  return out;
}

std::string serialize_records(std::span<const RelatedRecord> records, const analysis::AnalysisPlan& plan) {
  std::string out;
  for (const auto& rr : records) {
    const KeyValueRecord& r = rr.record;
    out += "- " + chain_label(r) + ": ";
    if (const auto* cell = find_cell(plan, r.coordinate)) {
      out += describe_value(*cell) + " [" + std::string(to_string(cell->cell_type)) + "]";
    } else {
      out += r.value;
    }
    if (const auto extra = rr.extra_context(); !extra.empty()) out += " (related: " + text::join(extra, "; ") + ")";
    out += "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

std::string serialize_plan(const analysis::AnalysisPlan& plan) {
  std::string out = "Method: " + std::string(to_string(plan.method));
  if (plan.axis) out += "\nAxis: " + *plan.axis;
  std::vector<std::string> order;
  for (const auto& c : plan.ordered_cells) order.push_back(chain_label(c.record) + " = " + c.record.value);
  const char* sep = plan.method == AnalysisMethod::MagnitudeComparison ? " >= " : " -> ";
  if (plan.method == AnalysisMethod::Enumeration) sep = "; ";
  out += "\nOrder: " + text::join(order, sep);
  if (!plan.deltas.empty()) {
    std::vector<std::string> deltas;
    for (const double d : plan.deltas) {
      std::string s = (d >= 0 ? "+" : "") + text::format_number(d);
      if (plan.ordered_cells.front().unit) s += " " + *plan.ordered_cells.front().unit;
      deltas.push_back(std::move(s));
    }
    out += "\nChanges: " + text::join(deltas, ", ");
  }
  return out;
}

std::string build_recognition_prompt(std::span<const RelatedRecord> records, const analysis::AnalysisPlan& plan,
                                     const TableMetadata& metadata, const PromptTemplate& tmpl,
                                     const Glossary& glossary) {
  if (records.empty()) throw EmptyResultError("recognition prompt needs at least one record");
  const std::string serialized = serialize_records(records, plan);
  const Context ctx{
      {"table_title", metadata.table_title},
      {"document_title", metadata.document_title},
      {"publishing_org", metadata.publishing_org},
      {"publication_date", metadata.publication_date},
      {"records", serialized},
      {"analysis_plan", serialize_plan(plan)},
      {"glossary", glossary.render_for(metadata.table_title + "\n" + serialized)},
  };
  return render(tmpl, ctx);
}

std::string build_generation_prompt(std::string_view step1_output, const TableMetadata& metadata,
                                    const PromptSet& set, const PromptOptions& options) {
  if (text::trim(step1_output).empty()) throw DataError("step-1 output is empty");
  Context ctx{
      {"table_title", metadata.table_title},
      {"document_title", metadata.document_title},
      {"publishing_org", metadata.publishing_org},
      {"publication_date", metadata.publication_date},
      {"step1_output", std::string(text::trim(step1_output))},
  };
  ctx["theme_instruction"] = options.theme_instruction ? render(set.theme_instruction, ctx) : std::string();
  std::string prompt;
  if (options.persona) prompt = render(set.persona, ctx) + "\n\n";
  prompt += render(set.generation, ctx);
  return prompt;
}

std::string build_correction(const PromptSet& set, const TableMetadata& metadata,
                             std::span<const std::string> failed_checks) {
  const Context ctx{
      {"table_title", metadata.table_title},
      {"failed_checks", text::join(std::vector<std::string>(failed_checks.begin(), failed_checks.end()), ", ")},
  };
  return render(set.correction, ctx);
}

}  // namespace tabtx::prompt

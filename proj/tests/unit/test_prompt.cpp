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

#include "doctest.h"

#include "support.hpp"
#include "tabtx/analysis.hpp"
#include "tabtx/error.hpp"
#include "tabtx/preprocess.hpp"
#include "tabtx/prompt.hpp"

using namespace tabtx;
using namespace tabtx::prompt;
using testing::fixture;
using testing::TempDir;

namespace {

struct Prepared {
  std::vector<RelatedRecord> related;
  analysis::AnalysisPlan plan;
};

Prepared prepared(const std::string& id) {
  auto p = preprocess::prepare(fixture(id));
  std::vector<analysis::TypedCell> cells;
  for (const auto& r : p.related) cells.push_back(analysis::type_cell(r.record));
  return {p.related, analysis::select_analysis_method(cells, p.grid)};
}

}  // namespace

TEST_CASE("placeholders and rendering") {
  CHECK(placeholders("a {table_title} {x y} {records}{} {Upper}") ==
        std::vector<std::string>{"table_title", "records"});
  const PromptTemplate t{"t", "en", "Title: {table_title}; {records}"};
  CHECK(render(t, {{"table_title", "T"}, {"records", "{table_title}"}}) == "Title: T; {table_title}");
  CHECK_THROWS_AS(render(t, {{"table_title", "T"}}), TemplateError);
  CHECK_THROWS_AS(check_template({"e", "en", "  \n"}), TemplateError);
  CHECK_THROWS_AS(check_template({"u", "en", "{nope}"}), TemplateError);
  CHECK_NOTHROW(check_template({"j", "en", "json {\"a\": 1}"}));
}

TEST_CASE("built-in templates only use known placeholders") {
  for (auto locale : {tx::Locale::En, tx::Locale::Ko}) {
    const auto set = builtin_prompt_set(locale);
    for (const auto* t : {&set.recognition, &set.generation, &set.persona, &set.theme_instruction, &set.correction}) {
      CHECK_NOTHROW(check_template(*t));
      CHECK(t->locale == tx::to_string(locale));
    }
  }
}

TEST_CASE("recognition prompt for the refugee table") {
  const auto p = prepared("refugee-status");
  const auto& doc = fixture("refugee-status");
  const auto set = builtin_prompt_set(tx::Locale::En);
  const auto prompt = build_recognition_prompt(p.related, p.plan, doc.metadata, set.recognition);
  CHECK(prompt.find("- Total > Applications: 2,437 (normalized 2437) [PlainNumeric]") != std::string::npos);
  CHECK(prompt.find("- Total > Approved: 147 (normalized 147) [PlainNumeric]") != std::string::npos);
  CHECK(prompt.find("Method: MagnitudeComparison") != std::string::npos);
  CHECK(prompt.find("Table title: refugee status by nationality") != std::string::npos);
  CHECK(prompt.find("Glossary:\n(none)") != std::string::npos);
  CHECK(prompt == build_recognition_prompt(p.related, p.plan, doc.metadata, set.recognition));
  CHECK_THROWS_AS(build_recognition_prompt(p.related, p.plan, doc.metadata, {"r", "en", ""}), TemplateError);
  CHECK_THROWS_AS(build_recognition_prompt(std::vector<RelatedRecord>{}, p.plan, doc.metadata, set.recognition),
                  EmptyResultError);
}

TEST_CASE("plan serialization") {
  const auto fiscal = prepared("fiscal-cost");
  CHECK(serialize_plan(fiscal.plan) ==
        "Method: TrendAnalysis\nAxis: 2022 -> 2023\n"
        "Order: Net fiscal cost > 2022 = 51.866 trillion KRW -> Net fiscal cost > 2023 = 61.301 trillion KRW\n"
        "Changes: +9435000000000 KRW");
  const auto exam = prepared("exam-results");
  CHECK(serialize_plan(exam.plan) == "Method: Enumeration\nOrder: Exam number = 10021; Result = pass");
}

TEST_CASE("glossary") {
  TempDir dir;
  testing::spit(dir / "g.txt", "# terms\n순재정비용\tnet fiscal cost after offsets\nKRW: Korean won\n\n");
  const auto g = Glossary::load(dir / "g.txt");
  REQUIRE(g.entries.size() == 2);
  CHECK(g.render_for("61.301 trillion KRW") == "- KRW: Korean won");
  CHECK(g.render_for("nothing") == "(none)");
  testing::spit(dir / "bad.txt", "no separator\n");
  CHECK_THROWS_AS(Glossary::load(dir / "bad.txt"), ConfigError);
  const auto p = prepared("fiscal-cost");
  const auto prompt = build_recognition_prompt(p.related, p.plan, fixture("fiscal-cost").metadata,
                                               builtin_prompt_set(tx::Locale::En).recognition, g);
  CHECK(prompt.find("Glossary:\n- KRW: Korean won\n") != std::string::npos);
}

TEST_CASE("generation prompt composition and ablation") {
  const auto& meta = fixture("refugee-status").metadata;
  const auto set = builtin_prompt_set(tx::Locale::En);
  const std::string persona = render(set.persona, {});
  const std::string step1 = "1. Total applications: 2,437.";
  const auto full = build_generation_prompt(step1, meta, set);
  CHECK(full.rfind(persona + "\n\n", 0) == 0);
  CHECK(full.find(step1) != std::string::npos);
  CHECK(full.find("Table title: refugee status by nationality") != std::string::npos);
  const std::string theme = render(set.theme_instruction, {{"table_title", meta.table_title}});
  CHECK(theme.find("According to refugee status by nationality,") != std::string::npos);
  CHECK(full.find(theme) != std::string::npos);

  const auto no_persona = build_generation_prompt(step1, meta, set, {.persona = false});
  CHECK(no_persona.find(persona) == std::string::npos);
  CHECK(full == persona + "\n\n" + no_persona);

  const auto no_theme = build_generation_prompt(step1, meta, set, {.persona = true, .theme_instruction = false});
  CHECK(no_theme.find("Theme Part") == std::string::npos);
  std::string restored = no_theme;
  restored.insert(restored.find("Write exactly one sentence"), theme);
  CHECK(restored == full);
  CHECK_THROWS_AS(build_generation_prompt("  ", meta, set), DataError);
}

TEST_CASE("korean generation prompt carries the korean citation instruction") {
  const auto& meta = fixture("refugee-status-ko").metadata;
  const auto prompt = build_generation_prompt("1. 전체 난민 신청: 2,437명", meta, builtin_prompt_set(tx::Locale::Ko));
  CHECK(prompt.find("\"국적별 난민 현황에 따르면\"") != std::string::npos);
  CHECK(prompt.find("기자") != std::string::npos);
}

TEST_CASE("correction prompt names the failed checks") {
  const auto text = build_correction(builtin_prompt_set(tx::Locale::En), fixture("contract-awards").metadata,
                                     std::vector<std::string>{"has_citation_expression", "theme_is_prefix"});
  CHECK(text.find("has_citation_expression, theme_is_prefix") != std::string::npos);
  CHECK(text.find("\"According to public contract awards,\"") != std::string::npos);
}

TEST_CASE("template files override built-ins") {
  TempDir dir;
  write_builtin_templates(dir.path());
  CHECK(std::filesystem::exists(dir / "recognition.ko.txt"));
  const auto same = PromptLibrary::load(dir.path());
  CHECK(same.en.generation.body == builtin_prompt_set(tx::Locale::En).generation.body);
  testing::spit(dir / "persona.en.txt", "You are a careful analyst.");
  CHECK(load_prompt_set(tx::Locale::En, dir.path()).persona.body == "You are a careful analyst.");
  testing::spit(dir / "generation.en.txt", "{bogus}");
  CHECK_THROWS_AS(load_prompt_set(tx::Locale::En, dir.path()), TemplateError);
}

TEST_CASE("checked-in templates match the built-in text") {
  for (auto locale : {tx::Locale::En, tx::Locale::Ko}) {
    const auto set = builtin_prompt_set(locale);
    for (const auto* t : {&set.recognition, &set.generation, &set.persona, &set.theme_instruction, &set.correction}) {
      const auto file = std::filesystem::path(TABTX_TEMPLATES_DIR) / (t->name + "." + t->locale + ".txt");
      CHECK(testing::slurp(file) == t->body);
    }
  }
}

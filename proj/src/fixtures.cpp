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

#include "tabtx/fixtures.hpp"

#include <fstream>
#include <initializer_list>

namespace tabtx::fixtures {

namespace {

// Cell helpers: H is a header, D a data cell.
RawCell H(std::size_t r, std::size_t c, std::string v, std::size_t rs = 1, std::size_t cs = 1) {
  return RawCell{r, c, rs, cs, std::move(v), true};
}
RawCell D(std::size_t r, std::size_t c, std::string v) { return RawCell{r, c, 1, 1, std::move(v), false}; }

TableMetadata meta(std::string doc_title, std::string table_title, std::string org) {
  return TableMetadata{std::move(doc_title), std::move(table_title), "2023-06-30", std::move(org),
                       "https://example.org/tables"};
}

TableDocument doc(std::string id, TableMetadata m, std::vector<RawCell> cells, std::vector<Coord> highlights,
                  std::optional<std::string> reference) {
  return TableDocument{std::move(id), std::move(m), std::move(cells), std::move(highlights), std::move(reference)};
}

// Sentences quoted from worked examples; the tables around them are synthetic.
constexpr const char* kRefugeeSentence =
    "According to the refugee status by nationality, the total number of refugee applications is 2,437, and among "
    "them, only 147 have been approved, indicating a very low approval rate.";
constexpr const char* kFiscalSentence =
    "According to the net fiscal cost trend, the net fiscal cost increased by 9.435 trillion KRW from the previous "
    "year, reaching a total of 61.301 trillion KRW.";
constexpr const char* kExamSentence =
    "According to the exam results by candidate, the candidate with exam number 10021 passed the exam.";
constexpr const char* kMergedSentence =
    "According to the new business registrations by region, new business registrations in Seoul rose from 1,204 in "
    "the first half of 2020 to 1,310 in the second half.";
constexpr const char* kDeepSentence =
    "According to the exports and imports by sector, semiconductor exports fell from 129.2 billion USD in 2022 to "
    "98.6 billion USD in 2023.";
constexpr const char* kRefugeeKoSentence =
    "국적별 난민 현황에 따르면 난민 신청은 총 2,437명이며 이 중 147명만 인정되어 인정률이 매우 낮았다.";
constexpr const char* kUnemploymentReference =
    "According to the unemployment rate by age group, the rate was highest for those aged 15-29 at 6.4%, followed "
    "by 3.1% for those in their 30s and 2.5% for those in their 40s.";
constexpr const char* kUnemploymentGenerated =
    "According to the unemployment rate by age group, the unemployment rate was highest among people aged 15-29 at "
    "6.4%, compared with 3.1% for ages 30-39 and 2.5% for ages 40-49.";
constexpr const char* kContractSentence =
    "According to the public contract awards, the road maintenance contract was awarded to Hanbit Construction for "
    "1,200 million KRW.";
constexpr const char* kVisitorsSentence =
    "분기별 관광객 수에 따르면 외국인 관광객은 1분기 231만 명에서 3분기 298만 명으로 꾸준히 증가했다.";
constexpr const char* kPopulationReference = "According to the regional population, Jeju has a population of 675,000.";
constexpr const char* kPopulationGenerated =
    "According to the regional population, Jeju's population stands at 675,000.";

}  // namespace

ingest::Corpus fixture_corpus() {
  ingest::Corpus corpus;
  corpus.source_path = "fixtures/corpus.jsonl";
  auto& d = corpus.documents;

  d.push_back(doc("refugee-status",
                  meta("Annual refugee statistics", "refugee status by nationality", "Ministry of Justice"),
                  {H(0, 0, "Nationality"), H(0, 1, "Applications"), H(0, 2, "Approved"),
                   H(1, 0, "Total"), D(1, 1, "2,437"), D(1, 2, "147"),
                   H(2, 0, "Country A"), D(2, 1, "512"), D(2, 2, "31"),
                   H(3, 0, "Country B"), D(3, 1, "388"), D(3, 2, "20")},
                  {{1, 1}, {1, 2}}, kRefugeeSentence));

  d.push_back(doc("fiscal-cost", meta("Fiscal outlook", "net fiscal cost trend", "Ministry of Economy and Finance"),
                  {H(0, 0, "Item"), H(0, 1, "2022"), H(0, 2, "2023"),
                   H(1, 0, "Net fiscal cost"), D(1, 1, "51.866 trillion KRW"), D(1, 2, "61.301 trillion KRW"),
                   H(2, 0, "Total expenditure"), D(2, 1, "682.4 trillion KRW"), D(2, 2, "638.7 trillion KRW")},
                  {{1, 1}, {1, 2}}, kFiscalSentence));

  d.push_back(doc("exam-results", meta("Qualification exam notice", "exam results by candidate", "Examination Agency"),
                  {H(0, 0, "Exam number"), D(0, 1, "10021"), H(1, 0, "Result"), D(1, 1, "pass")},
                  {{0, 1}, {1, 1}}, kExamSentence));

  // "2020" spans columns 2-3 and must be replicated onto both.
  d.push_back(doc("merged-2020",
                  meta("Business register summary", "new business registrations by region", "Statistics Office"),
                  {H(0, 0, "Region", 2, 1), H(0, 1, "2019", 2, 1), H(0, 2, "2020", 1, 2),
                   H(1, 2, "H1"), H(1, 3, "H2"),
                   H(2, 0, "Seoul"), D(2, 1, "2,310"), D(2, 2, "1,204"), D(2, 3, "1,310"),
                   H(3, 0, "Busan"), D(3, 1, "1,020"), D(3, 2, "498"), D(3, 3, "533")},
                  {{2, 2}, {2, 3}}, kMergedSentence));

  d.push_back(doc("single-cell", meta("Edge cases", "single value table", "Test"),
                  {RawCell{0, 0, 1, 1, "42", false}}, {{0, 0}}, std::nullopt));

  d.push_back(doc("all-headers", meta("Edge cases", "header-only table", "Test"),
                  {H(0, 0, "A"), H(0, 1, "B"), H(1, 0, "C"), H(1, 1, "D")}, {{1, 1}}, std::nullopt));

  // Two header levels on both axes.
  d.push_back(doc("deep-headers", meta("Trade bulletin", "exports and imports by sector", "Customs Service"),
                  {H(0, 0, "Sector", 2, 2), H(0, 2, "Exports", 1, 2), H(0, 4, "Imports", 1, 2),
                   H(1, 2, "2022"), H(1, 3, "2023"), H(1, 4, "2022"), H(1, 5, "2023"),
                   H(2, 0, "Manufacturing", 2, 1), H(2, 1, "Semiconductors"),
                   D(2, 2, "129.2 billion USD"), D(2, 3, "98.6 billion USD"),
                   D(2, 4, "74.9 billion USD"), D(2, 5, "72.1 billion USD"),
                   H(3, 1, "Automobiles"),
                   D(3, 2, "54.1 billion USD"), D(3, 3, "70.9 billion USD"),
                   D(3, 4, "18.3 billion USD"), D(3, 5, "21.5 billion USD")},
                  {{2, 2}, {2, 3}}, kDeepSentence));

  d.push_back(doc("refugee-status-ko", meta("난민 통계 연보", "국적별 난민 현황", "법무부"),
                  {H(0, 0, "국적"), H(0, 1, "신청"), H(0, 2, "인정"),
                   H(1, 0, "전체"), D(1, 1, "2,437명"), D(1, 2, "147명"),
                   H(2, 0, "A국"), D(2, 1, "512명"), D(2, 2, "31명")},
                  {{1, 1}, {1, 2}}, kRefugeeKoSentence));

  d.push_back(doc("unemployment-rate", meta("Labour force survey", "unemployment rate by age group", "Statistics Office"),
                  {H(0, 0, "Age group"), H(0, 1, "Rate"),
                   H(1, 0, "15-29"), D(1, 1, "6.4%"),
                   H(2, 0, "30-39"), D(2, 1, "3.1%"),
                   H(3, 0, "40-49"), D(3, 1, "2.5%"),
                   H(4, 0, "50-59"), D(4, 1, "2.7%")},
                  {{1, 1}, {2, 1}, {3, 1}}, kUnemploymentReference));

  d.push_back(doc("contract-awards", meta("Procurement report", "public contract awards", "Procurement Service"),
                  {H(0, 0, "Contract"), H(0, 1, "Vendor"), H(0, 2, "Amount"),
                   H(1, 0, "Road maintenance"), D(1, 1, "Hanbit Construction"), D(1, 2, "1,200 million KRW")},
                  {{1, 1}, {1, 2}}, kContractSentence));

  d.push_back(doc("quarterly-visitors", meta("관광 동향", "분기별 관광객 수", "문화체육관광부"),
                  {H(0, 0, "구분"), H(0, 1, "1분기"), H(0, 2, "2분기"), H(0, 3, "3분기"),
                   H(1, 0, "외국인 관광객"), D(1, 1, "231만 명"), D(1, 2, "265만 명"), D(1, 3, "298만 명")},
                  {{1, 1}, {1, 2}, {1, 3}}, kVisitorsSentence));

  // Row 1 has no cell in column 2: the grid pads it.
  d.push_back(doc("ragged-table", meta("Population bulletin", "regional population", "Statistics Office"),
                  {H(0, 0, "Region"), H(0, 1, "Population"), H(0, 2, "Note"),
                   H(1, 0, "Jeju"), D(1, 1, "675,000"),
                   H(2, 0, "Sejong"), D(2, 1, "386,000"), D(2, 2, "new city")},
                  {{1, 1}}, kPopulationReference));
  return corpus;
}

nlohmann::json fixture_mock_script() {
  using nlohmann::json;
  json docs = json::object();
  docs["refugee-status"] = {
      {"step1",
       "1. Total refugee applications: 2,437 (plain number).\n2. Total approved: 147 (plain number).\n"
       "3. Magnitude comparison: approvals are a small fraction of applications."},
      {"step2", kRefugeeSentence}};
  docs["fiscal-cost"] = {
      {"step1",
       "1. Net fiscal cost 2022: 51.866 trillion KRW (monetary).\n2. Net fiscal cost 2023: 61.301 trillion KRW "
       "(monetary).\n3. Trend analysis: an increase of 9.435 trillion KRW year over year."},
      {"step2", kFiscalSentence}};
  docs["exam-results"] = {
      {"step1", "1. 10021 is an exam number (plain number).\n2. pass is the result (category).\n"
                "3. Enumeration: exam number 10021 passed."},
      {"step2", kExamSentence}};
  docs["merged-2020"] = {
      {"step1", "1. Seoul, 2020 first half: 1,204 registrations.\n2. Seoul, 2020 second half: 1,310 registrations.\n"
                "3. Trend analysis: registrations rose by 106."},
      {"step2", kMergedSentence}};
  docs["deep-headers"] = {{"step2", kDeepSentence}};
  docs["refugee-status-ko"] = {
      {"step1", "1. 전체 난민 신청: 2,437명 (일반 수치).\n2. 전체 난민 인정: 147명 (일반 수치).\n"
                "3. 크기 비교: 인정 건수가 신청 건수에 비해 매우 적다."},
      {"step2", kRefugeeKoSentence}};
  docs["unemployment-rate"] = {{"step2", kUnemploymentGenerated}};
  // The first answer omits the Theme Part and triggers one regeneration.
  docs["contract-awards"] = {
      {"step2", json::array({"The road maintenance contract went to Hanbit Construction for 1,200 million KRW.",
                             kContractSentence})}};
  docs["quarterly-visitors"] = {{"step2", kVisitorsSentence}};
  docs["ragged-table"] = {{"step2", kPopulationGenerated}};
  return json{{"documents", docs}, {"fallback", "echo"}};
}

void write_fixtures(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  ingest::write_corpus(fixture_corpus(), dir / "corpus.jsonl");
  auto out = ingest::open_output(dir / "mock_responses.json");
  out << fixture_mock_script().dump(2) << '\n';
  if (!out) throw Error("cannot write mock responses into '" + dir.string() + "'");
}

}  // namespace tabtx::fixtures

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

#include <sstream>

#include "oracles.hpp"
#include "support.hpp"
#include "tabtx/cli.hpp"
#include "tabtx/eval.hpp"
#include "tabtx/fixtures.hpp"
#include "tabtx/ingest.hpp"
#include "tabtx/prompt.hpp"

using namespace tabtx;
using nlohmann::json;
using testing::TempDir;

namespace {

const std::string kFixtures = TABTX_FIXTURES_DIR;
const std::string kCorpus = kFixtures + "/corpus.jsonl";
const std::string kMock = kFixtures + "/mock_responses.json";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tabtx");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == cli::kConfigError);
  CHECK(run({"preprocess", "--bogus"}).code == cli::kConfigError);
  CHECK(run({"pipeline", "--persona", "maybe"}).code == cli::kConfigError);
  CHECK(run({"preprocess"}).code == cli::kConfigError);
  CHECK(run({"generate", "--corpus", kCorpus, "--out", "x", "--parallelism", "0"}).code == cli::kConfigError);
  CHECK(run({"generate", "--corpus", kCorpus, "--out", "x", "--locale", "fr"}).code == cli::kConfigError);
  CHECK(run({"generate", "--corpus", kCorpus}).code == cli::kConfigError);
}

TEST_CASE("preprocess dumps one line per document") {
  const auto r = run({"preprocess", "--corpus", kCorpus});
  CHECK(r.code == 0);
  const auto out = lines(r.out);
  REQUIRE(out.size() == fixtures::fixture_corpus().documents.size());
  CHECK(out[0]["id"] == "refugee-status");
  CHECK(out[0]["records"][0]["value"] == "2,437");
  CHECK(out[0]["records"][0]["key_chain"] == json::array({"Total", "Applications"}));
  CHECK(out[4]["error"] == "no highlighted data cell");
}

TEST_CASE("strict and skip-invalid corpus handling") {
  TempDir dir;
  std::string good = testing::slurp(kCorpus);
  good = good.substr(0, good.find('\n') + 1);
  const std::string bad =
      R"({"id":"broken","metadata":{"document_title":"d","table_title":"t","publication_date":"","publishing_org":"","source_url":""},)"
      R"("cells":[{"row":0,"col":0,"rowspan":2,"colspan":2,"value":"A","is_header":true},)"
      R"({"row":1,"col":1,"rowspan":1,"colspan":1,"value":"5","is_header":false}],"highlighted_cells":[[1,1]]})";
  testing::spit(dir / "c.jsonl", good + bad + "\n");
  const auto strict = run({"preprocess", "--corpus", (dir / "c.jsonl").string()});
  CHECK(strict.code == cli::kDataError);
  CHECK(strict.err.find("broken") != std::string::npos);
  CHECK(strict.err.find("SpanOverlap") != std::string::npos);
  const auto lenient = run({"preprocess", "--corpus", (dir / "c.jsonl").string(), "--skip-invalid"});
  CHECK(lenient.code == 0);
  CHECK(lenient.err.find("skipped invalid record") != std::string::npos);
  CHECK(lines(lenient.out).size() == 1);
}

TEST_CASE("analyze prints plans") {
  const auto r = run({"analyze", "--corpus", kCorpus});
  CHECK(r.code == 0);
  const auto out = lines(r.out);
  CHECK(out[1]["id"] == "fiscal-cost");
  CHECK(out[1]["method"] == "TrendAnalysis");
  CHECK(out[1]["deltas"][0].get<double>() == doctest::Approx(9.435e12));
  CHECK(out[1]["ordered_cells"][0]["cell_type"] == "Monetary");
}

TEST_CASE("generate is byte-identical across runs and parallelism") {
  TempDir dir;
  std::vector<std::string> outputs;
  for (const char* p : {"1", "1", "4"}) {
    const auto path = dir / ("r" + std::to_string(outputs.size()) + ".jsonl");
    const auto r = run({"generate", "--corpus", kCorpus, "--mock-responses", kMock, "--out", path.string(),
                        "--parallelism", p});
    REQUIRE(r.code == 0);
    outputs.push_back(testing::slurp(path));
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[0] == outputs[2]);
  const auto records = lines(outputs[0]);
  CHECK(records.size() == fixtures::fixture_corpus().documents.size());
  CHECK(records[0]["tx_valid"] == true);
}

TEST_CASE("unreachable http backend exits 2 and flushes partial results") {
  TempDir dir;
  const auto out = dir / "r.jsonl";
  const auto r = run({"generate", "--corpus", kCorpus, "--backend", "http", "--endpoint",
                      "http://127.0.0.1:1/v1/chat/completions", "--model", "m", "--retries", "1", "--out",
                      out.string()});
  CHECK(r.code == cli::kBackendError);
  CHECK(r.err.find("Transport") != std::string::npos);
  const auto written = lines(testing::slurp(out));
  REQUIRE(written.size() == 2);
  CHECK(written[0]["id"] == "single-cell");
  CHECK(written[1]["id"] == "all-headers");
}

TEST_CASE("persona and theme ablations only remove their blocks") {
  TempDir dir;
  auto log = [&](std::vector<std::string> extra, const std::string& name) {
    std::vector<std::string> args{"generate", "--corpus", kCorpus, "--mock-responses", kMock,
                                  "--out", (dir / (name + ".jsonl")).string(), "--prompt-log",
                                  (dir / (name + ".prompts.jsonl")).string()};
    args.insert(args.end(), extra.begin(), extra.end());
    REQUIRE(run(args).code == 0);
    return lines(testing::slurp(dir / (name + ".prompts.jsonl")));
  };
  const auto base = log({}, "base");
  const auto no_persona = log({"--persona=off"}, "np");
  const auto no_theme = log({"--no-theme-instruction"}, "nt");
  REQUIRE(base.size() == no_persona.size());
  const auto en = prompt::builtin_prompt_set(tx::Locale::En);
  const std::string persona = en.persona.body + "\n\n";
  int step2 = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i]["step"] != "step2" || base[i]["attempt"] != 0) {
      continue;
    }
    ++step2;
    const std::string full = base[i]["prompt"];
    const std::string np = no_persona[i]["prompt"];
    const std::string nt = no_theme[i]["prompt"];
    CHECK(full.size() > np.size());
    CHECK(full.substr(full.size() - np.size()) == np);
    CHECK(nt.find("Theme Part") == std::string::npos);
    CHECK(nt.find("주제부") == std::string::npos);
  }
  CHECK(step2 > 0);
  CHECK(base[0]["prompt"].get<std::string>().rfind(persona, 0) == std::string::npos);
}

TEST_CASE("evaluate: identical summaries score 1") {
  TempDir dir;
  std::string results;
  for (const auto& d : fixtures::fixture_corpus().documents) {
    if (!d.reference_summary) continue;
    results += json{{"id", d.id}, {"summary", *d.reference_summary}, {"tx_valid", true}}.dump() + "\n";
  }
  testing::spit(dir / "r.jsonl", results);
  const auto r = run({"evaluate", "--corpus", kCorpus, "--results", (dir / "r.jsonl").string()});
  CHECK(r.code == 0);
  const auto out = lines(r.out);
  const auto& summary = out.back()["summary"];
  CHECK(summary["average"].get<double>() == doctest::Approx(1.0));
  CHECK(summary["rounded"]["bleu"].get<double>() == 1.0);
  const auto csv = run({"evaluate", "--corpus", kCorpus, "--results", (dir / "r.jsonl").string(), "--format", "csv"});
  CHECK(csv.out.rfind("id,rouge1,rougeL,bleu,average\n", 0) == 0);
  CHECK(csv.out.find("corpus_mean_rounded,1,1,1,1\n") != std::string::npos);
}

TEST_CASE("evaluate: empty results are an empty corpus") {
  TempDir dir;
  testing::spit(dir / "r.jsonl", "");
  const auto r = run({"evaluate", "--corpus", kCorpus, "--results", (dir / "r.jsonl").string()});
  CHECK(r.code == cli::kDataError);
  CHECK(r.err.find("corpus is empty") != std::string::npos);
}

TEST_CASE("evaluate matches the oracle scores") {
  TempDir dir;
  const auto corpus = fixtures::fixture_corpus();
  std::string results;
  std::vector<double> expected;
  for (const auto& d : corpus.documents) {
    if (!d.reference_summary) continue;
    const std::string cand = "According to the " + d.metadata.table_title + ", values changed in 2023.";
    results += json{{"id", d.id}, {"summary", cand}}.dump() + "\n";
    const auto mode = eval::detect_mode(*d.reference_summary);
    const auto c = eval::tokenize(cand, mode).tokens();
    const auto ref = eval::tokenize(*d.reference_summary, mode).tokens();
    expected.push_back(oracle::bleu(c, ref));
  }
  testing::spit(dir / "r.jsonl", results);
  const auto out = lines(run({"evaluate", "--corpus", kCorpus, "--results", (dir / "r.jsonl").string()}).out);
  REQUIRE(out.size() == expected.size() + 1);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(std::abs(out[i]["bleu"].get<double>() - expected[i]) <= 1e-9);
  }
}

TEST_CASE("validate reports per line") {
  TempDir dir;
  testing::spit(dir / "r.jsonl",
                json{{"id", "fiscal-cost"}, {"summary", "Costs rose."}}.dump() + "\n" +
                    json{{"id", "exam-results"}, {"summary", *testing::fixture("exam-results").reference_summary}}.dump() +
                    "\n");
  const auto r = run({"validate", "--corpus", kCorpus, "--results", (dir / "r.jsonl").string()});
  CHECK(r.code == 0);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 2);
  CHECK(out[0]["valid"] == false);
  CHECK(out[1]["valid"] == true);
  CHECK(out[1]["checks"].size() == 5);
  testing::spit(dir / "x.jsonl", json{{"id", "nobody"}, {"summary", "x"}}.dump() + "\n");
  CHECK(run({"validate", "--corpus", kCorpus, "--results", (dir / "x.jsonl").string()}).code == cli::kDataError);
}

TEST_CASE("pipeline writes results and a report") {
  TempDir dir;
  const auto r = run({"pipeline", "--corpus", kCorpus, "--mock-responses", kMock, "--out",
                      (dir / "out" / "results.jsonl").string()});
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir / "out" / "results.eval.json"));
  const auto report = lines(testing::slurp(dir / "out" / "results.eval.json"));
  CHECK(report.back()["summary"]["documents"] == 10);
}

TEST_CASE("config file values and command-line overrides") {
  TempDir dir;
  std::filesystem::copy_file(kCorpus, dir / "corpus.jsonl");
  std::filesystem::copy_file(kMock, dir / "mock.json");
  testing::spit(dir / "run.json", R"({"corpus": "corpus.jsonl", "persona": false, "parallelism": 2,
    "backend": {"kind": "mock", "mock_responses": "mock.json", "backoff_ms": 0}})");
  const auto out = dir / "r.jsonl";
  const auto log = dir / "p.jsonl";
  CHECK(run({"generate", "--config", (dir / "run.json").string(), "--out", out.string(), "--prompt-log",
             log.string()})
            .code == 0);
  const auto prompts = lines(testing::slurp(log));
  const std::string persona = prompt::builtin_prompt_set(tx::Locale::En).persona.body;
  for (const auto& p : prompts) CHECK(p["prompt"].get<std::string>().find(persona) == std::string::npos);
  CHECK(run({"generate", "--config", (dir / "run.json").string(), "--out", out.string(), "--prompt-log",
             log.string(), "--persona", "on"})
            .code == 0);
  bool seen = false;
  for (const auto& p : lines(testing::slurp(log))) seen = seen || p["prompt"].get<std::string>().find(persona) == 0;
  CHECK(seen);

  testing::spit(dir / "bad.json", R"({"corpus": "corpus.jsonl", "colour": "blue"})");
  const auto bad = run({"preprocess", "--config", (dir / "bad.json").string()});
  CHECK(bad.code == cli::kConfigError);
  CHECK(bad.err.find("colour") != std::string::npos);
  testing::spit(dir / "typed.json", R"({"parallelism": "four"})");
  CHECK(run({"preprocess", "--config", (dir / "typed.json").string()}).code == cli::kConfigError);
  CHECK(run({"preprocess", "--config", (dir / "none.json").string()}).code == cli::kConfigError);
}

TEST_CASE("fixtures and templates subcommands") {
  TempDir dir;
  CHECK(run({"fixtures", "--out", (dir / "fx").string()}).code == 0);
  CHECK(testing::slurp(dir / "fx" / "corpus.jsonl") == testing::slurp(kCorpus));
  CHECK(run({"templates", "--out", (dir / "tp").string()}).code == 0);
  CHECK(std::filesystem::exists(dir / "tp" / "generation.ko.txt"));
  CHECK(run({"templates"}).code == cli::kConfigError);
  testing::spit(dir / "tp" / "persona.en.txt", "{unknown_name}");
  CHECK(run({"generate", "--corpus", kCorpus, "--out", (dir / "r.jsonl").string(), "--template-dir",
             (dir / "tp").string()})
            .code == cli::kConfigError);
}

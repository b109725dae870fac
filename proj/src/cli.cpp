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

#include "tabtx/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"
#include "tabtx/analysis.hpp"
#include "tabtx/config.hpp"
#include "tabtx/error.hpp"
#include "tabtx/eval.hpp"
#include "tabtx/fixtures.hpp"
#include "tabtx/ingest.hpp"
#include "tabtx/pipeline.hpp"
#include "tabtx/preprocess.hpp"
#include "tabtx/text.hpp"
#include "tabtx/tx_structure.hpp"

namespace tabtx::cli {

using ojson = nlohmann::ordered_json;

namespace {

// Writes to a file, or to the command's output stream for "" / "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = ingest::open_output(path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

ojson coord_json(Coord c) { return ojson::array({c.row, c.col}); }

ingest::Corpus load(const RunConfig& c, std::ostream& err) {
  if (c.corpus.empty()) throw ConfigError("--corpus is required");
  std::vector<ingest::SkippedRecord> skipped;
  auto corpus = ingest::load_corpus(c.corpus, {c.skip_invalid}, &skipped);
  for (const auto& s : skipped) err << "tabtx: skipped invalid record: " << s.reason << '\n';
  return corpus;
}

int cmd_preprocess(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto corpus = load(c, err);
  Sink sink(c.out, out);
  for (const auto& doc : corpus.documents) {
    ojson line{{"id", doc.id}};
    ojson records = ojson::array();
    try {
      for (const auto& rr : preprocess::prepare(doc).related) {
        ojson context = ojson::array();
        for (const auto& h : rr.context) context.push_back(ojson{{"coordinate", coord_json(h.coordinate)}, {"value", h.value}});
        records.push_back(ojson{{"key_chain", rr.record.key_chain},
                                {"value", rr.record.value},
                                {"coordinate", coord_json(rr.record.coordinate)},
                                {"highlighted", rr.record.highlighted},
                                {"context", std::move(context)}});
      }
      line["records"] = std::move(records);
    } catch (const DataError& e) {
      line["records"] = ojson::array();
      line["error"] = e.what();
    }
    *sink << line.dump() << '\n';
  }
  return kOk;
}

int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto corpus = load(c, err);
  Sink sink(c.out, out);
  for (const auto& doc : corpus.documents) {
    ojson line{{"id", doc.id}};
    try {
      const auto prepared = preprocess::prepare(doc);
      std::vector<analysis::TypedCell> cells;
      for (const auto& rr : prepared.related) cells.push_back(analysis::type_cell(rr.record));
      const auto plan = analysis::select_analysis_method(cells, prepared.grid);
      line["method"] = to_string(plan.method);
      line["axis"] = plan.axis ? ojson(*plan.axis) : ojson(nullptr);
      ojson jcells = ojson::array();
      for (const auto& cell : plan.ordered_cells) {
        jcells.push_back(ojson{{"coordinate", coord_json(cell.record.coordinate)},
                               {"key_chain", cell.record.key_chain},
                               {"value", cell.record.value},
                               {"cell_type", to_string(cell.cell_type)},
                               {"numeric_value", cell.numeric_value ? ojson(*cell.numeric_value) : ojson(nullptr)},
                               {"unit", cell.unit ? ojson(*cell.unit) : ojson(nullptr)}});
      }
      line["ordered_cells"] = std::move(jcells);
      line["deltas"] = plan.deltas;
    } catch (const DataError& e) {
      line["error"] = e.what();
    }
    *sink << line.dump() << '\n';
  }
  return kOk;
}

void write_prompt_log(const std::vector<GenerationRecord>& records, const std::string& path) {
  auto out = ingest::open_output(path);
  for (const auto& r : records) {
    if (!r.step1_prompt.empty()) {
      out << ojson{{"id", r.id}, {"step", "step1"}, {"attempt", 0}, {"prompt", r.step1_prompt}}.dump() << '\n';
    }
    for (std::size_t i = 0; i < r.step2_prompts.size(); ++i) {
      out << ojson{{"id", r.id}, {"step", "step2"}, {"attempt", i}, {"prompt", r.step2_prompts[i]}}.dump() << '\n';
    }
  }
}

int cmd_generate(const RunConfig& c, std::ostream& err) {
  if (c.out.empty() || c.out == "-") throw ConfigError("generate needs --out");
  const auto pconfig = make_pipeline_config(c);
  const auto backend = make_backend(c.backend);
  const auto corpus = load(c, err);
  const auto outcomes = pipeline::run_corpus(corpus.documents, *backend, pconfig, static_cast<std::size_t>(c.parallelism));

  std::vector<GenerationRecord> records;
  int status = kOk;
  for (const auto& o : outcomes) {
    if (o.record) records.push_back(*o.record);
    if (o.error) {
      err << "tabtx: " << *o.error << '\n';
      status = std::max(status, o.exit_code);
    }
  }
  ingest::write_results(records, c.out);
  if (!c.prompt_log.empty()) write_prompt_log(records, c.prompt_log);
  std::size_t valid = 0;
  for (const auto& r : records) valid += r.tx_valid ? 1 : 0;
  err << "tabtx: " << records.size() << " of " << corpus.documents.size() << " documents written, " << valid
      << " TX-valid\n";
  return status;
}

std::map<std::string, const TableDocument*> index(const ingest::Corpus& corpus) {
  std::map<std::string, const TableDocument*> out;
  for (const auto& d : corpus.documents) out[d.id] = &d;
  return out;
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.results.empty()) throw ConfigError("validate needs --results");
  const auto corpus = load(c, err);
  const auto docs = index(corpus);
  Sink sink(c.out, out);
  for (const auto& r : ingest::read_results(c.results)) {
    auto it = docs.find(r.id);
    if (it == docs.end()) throw DataError("result '" + r.id + "' has no document in the corpus");
    const std::string& title = it->second->metadata.table_title;
    const auto summary = tx::parse_tx_summary(r.summary, title, tx::resolve_locale(c.locale, title));
    const auto report = tx::validate_tx(summary, title);
    ojson checks = ojson::array();
    for (const auto& ch : report.checks) checks.push_back(ojson{{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    *sink << ojson{{"id", r.id}, {"valid", report.valid}, {"theme", summary.theme.rendered},
                   {"explanation", summary.explanation}, {"checks", std::move(checks)}}
                 .dump()
          << '\n';
  }
  return kOk;
}

void write_report(const eval::EvalReport& report, const std::string& format, std::ostream& out) {
  const auto& m = report.corpus_means;
  if (format == "csv") {
    auto num = [](double v) { return text::format_number(v); };
    out << "id,rouge1,rougeL,bleu,average\n";
    for (const auto& d : report.per_document) {
      out << d.id << ',' << num(d.scores.rouge1) << ',' << num(d.scores.rougeL) << ',' << num(d.scores.bleu) << ','
          << num(d.scores.average()) << '\n';
    }
    out << "corpus_mean," << num(m.rouge1) << ',' << num(m.rougeL) << ',' << num(m.bleu) << ','
        << num(report.overall_average) << '\n';
    out << "corpus_mean_rounded," << num(eval::round2(m.rouge1)) << ',' << num(eval::round2(m.rougeL)) << ','
        << num(eval::round2(m.bleu)) << ',' << num(eval::round2(report.overall_average)) << '\n';
    return;
  }
  for (const auto& d : report.per_document) {
    out << ojson{{"id", d.id}, {"rouge1", d.scores.rouge1}, {"rougeL", d.scores.rougeL}, {"bleu", d.scores.bleu},
                 {"average", d.scores.average()}}
               .dump()
        << '\n';
  }
  out << ojson{{"summary",
                {{"documents", report.per_document.size()},
                 {"rouge1", m.rouge1},
                 {"rougeL", m.rougeL},
                 {"bleu", m.bleu},
                 {"average", report.overall_average},
                 {"rounded",
                  {{"rouge1", eval::round2(m.rouge1)},
                   {"rougeL", eval::round2(m.rougeL)},
                   {"bleu", eval::round2(m.bleu)},
                   {"average", eval::round2(report.overall_average)}}}}}}
             .dump()
      << '\n';
}

int evaluate_into(const RunConfig& c, const std::string& results, const std::string& dest, std::ostream& out,
                  std::ostream& err) {
  const auto corpus = load(c, err);
  const auto docs = index(corpus);
  const auto mode = eval::parse_mode(c.tokenizer);
  std::vector<eval::DocumentScore> scores;
  for (const auto& r : ingest::read_results(results)) {
    auto it = docs.find(r.id);
    if (it == docs.end()) throw DataError("result '" + r.id + "' has no document in the corpus");
    if (!it->second->reference_summary) continue;
    scores.push_back({r.id, eval::score(r.summary, *it->second->reference_summary, mode)});
  }
  const auto report = eval::aggregate(scores);
  Sink sink(dest, out);
  write_report(report, c.format, *sink);
  return kOk;
}

int cmd_evaluate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.results.empty()) throw ConfigError("evaluate needs --results");
  return evaluate_into(c, c.results, c.out, out, err);
}

int cmd_pipeline(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const int status = cmd_generate(c, err);
  if (status != kOk) return status;
  std::string report = c.report;
  if (report.empty()) {
    std::filesystem::path p(c.out);
    report = (p.parent_path() / (p.stem().string() + ".eval." + c.format)).string();
  }
  return evaluate_into(c, c.out, report, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig flags;
  std::string config_path;
  std::string persona = "on";
  bool no_theme = false;

  CLI::App app{"Theme-Explanation table summarization pipeline", "tabtx"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--corpus", flags.corpus, "Corpus file (one JSON document per line)");
  app.add_option("--out", flags.out, "Output file ('-' for stdout where allowed)");
  app.add_option("--locale", flags.locale, "en | ko | auto");
  app.add_option("--parallelism", flags.parallelism, "Documents in flight");
  app.add_flag("--skip-invalid", flags.skip_invalid, "Drop invalid corpus records instead of failing");
  app.add_option("--persona", persona, "Journalist persona preamble: on | off")->check(CLI::IsMember({"on", "off"}));
  app.add_flag("--no-theme-instruction", no_theme, "Omit the Theme Part instruction from step-2 prompts");
  app.add_option("--prompt-log", flags.prompt_log, "Write every prompt as JSONL");
  app.add_option("--results", flags.results, "Results file for validate/evaluate");
  app.add_option("--report", flags.report, "Evaluation report path for pipeline");
  app.add_option("--format", flags.format, "Report format: json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tokenizer", flags.tokenizer, "word | char | auto");
  app.add_option("--backend", flags.backend.kind, "mock | http");
  app.add_option("--mock-responses", flags.backend.mock_responses, "Scripted mock responses (JSON)");
  app.add_option("--endpoint", flags.backend.endpoint, "HTTP chat-completion endpoint");
  app.add_option("--model", flags.backend.model, "Model name sent to the endpoint");
  app.add_option("--retries", flags.backend.retries, "Backend retries per request");
  app.add_option("--max-regeneration", flags.max_regeneration, "Step-2 regenerations on invalid TX output");
  app.add_option("--template-dir", flags.template_dir, "Directory overriding the built-in prompt templates");
  app.add_option("--glossary", flags.glossary, "Administrative-term glossary");

  auto* preprocess_cmd = app.add_subcommand("preprocess", "Dump the filtered key-value records per document");
  auto* analyze_cmd = app.add_subcommand("analyze", "Print the analysis plan per document");
  auto* generate_cmd = app.add_subcommand("generate", "Run the pipeline and write results");
  auto* validate_cmd = app.add_subcommand("validate", "Check the TX structure of generated summaries");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score results against reference summaries");
  auto* pipeline_cmd = app.add_subcommand("pipeline", "generate, then evaluate");
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Write the fixture corpus and mock responses to --out DIR");
  auto* templates_cmd = app.add_subcommand("templates", "Write the built-in prompt templates to --out DIR");

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "tabtx: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    RunConfig c;
    if (!config_path.empty()) apply_config_file(config_path, c);
    // Flags given on the command line override the config file.
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--corpus")) c.corpus = flags.corpus;
    if (given("--out")) c.out = flags.out;
    if (given("--locale")) c.locale = flags.locale;
    if (given("--parallelism")) c.parallelism = flags.parallelism;
    if (given("--skip-invalid")) c.skip_invalid = true;
    if (given("--persona")) c.persona = persona == "on";
    if (no_theme) c.theme_instruction = false;
    if (given("--prompt-log")) c.prompt_log = flags.prompt_log;
    if (given("--results")) c.results = flags.results;
    if (given("--report")) c.report = flags.report;
    if (given("--format")) c.format = flags.format;
    if (given("--tokenizer")) c.tokenizer = flags.tokenizer;
    if (given("--backend")) c.backend.kind = flags.backend.kind;
    if (given("--mock-responses")) c.backend.mock_responses = flags.backend.mock_responses;
    if (given("--endpoint")) c.backend.endpoint = flags.backend.endpoint;
    if (given("--model")) c.backend.model = flags.backend.model;
    if (given("--retries")) c.backend.retries = flags.backend.retries;
    if (given("--max-regeneration")) c.max_regeneration = flags.max_regeneration;
    if (given("--template-dir")) c.template_dir = flags.template_dir;
    if (given("--glossary")) c.glossary = flags.glossary;
    check_config(c);

    if (*preprocess_cmd) return cmd_preprocess(c, out, err);
    if (*analyze_cmd) return cmd_analyze(c, out, err);
    if (*generate_cmd) return cmd_generate(c, err);
    if (*validate_cmd) return cmd_validate(c, out, err);
    if (*evaluate_cmd) return cmd_evaluate(c, out, err);
    if (*pipeline_cmd) return cmd_pipeline(c, out, err);
    if (c.out.empty() || c.out == "-") throw ConfigError("--out DIR is required");
    if (*fixtures_cmd) fixtures::write_fixtures(c.out);
    if (*templates_cmd) prompt::write_builtin_templates(c.out);
    return kOk;
  } catch (const Error& e) {
    err << "tabtx: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "tabtx: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace tabtx::cli

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

#include "tabtx/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "tabtx/analysis.hpp"
#include "tabtx/error.hpp"
#include "tabtx/preprocess.hpp"
#include "tabtx/text.hpp"
#include "tabtx/tx_structure.hpp"

namespace tabtx::pipeline {

GenerationRecord run_pipeline(const TableDocument& doc, const backend::TextBackend& backend,
                              const PipelineConfig& config) {
  if (text::trim(doc.metadata.table_title).empty()) throw EmptyTitleError();
  const tx::Locale locale = tx::resolve_locale(config.locale, doc.metadata.table_title);
  const prompt::PromptSet& prompts = config.prompts.get(locale);

  const preprocess::PreparedTable prepared = preprocess::prepare(doc);
  std::vector<analysis::TypedCell> cells;
  cells.reserve(prepared.related.size());
  for (const auto& rr : prepared.related) cells.push_back(analysis::type_cell(rr.record));
  const analysis::AnalysisPlan plan = analysis::select_analysis_method(cells, prepared.grid);

  GenerationRecord rec;
  rec.id = doc.id;
  rec.step1_prompt =
      prompt::build_recognition_prompt(prepared.related, plan, doc.metadata, prompts.recognition, config.glossary);
  const auto step1 = backend::complete_with_retries(
      backend, backend::BackendRequest{rec.step1_prompt, config.step1_params, {doc.id, "step1", 0}});
  rec.step1_output = std::string(text::trim(step1.text));

  const std::string base_prompt =
      prompt::build_generation_prompt(rec.step1_output, doc.metadata, prompts, config.prompt_options);
  for (int attempt = 0; attempt <= std::max(0, config.max_regeneration); ++attempt) {
    std::string p = base_prompt;
    if (attempt > 0) {
      const auto failed = rec.validation.failed_checks();
      p += "\n" + prompt::build_correction(prompts, doc.metadata, failed) + "\n";
    }
    const auto response = backend::complete_with_retries(
        backend, backend::BackendRequest{p, config.step2_params, {doc.id, "step2", attempt}});
    rec.step2_prompts.push_back(std::move(p));
    rec.step2_outputs.emplace_back(text::trim(response.text));
    rec.final_summary = rec.step2_outputs.back();
    rec.parsed = tx::parse_tx_summary(rec.final_summary, doc.metadata.table_title, locale);
    rec.validation = tx::validate_tx(rec.parsed, doc.metadata.table_title);
    if (rec.validation.valid) break;
  }
  rec.tx_valid = rec.validation.valid;
  if (!rec.tx_valid) {
    rec.failure_reason = "TX validation failed: " + text::join(rec.validation.failed_checks(), ", ");
  }
  if (doc.reference_summary) rec.scores = eval::score(rec.final_summary, *doc.reference_summary, config.tokenizer);
  return rec;
}

std::vector<DocumentOutcome> run_corpus(std::span<const TableDocument> docs, const backend::TextBackend& backend,
                                        const PipelineConfig& config, std::size_t parallelism) {
  std::vector<DocumentOutcome> outcomes(docs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      DocumentOutcome& out = outcomes[i];
      try {
        out.record = run_pipeline(docs[i], backend, config);
      } catch (const DataError& e) {
        GenerationRecord failed;
        failed.id = docs[i].id;
        failed.failure_reason = e.what();
        out.record = std::move(failed);
      } catch (const Error& e) {
        out.error = docs[i].id + ": " + e.what();
        out.exit_code = e.exit_code();
      } catch (const std::exception& e) {
        out.error = docs[i].id + ": " + e.what();
        out.exit_code = 1;
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(docs.size(), 1));
  if (n == 1) {
    worker();
    return outcomes;
  }
  std::vector<std::jthread> pool;
  pool.reserve(n);
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  pool.clear();
  return outcomes;
}

}  // namespace tabtx::pipeline

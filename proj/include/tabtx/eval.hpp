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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Sentence-level ROUGE-1, ROUGE-L and BLEU with corpus aggregation.
namespace tabtx::eval {

enum class TokenMode { Word, Char };

/// Token sequence fed to the metrics. Normally built by `tokenize`.
class TokenSeq {
 public:
  TokenSeq() = default;
  explicit TokenSeq(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

  [[nodiscard]] const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  [[nodiscard]] std::size_t size() const noexcept { return tokens_.size(); }
  [[nodiscard]] bool empty() const noexcept { return tokens_.empty(); }

  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;

 private:
  std::vector<std::string> tokens_;
};

/// Word mode: ASCII case folding, punctuation detached into its own tokens
/// (except '.' and ',' between digits), whitespace split. Char mode: every
/// non-space code point is a token.
TokenSeq tokenize(std::string_view text, TokenMode mode);

/// Char mode when the reference contains Hangul, word mode otherwise.
TokenMode detect_mode(std::string_view reference) noexcept;

std::optional<TokenMode> parse_mode(std::string_view name) noexcept;  // word|char|auto(nullopt)

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

double rouge1(const TokenSeq& candidate, const TokenSeq& reference);
double rougeL(const TokenSeq& candidate, const TokenSeq& reference);

/// Uniform-weight geometric mean of clipped n-gram precisions for
/// n = 1..max_n. A zero match count at n >= 2 is smoothed to 1 / (total + 1);
/// zero unigram matches give 0. Brevity penalty exp(1 - |ref| / |cand|) when
/// the candidate is shorter. Throws std::invalid_argument when max_n < 1.
double bleu(const TokenSeq& candidate, const TokenSeq& reference, int max_n = 4);

struct ScoreTriple {
  double rouge1 = 0.0;
  double rougeL = 0.0;
  double bleu = 0.0;

  [[nodiscard]] double average() const noexcept { return (rouge1 + rougeL + bleu) / 3.0; }
  friend bool operator==(const ScoreTriple&, const ScoreTriple&) = default;
};

/// Tokenizes both sides with `mode` (auto-detected from the reference when
/// empty) and computes all three metrics.
ScoreTriple score(std::string_view candidate, std::string_view reference,
                  std::optional<TokenMode> mode = std::nullopt);

struct DocumentScore {
  std::string id;
  ScoreTriple scores;
};

struct EvalReport {
  std::vector<DocumentScore> per_document;
  ScoreTriple corpus_means;
  double overall_average = 0.0;  // mean of the three corpus means, unrounded
};

/// Throws EmptyCorpusError on empty input.
EvalReport aggregate(std::span<const DocumentScore> per_doc);

/// Presentation rounding to two decimals.
double round2(double v) noexcept;

}  // namespace tabtx::eval

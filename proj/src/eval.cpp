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

#include "tabtx/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tabtx/error.hpp"
#include "tabtx/text.hpp"

namespace tabtx::eval {

namespace {

bool is_punct(char32_t cp) noexcept {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x2010 && cp <= 0x205E) || (cp >= 0x3001 && cp <= 0x3003) ||
         (cp >= 0x3008 && cp <= 0x3011) || (cp >= 0xFF01 && cp <= 0xFF0F) ||
         (cp >= 0xFF1A && cp <= 0xFF20) || cp == 0x00B7;
}

bool is_digit(char32_t cp) noexcept { return cp >= U'0' && cp <= U'9'; }

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::size_t clipped_matches(const NgramCounts& cand, const NgramCounts& ref) {
  std::size_t m = 0;
  for (const auto& [gram, count] : cand) {
    if (auto it = ref.find(gram); it != ref.end()) m += std::min(count, it->second);
  }
  return m;
}

double f1(double matches, std::size_t cand_len, std::size_t ref_len) {
  if (cand_len == 0 || ref_len == 0 || matches == 0.0) return 0.0;
  const double p = matches / static_cast<double>(cand_len);
  const double r = matches / static_cast<double>(ref_len);
  return 2.0 * p * r / (p + r);
}

}  // namespace

TokenSeq tokenize(std::string_view text, TokenMode mode) {
  std::vector<std::string> tokens;
  if (mode == TokenMode::Char) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t start = pos;
      if (!text::is_space(text::next_code_point(text, pos))) {
        tokens.emplace_back(text.substr(start, pos - start));
      }
    }
    return TokenSeq(std::move(tokens));
  }

  std::vector<char32_t> cps;
  std::vector<std::string_view> units;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t start = pos;
    cps.push_back(text::next_code_point(text, pos));
    units.push_back(text.substr(start, pos - start));
  }
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(text::ascii_lower(current));
    current.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (text::is_space(cp)) {
      flush();
      continue;
    }
    const bool numeric_separator = (cp == U'.' || cp == U',') && i > 0 && i + 1 < cps.size() &&
                                   is_digit(cps[i - 1]) && is_digit(cps[i + 1]);
    if (is_punct(cp) && !numeric_separator) {
      flush();
      tokens.emplace_back(units[i]);
      continue;
    }
    current.append(units[i]);
  }
  flush();
  return TokenSeq(std::move(tokens));
}

TokenMode detect_mode(std::string_view reference) noexcept {
  return text::contains_hangul(reference) ? TokenMode::Char : TokenMode::Word;
}

std::optional<TokenMode> parse_mode(std::string_view name) noexcept {
  if (name == "word") return TokenMode::Word;
  if (name == "char") return TokenMode::Char;
  return std::nullopt;
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge1(const TokenSeq& candidate, const TokenSeq& reference) {
  const auto m = clipped_matches(count_ngrams(candidate.tokens(), 1), count_ngrams(reference.tokens(), 1));
  return f1(static_cast<double>(m), candidate.size(), reference.size());
}

double rougeL(const TokenSeq& candidate, const TokenSeq& reference) {
  const auto lcs = lcs_length(candidate.tokens(), reference.tokens());
  return f1(static_cast<double>(lcs), candidate.size(), reference.size());
}

double bleu(const TokenSeq& candidate, const TokenSeq& reference, int max_n) {
  if (max_n < 1) throw std::invalid_argument("bleu: max_n must be >= 1");
  if (candidate.empty()) return 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const std::size_t total = candidate.size() >= un ? candidate.size() - un + 1 : 0;
    const std::size_t matches =
        clipped_matches(count_ngrams(candidate.tokens(), un), count_ngrams(reference.tokens(), un));
    double precision = 0.0;
    if (matches > 0) {
      precision = static_cast<double>(matches) / static_cast<double>(total);
    } else if (n >= 2) {
      precision = 1.0 / static_cast<double>(total + 1);
    } else {
      return 0.0;
    }
    log_sum += std::log(precision);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return bp * std::exp(log_sum / max_n);
}

ScoreTriple score(std::string_view candidate, std::string_view reference, std::optional<TokenMode> mode) {
  const TokenMode m = mode.value_or(detect_mode(reference));
  const TokenSeq cand = tokenize(candidate, m);
  const TokenSeq ref = tokenize(reference, m);
  return {rouge1(cand, ref), rougeL(cand, ref), bleu(cand, ref)};
}

EvalReport aggregate(std::span<const DocumentScore> per_doc) {
  if (per_doc.empty()) throw EmptyCorpusError();
  EvalReport report;
  report.per_document.assign(per_doc.begin(), per_doc.end());
  for (const auto& d : per_doc) {
    report.corpus_means.rouge1 += d.scores.rouge1;
    report.corpus_means.rougeL += d.scores.rougeL;
    report.corpus_means.bleu += d.scores.bleu;
  }
  const auto n = static_cast<double>(per_doc.size());
  report.corpus_means.rouge1 /= n;
  report.corpus_means.rougeL /= n;
  report.corpus_means.bleu /= n;
  report.overall_average = report.corpus_means.average();
  return report;
}

double round2(double v) noexcept { return std::round(v * 100.0) / 100.0; }

}  // namespace tabtx::eval

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

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tabtx/error.hpp"
#include "tabtx/eval.hpp"

using namespace tabtx;
using namespace tabtx::eval;

namespace {
TokenSeq seq(std::vector<std::string> t) { return TokenSeq(std::move(t)); }
}  // namespace

TEST_CASE("word tokenization detaches punctuation and folds case") {
  CHECK(tokenize("The cat sat.", TokenMode::Word).tokens() == std::vector<std::string>{"the", "cat", "sat", "."});
  CHECK(tokenize("2,437 applications", TokenMode::Word).tokens() ==
        std::vector<std::string>{"2,437", "applications"});
  CHECK(tokenize("", TokenMode::Word).empty());
  CHECK(tokenize("   ", TokenMode::Char).empty());
}

TEST_CASE("char tokenization yields non-space code points") {
  CHECK(tokenize("감소했다", TokenMode::Char).tokens() == std::vector<std::string>{"감", "소", "했", "다"});
  CHECK(tokenize("a b", TokenMode::Char).tokens() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("tokenizer mode detection and names") {
  CHECK(detect_mode("난민 현황") == TokenMode::Char);
  CHECK(detect_mode("refugee status") == TokenMode::Word);
  CHECK(parse_mode("word") == TokenMode::Word);
  CHECK(parse_mode("char") == TokenMode::Char);
  CHECK_FALSE(parse_mode("auto"));
}

TEST_CASE("rouge1") {
  CHECK(rouge1(seq({"a", "b"}), seq({"a", "b"})) == doctest::Approx(1.0));
  CHECK(rouge1(seq({"a"}), seq({"b"})) == 0.0);
  CHECK(rouge1(seq({"the", "cat", "sat"}), seq({"the", "cat", "ran"})) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rouge1(seq({}), seq({"a"})) == 0.0);
  CHECK(rouge1(seq({"a"}), seq({})) == 0.0);
  CHECK(rouge1(seq({"a", "a", "a"}), seq({"a"})) == doctest::Approx(0.5));
}

TEST_CASE("rougeL") {
  CHECK(rougeL(seq({"x", "y"}), seq({"x", "y"})) == doctest::Approx(1.0));
  CHECK(rougeL(seq({"a", "b", "c", "d"}), seq({"a", "c", "b", "d"})) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(rougeL(seq({"a"}), seq({"b"})) == 0.0);
  CHECK(rougeL(seq({}), seq({})) == 0.0);
  const std::vector<std::string> a{"a", "b", "c", "d"};
  const std::vector<std::string> b{"a", "c", "b", "d"};
  CHECK(lcs_length(a, b) == 3);
  CHECK(oracle::lcs_exhaustive(a, b) == 3);
}

TEST_CASE("bleu") {
  CHECK(bleu(seq({"a", "b", "c", "d"}), seq({"a", "b", "c", "d"})) == doctest::Approx(1.0));
  CHECK(bleu(seq({}), seq({"a"})) == 0.0);
  CHECK(bleu(seq({"z"}), seq({"a"})) == 0.0);
  const auto c = seq({"the", "cat", "sat", "down"});
  const auto r = seq({"the", "cat", "lay", "down"});
  const double expected = std::pow(3.0 / 4.0 * 1.0 / 3.0 * 1.0 / 3.0 * 1.0 / 2.0, 0.25);
  CHECK(std::abs(bleu(c, r) - expected) <= 1e-9);
  CHECK(std::abs(bleu(c, r) - oracle::bleu(c.tokens(), r.tokens())) <= 1e-9);
  CHECK(expected == doctest::Approx(0.45180100180492).epsilon(1e-12));
  CHECK_THROWS_AS((void)bleu(c, r, 0), std::invalid_argument);
}

TEST_CASE("brevity penalty applies to short candidates") {
  const auto c = seq({"a", "b"});
  const auto r = seq({"a", "b", "c", "d"});
  CHECK(bleu(c, r, 1) == doctest::Approx(std::exp(1.0 - 2.0)));
  CHECK(bleu(r, c, 1) == doctest::Approx(0.5));
}

TEST_CASE("metrics match the brute-force oracles on random pairs") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto a = oracle::random_tokens(rng, 12, 5);
    const auto b = oracle::random_tokens(rng, 12, 5);
    const TokenSeq ca(a), cb(b);
    CHECK(std::abs(rouge1(ca, cb) - oracle::rouge1(a, b)) <= 1e-9);
    CHECK(std::abs(rougeL(ca, cb) - oracle::rougeL(a, b)) <= 1e-9);
    CHECK(std::abs(bleu(ca, cb) - oracle::bleu(a, b)) <= 1e-9);
    CHECK(std::abs(bleu(ca, cb, 2) - oracle::bleu(a, b, 2)) <= 1e-9);
  }
}

TEST_CASE("metric properties") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto a = oracle::random_tokens(rng, 10, 6);
    const auto b = oracle::random_tokens(rng, 10, 6);
    const TokenSeq ca(a), cb(b);
    for (double v : {rouge1(ca, cb), rougeL(ca, cb), bleu(ca, cb)}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(lcs_length(a, b) <= oracle::clipped(a, b, 1));
    if (!a.empty()) {
      CHECK(rouge1(ca, ca) == doctest::Approx(1.0));
      CHECK(rougeL(ca, ca) == doctest::Approx(1.0));
      if (a.size() >= 4) CHECK(bleu(ca, ca) == doctest::Approx(1.0));
    }
    auto shuffled = a;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const TokenSeq cs(shuffled);
    CHECK(rouge1(cs, cb) == doctest::Approx(rouge1(ca, cb)));
    if (!a.empty()) CHECK(rougeL(cs, ca) <= rougeL(ca, ca) + 1e-12);
  }
}

TEST_CASE("score picks the tokenizer from the reference") {
  const auto s = score("국적별 난민", "국적별 난민");
  CHECK(s.rouge1 == doctest::Approx(1.0));
  const auto w = score("The cat sat.", "the cat sat .");
  CHECK(w.rouge1 == doctest::Approx(1.0));
  CHECK(w.average() == doctest::Approx(1.0));
}

TEST_CASE("aggregation matches the reported averages") {
  const std::vector<DocumentScore> first_row{{"x", {0.51, 0.39, 0.44}}};
  const auto r1 = aggregate(first_row);
  CHECK(round2(r1.overall_average) == doctest::Approx(0.45));
  const std::vector<DocumentScore> second_row{{"y", {0.37, 0.28, 0.35}}};
  CHECK(round2(aggregate(second_row).overall_average) == doctest::Approx(0.33));
  const std::vector<DocumentScore> zeros{{"a", {}}, {"b", {}}};
  const auto z = aggregate(zeros);
  CHECK(z.overall_average == 0.0);
  CHECK(z.corpus_means == ScoreTriple{});
}

TEST_CASE("aggregation means per metric") {
  const std::vector<DocumentScore> docs{{"a", {1.0, 0.5, 0.0}}, {"b", {0.0, 0.5, 1.0}}};
  const auto r = aggregate(docs);
  CHECK(r.corpus_means.rouge1 == doctest::Approx(0.5));
  CHECK(r.corpus_means.rougeL == doctest::Approx(0.5));
  CHECK(r.corpus_means.bleu == doctest::Approx(0.5));
  CHECK(r.overall_average == doctest::Approx(0.5));
  CHECK(r.per_document.size() == 2);
  CHECK_THROWS_AS(aggregate(std::vector<DocumentScore>{}), EmptyCorpusError);
}

TEST_CASE("round2") {
  CHECK(round2(0.4466) == doctest::Approx(0.45));
  CHECK(round2(0.3333) == doctest::Approx(0.33));
  CHECK(round2(0.0) == 0.0);
}

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

#include "tabtx/tx_structure.hpp"

#include <algorithm>
#include <array>

#include "tabtx/error.hpp"
#include "tabtx/text.hpp"

namespace tabtx::tx {

std::string_view to_string(Locale l) noexcept { return l == Locale::Ko ? "ko" : "en"; }

std::optional<Locale> parse_locale(std::string_view tag) noexcept {
  if (tag == "en") return Locale::En;
  if (tag == "ko") return Locale::Ko;
  return std::nullopt;
}

Locale resolve_locale(std::string_view setting, std::string_view table_title) {
  if (setting == "auto") return text::contains_hangul(table_title) ? Locale::Ko : Locale::En;
  if (auto l = parse_locale(setting)) return *l;
  throw ConfigError("unknown locale '" + std::string(setting) + "' (expected en, ko or auto)");
}

const std::vector<std::string>& citation_markers(Locale locale) {
  static const std::vector<std::string> en{"According to", "Based on"};
  static const std::vector<std::string> ko{"에 따르면", "에 의하면"};
  return locale == Locale::Ko ? ko : en;
}

ThemePart compose_theme_part(std::string_view table_title, Locale locale) {
  std::string phrase = text::collapse_whitespace(table_title);
  if (phrase.empty()) throw EmptyTitleError();
  const std::string& marker = citation_markers(locale).front();
  ThemePart theme;
  theme.citation_expression = marker;
  theme.rendered = locale == Locale::Ko ? phrase + marker : marker + " " + phrase + ",";
  theme.title_phrase = std::move(phrase);
  return theme;
}

std::string compose_sentence(const ThemePart& theme, std::string_view explanation) {
  return theme.rendered + " " + std::string(explanation);
}

namespace {

struct MarkerHit {
  std::size_t pos = std::string_view::npos;
  std::size_t len = 0;
};

MarkerHit earliest_marker(std::string_view body, Locale locale) {
  MarkerHit best;
  for (const auto& m : citation_markers(locale)) {
    const std::size_t p = text::ifind(body, m);
    if (p == std::string_view::npos) continue;
    if (p < best.pos || (p == best.pos && m.size() > best.len)) best = {p, m.size()};
  }
  return best;
}

}  // namespace

TXSummary parse_tx_summary(std::string_view text, std::string_view table_title, Locale locale) {
  TXSummary out;
  out.full_text = std::string(text);
  const std::string_view body = text::trim_left(text);
  const MarkerHit hit = earliest_marker(body, locale);
  if (hit.pos == std::string_view::npos) {
    out.explanation = std::string(text::trim(text));
    return out;
  }

  std::size_t theme_end = 0;  // one past the delimiter
  std::string_view phrase;
  if (locale == Locale::Ko) {
    theme_end = hit.pos + hit.len;
    if (theme_end < body.size() && body[theme_end] == ',') ++theme_end;
    phrase = text::trim(body.substr(0, hit.pos));
  } else {
    const std::size_t after = hit.pos + hit.len;
    std::size_t search_from = after;
    const std::string title = text::collapse_whitespace(table_title);
    const std::string_view rest = text::trim_left(body.substr(after));
    if (!title.empty() && text::starts_with_icase(rest, title)) {
      search_from = body.size() - rest.size() + title.size();
    }
    const std::size_t comma = body.find(',', search_from);
    if (comma == std::string_view::npos) {
      out.explanation = std::string(text::trim(text));
      return out;
    }
    theme_end = comma + 1;
    phrase = text::trim(body.substr(after, comma - after));
  }

  out.theme.citation_expression = std::string(body.substr(hit.pos, hit.len));
  out.theme.title_phrase = std::string(phrase);
  out.theme.rendered = std::string(body.substr(0, theme_end));
  out.explanation = std::string(text::trim(body.substr(theme_end)));
  return out;
}

std::vector<std::string> TXValidationReport::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

const TXCheck* TXValidationReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string normalize_title(std::string_view title) {
  std::string t = text::ascii_lower(text::collapse_whitespace(title));
  if (!text::contains_hangul(t)) return t;
  // Topic, subject, object, genitive and adverbial particles, longest first.
  static constexpr std::array<std::string_view, 17> kParticles{
      "에서", "으로", "에게", "께서", "은", "는", "이", "가", "을", "를", "의", "에", "로", "와", "과", "도", "만"};
  for (const auto p : kParticles) {
    if (t.size() > p.size() && t.ends_with(p)) {
      t.resize(t.size() - p.size());
      break;
    }
  }
  return std::string(text::trim(t));
}

std::size_t count_sentence_terminators(std::string_view s) {
  std::vector<char32_t> cps;
  for (std::size_t pos = 0; pos < s.size();) cps.push_back(text::next_code_point(s, pos));
  auto terminal = [](char32_t cp) {
    return cp == U'.' || cp == U'!' || cp == U'?' || cp == U'。' || cp == U'！' || cp == U'？';
  };
  std::size_t count = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (!terminal(cps[i])) continue;
    std::size_t j = i;
    while (j + 1 < cps.size() && terminal(cps[j + 1])) ++j;
    // closing quotes and brackets may sit between the terminator and the break
    std::size_t k = j + 1;
    while (k < cps.size() && (cps[k] == U'"' || cps[k] == U'\'' || cps[k] == U')' || cps[k] == U'”' ||
                              cps[k] == U'’')) {
      ++k;
    }
    if (k == cps.size() || text::is_space(cps[k])) ++count;
    i = j;
  }
  return count;
}

TXValidationReport validate_tx(const TXSummary& summary, std::string_view table_title) {
  TXValidationReport report;
  const ThemePart& theme = summary.theme;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  add("has_citation_expression", !theme.citation_expression.empty() && !theme.rendered.empty(),
      theme.citation_expression.empty() ? "no citation expression found" : theme.citation_expression);

  const std::string want = normalize_title(table_title);
  const std::string have = text::ascii_lower(text::collapse_whitespace(theme.rendered));
  const bool contains_title = !want.empty() && have.find(want) != std::string::npos;
  add("theme_contains_title_phrase", contains_title,
      contains_title ? want : "theme '" + theme.rendered + "' does not contain '" + want + "'");

  bool prefix = false;
  if (!theme.rendered.empty() && !theme.citation_expression.empty()) {
    const std::string_view body = text::trim_left(summary.full_text);
    std::string_view r = theme.rendered;
    const bool at_start = body.starts_with(r);
    const bool opens = text::starts_with_icase(r, theme.citation_expression);
    if (r.ends_with(',')) r.remove_suffix(1);
    const bool closes = r.ends_with(theme.citation_expression);
    prefix = at_start && (opens || closes);
  }
  add("theme_is_prefix", prefix, prefix ? "" : "theme is not the sentence-initial adverbial phrase");

  add("explanation_nonempty", !text::trim(summary.explanation).empty(), "");

  const std::size_t terminators = count_sentence_terminators(summary.full_text);
  add("single_sentence", terminators == 1, std::to_string(terminators) + " sentence terminator(s)");

  report.valid = std::all_of(report.checks.begin(), report.checks.end(), [](const TXCheck& c) { return c.passed; });
  return report;
}

}  // namespace tabtx::tx

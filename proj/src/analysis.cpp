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

#include "tabtx/analysis.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <regex>

#include "tabtx/error.hpp"
#include "tabtx/text.hpp"

namespace tabtx::analysis {

namespace {

struct Scale {
  std::string_view word;
  int exponent;
};

constexpr std::array<Scale, 3> kKoreanSmall{{{"십", 1}, {"백", 2}, {"천", 3}}};
constexpr std::array<Scale, 4> kKoreanLarge{{{"만", 4}, {"억", 8}, {"조", 12}, {"경", 16}}};
constexpr std::array<Scale, 4> kEnglish{{{"thousand", 3}, {"million", 6}, {"billion", 9}, {"trillion", 12}}};
constexpr std::array<std::string_view, 5> kCurrencySymbols{"$", "₩", "€", "£", "¥"};
constexpr std::array<std::string_view, 4> kPercentMarkers{"%", "％", "퍼센트", "percent"};
constexpr std::array<std::string_view, 17> kCurrencyMarkers{
    "krw", "usd", "eur", "jpy", "cny", "won", "dollar", "원", "₩", "$", "€", "£", "¥", "달러", "엔", "위안", "유로"};

double pow10(int k) {
  static constexpr std::array<double, 23> exact{1e0,  1e1,  1e2,  1e3,  1e4,  1e5,  1e6,  1e7,
                                                1e8,  1e9,  1e10, 1e11, 1e12, 1e13, 1e14, 1e15,
                                                1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};
  if (k >= 0 && k < static_cast<int>(exact.size())) return exact[static_cast<std::size_t>(k)];
  return std::pow(10.0, k);
}

// digits * 10^exponent with a single rounding whenever both factors are exact.
double scale_digits(const std::string& digits, int exponent) {
  if (digits.size() <= 19) {
    const double sig = static_cast<double>(std::strtoull(digits.c_str(), nullptr, 10));
    if (digits.size() <= 15 || sig < 9007199254740992.0) {
      return exponent >= 0 ? sig * pow10(exponent) : sig / pow10(-exponent);
    }
  }
  const double sig = std::strtod(digits.c_str(), nullptr);
  return exponent >= 0 ? sig * pow10(exponent) : sig / pow10(-exponent);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  [[nodiscard]] bool done() const { return pos >= s.size(); }
  [[nodiscard]] std::string_view rest() const { return s.substr(pos); }
  void skip_space() {
    while (pos < s.size()) {
      std::size_t next = pos;
      if (!text::is_space(text::next_code_point(s, next))) break;
      pos = next;
    }
  }
  bool eat(std::string_view w) {
    if (rest().starts_with(w)) {
      pos += w.size();
      return true;
    }
    return false;
  }
};

// Digits with optional thousands separators and fraction. Returns the digit
// string (separators removed) and the number of fraction digits.
bool read_decimal(Cursor& cur, std::string& digits, int& fraction) {
  const std::size_t start = cur.pos;
  digits.clear();
  fraction = 0;
  while (!cur.done()) {
    const char c = cur.s[cur.pos];
    if (is_digit(c)) {
      digits.push_back(c);
      ++cur.pos;
    } else if (c == ',' && !digits.empty() && cur.pos + 1 < cur.s.size() && is_digit(cur.s[cur.pos + 1])) {
      ++cur.pos;
    } else {
      break;
    }
  }
  if (digits.empty()) {
    cur.pos = start;
    return false;
  }
  if (!cur.done() && cur.s[cur.pos] == '.' && cur.pos + 1 < cur.s.size() && is_digit(cur.s[cur.pos + 1])) {
    ++cur.pos;
    while (!cur.done() && is_digit(cur.s[cur.pos])) {
      digits.push_back(cur.s[cur.pos]);
      ++cur.pos;
      ++fraction;
    }
  }
  return true;
}

// Korean small scales followed by at most one large scale ("천만" = 10^7).
int read_korean_scale(Cursor& cur, bool& has_large) {
  int exponent = 0;
  has_large = false;
  for (bool again = true; again;) {
    again = false;
    for (const auto& sc : kKoreanSmall) {
      if (cur.eat(sc.word)) {
        exponent += sc.exponent;
        again = true;
      }
    }
  }
  for (const auto& sc : kKoreanLarge) {
    if (cur.eat(sc.word)) {
      exponent += sc.exponent;
      has_large = true;
      break;
    }
  }
  return exponent;
}

int read_english_scale(Cursor& cur) {
  const std::size_t save = cur.pos;
  cur.skip_space();
  for (const auto& sc : kEnglish) {
    if (text::starts_with_icase(cur.rest(), sc.word)) {
      const std::size_t end = cur.pos + sc.word.size();
      if (end == cur.s.size() || !std::isalpha(static_cast<unsigned char>(cur.s[end]))) {
        cur.pos = end;
        return sc.exponent;
      }
    }
  }
  cur.pos = save;
  return 0;
}

struct Scan {
  double value = 0.0;
  std::string unit;
};

std::optional<Scan> scan_number(std::string_view raw) {
  Cursor cur{text::trim(raw)};
  std::string prefix_unit;
  for (const auto sym : kCurrencySymbols) {
    if (cur.eat(sym)) {
      prefix_unit = std::string(sym);
      cur.skip_space();
      break;
    }
  }
  double sign = 1.0;
  if (cur.eat("-") || cur.eat("−")) {
    sign = -1.0;
  } else {
    cur.eat("+");
  }
  if (prefix_unit.empty()) {
    for (const auto sym : kCurrencySymbols) {
      if (cur.eat(sym)) {
        prefix_unit = std::string(sym);
        break;
      }
    }
  }

  double total = 0.0;
  bool any = false;
  int last_large = 100;
  for (;;) {
    const std::size_t group_start = cur.pos;
    std::string digits;
    int fraction = 0;
    if (!read_decimal(cur, digits, fraction)) {
      cur.pos = group_start;
      break;
    }
    const std::size_t after_digits = cur.pos;
    cur.skip_space();
    bool has_large = false;
    int exponent = read_korean_scale(cur, has_large);
    if (exponent == 0) {
      cur.pos = after_digits;
      exponent = read_english_scale(cur);
    }
    // A later compound group must carry a strictly smaller large unit.
    if (any && (!has_large || exponent >= last_large)) {
      cur.pos = group_start;
      break;
    }
    total += scale_digits(digits, exponent - fraction);
    any = true;
    if (!has_large) break;
    last_large = exponent;
    const std::size_t before_space = cur.pos;
    cur.skip_space();
    if (cur.done() || !is_digit(cur.s[cur.pos])) {
      cur.pos = before_space;
      break;
    }
  }
  if (!any) return std::nullopt;

  std::string suffix(text::trim(cur.rest()));
  if (std::any_of(suffix.begin(), suffix.end(), is_digit)) return std::nullopt;
  if (text::code_point_count(suffix) > 16) return std::nullopt;
  Scan out;
  out.value = sign * total;
  if (!prefix_unit.empty() && !suffix.empty()) {
    out.unit = prefix_unit + " " + suffix;
  } else {
    out.unit = prefix_unit.empty() ? suffix : prefix_unit;
  }
  return out;
}

template <std::size_t N>
bool has_marker(std::string_view unit, const std::array<std::string_view, N>& markers) {
  const std::string folded = text::ascii_lower(unit);
  return std::any_of(markers.begin(), markers.end(),
                     [&](std::string_view m) { return folded.find(m) != std::string::npos; });
}

bool has_sentence_final_mark(std::string_view v) {
  v = text::trim(v);
  if (v.empty()) return false;
  return v.ends_with('.') || v.ends_with('!') || v.ends_with('?') || v.ends_with("。") ||
         v.find(". ") != std::string_view::npos || v.find("다.") != std::string_view::npos;
}

}  // namespace

CellType classify_cell_type(std::string_view value) {
  if (const auto scan = scan_number(value)) {
    if (has_marker(scan->unit, kPercentMarkers)) return CellType::Percentage;
    if (has_marker(scan->unit, kCurrencyMarkers)) return CellType::Monetary;
    return CellType::PlainNumeric;
  }
  const std::string_view v = text::trim(value);
  if (text::code_point_count(v) <= 20 && !has_sentence_final_mark(v)) return CellType::Categorical;
  return CellType::Textual;
}

std::optional<ParsedNumber> parse_numeric(std::string_view value, CellType cell_type) {
  if (!is_numeric(cell_type)) return std::nullopt;
  const auto scan = scan_number(value);
  if (!scan) throw NumericParseError("no number in '" + std::string(value) + "'");
  ParsedNumber out{scan->value, std::nullopt};
  if (!scan->unit.empty()) out.unit = scan->unit;
  return out;
}

TypedCell type_cell(const KeyValueRecord& record) {
  TypedCell cell;
  cell.record = record;
  cell.cell_type = classify_cell_type(record.value);
  if (auto parsed = parse_numeric(record.value, cell.cell_type)) {
    cell.numeric_value = parsed->value;
    cell.unit = parsed->unit;
  }
  return cell;
}

std::optional<TemporalKey> parse_temporal(std::string_view header) {
  const std::string h = text::collapse_whitespace(header);
  static const std::regex year_re(R"(^(?:FY ?)?(\d{4})(?:년| ?years?)?$)", std::regex::icase);
  static const std::regex year_month_re(R"(^(\d{4})(?:[-./]|년 ?)(\d{1,2})(?:월|\.)?$)");
  static const std::regex quarter_year_re(R"(^(\d{4})(?:년)? ?[-/]? ?(?:Q([1-4])|([1-4]) ?분기|([1-4])Q)$)",
                                          std::regex::icase);
  static const std::regex year_last_quarter_re(R"(^Q([1-4]) ?[-/]? ?(\d{4})$)", std::regex::icase);
  static const std::regex quarter_re(R"(^(?:Q([1-4])|([1-4]) ?분기|([1-4])Q)$)", std::regex::icase);
  static const std::regex half_year_re(R"(^(?:(\d{4})(?:년)? ?)?(?:H([12])|(상|하)반기|(first|second) half)$)",
                                       std::regex::icase);
  static const std::regex month_re(R"(^(\d{1,2})월$)");

  auto num = [](const std::ssub_match& m) { return std::stoi(m.str()); };
  std::smatch m;
  if (std::regex_match(h, m, year_re)) return TemporalKey{num(m[1]), 0, 0};
  if (std::regex_match(h, m, year_month_re)) {
    const int month = num(m[2]);
    if (month >= 1 && month <= 12) return TemporalKey{num(m[1]), 3, month};
    return std::nullopt;
  }
  if (std::regex_match(h, m, quarter_year_re)) {
    const int q = m[2].matched ? num(m[2]) : m[3].matched ? num(m[3]) : num(m[4]);
    return TemporalKey{num(m[1]), 2, q};
  }
  if (std::regex_match(h, m, year_last_quarter_re)) return TemporalKey{num(m[2]), 2, num(m[1])};
  if (std::regex_match(h, m, quarter_re)) {
    const int q = m[1].matched ? num(m[1]) : m[2].matched ? num(m[2]) : num(m[3]);
    return TemporalKey{std::nullopt, 2, q};
  }
  if (std::regex_match(h, m, half_year_re)) {
    int half = 1;
    if (m[2].matched) {
      half = num(m[2]);
    } else if (m[3].matched) {
      half = m[3].str() == "상" ? 1 : 2;
    } else {
      half = text::ascii_lower(m[4].str()) == "first" ? 1 : 2;
    }
    std::optional<int> year;
    if (m[1].matched) year = num(m[1]);
    return TemporalKey{year, 1, half};
  }
  if (std::regex_match(h, m, month_re)) {
    const int month = num(m[1]);
    if (month >= 1 && month <= 12) return TemporalKey{std::nullopt, 3, month};
  }
  return std::nullopt;
}

namespace {

struct CellTime {
  TemporalKey key;
  std::string label;
};

std::vector<std::string> candidate_headers(const TypedCell& cell, const NormalizedGrid& grid) {
  std::vector<std::string> headers = cell.record.key_chain;
  const Coord at = cell.record.coordinate;
  if (!grid.contains(at)) return headers;
  auto add = [&](std::size_t r, std::size_t c) {
    const GridEntry& e = grid.at(r, c);
    if (e.is_header && !e.is_padding && std::find(headers.begin(), headers.end(), e.value) == headers.end()) {
      headers.push_back(e.value);
    }
  };
  for (std::size_t c = 0; c < grid.cols(); ++c) {
    if (c != at.col) add(at.row, c);
  }
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    if (r != at.row) add(r, at.col);
  }
  return headers;
}

// A year and at most one sub-year period, each taken from the first header
// providing it.
std::optional<CellTime> cell_time(const TypedCell& cell, const NormalizedGrid& grid) {
  std::optional<int> year;
  int granularity = 0;
  int index = 0;
  std::vector<std::string> labels;
  for (const auto& h : candidate_headers(cell, grid)) {
    const auto key = parse_temporal(h);
    if (!key) continue;
    bool used = false;
    if (key->year && !year) {
      year = key->year;
      used = true;
    }
    if (key->granularity > 0 && granularity == 0) {
      granularity = key->granularity;
      index = key->index;
      used = true;
    }
    if (used) labels.push_back(text::collapse_whitespace(h));
  }
  if (!year && granularity == 0) return std::nullopt;
  return CellTime{TemporalKey{year, granularity, index}, text::join(labels, " ")};
}

}  // namespace

AnalysisPlan select_analysis_method(std::span<const TypedCell> cells, const NormalizedGrid& grid) {
  AnalysisPlan plan;
  plan.ordered_cells.assign(cells.begin(), cells.end());
  if (cells.size() <= 1) return plan;

  const CellType first = cells.front().cell_type;
  const bool uniform = is_numeric(first) && std::all_of(cells.begin(), cells.end(), [&](const TypedCell& c) {
                         return c.cell_type == first && c.unit == cells.front().unit && c.numeric_value;
                       });
  if (!uniform) return plan;

  std::vector<CellTime> times;
  for (const auto& c : cells) {
    auto t = cell_time(c, grid);
    if (!t || (!times.empty() && !t->key.same_shape(times.front().key))) {
      times.clear();
      break;
    }
    times.push_back(std::move(*t));
  }
  bool ordered = times.size() == cells.size();
  if (ordered) {
    for (std::size_t i = 0; i < times.size() && ordered; ++i) {
      for (std::size_t j = i + 1; j < times.size(); ++j) {
        if (times[i].key == times[j].key) {
          ordered = false;
          break;
        }
      }
    }
  }

  if (ordered) {
    std::vector<std::size_t> idx(cells.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return times[a].key < times[b].key; });
    plan.method = AnalysisMethod::TrendAnalysis;
    plan.ordered_cells.clear();
    std::vector<std::string> labels;
    for (const std::size_t i : idx) {
      plan.ordered_cells.push_back(cells[i]);
      labels.push_back(times[i].label);
    }
    plan.axis = text::join(labels, " -> ");
    for (std::size_t i = 1; i < plan.ordered_cells.size(); ++i) {
      plan.deltas.push_back(*plan.ordered_cells[i].numeric_value - *plan.ordered_cells[i - 1].numeric_value);
    }
    return plan;
  }

  plan.method = AnalysisMethod::MagnitudeComparison;
  std::stable_sort(plan.ordered_cells.begin(), plan.ordered_cells.end(),
                   [](const TypedCell& a, const TypedCell& b) { return *a.numeric_value > *b.numeric_value; });
  // The innermost header every cell shares names the comparison axis.
  const auto& chain = cells.front().record.key_chain;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const bool shared = std::all_of(cells.begin(), cells.end(), [&](const TypedCell& c) {
      return std::find(c.record.key_chain.begin(), c.record.key_chain.end(), *it) != c.record.key_chain.end();
    });
    if (shared) {
      plan.axis = *it;
      break;
    }
  }
  return plan;
}

}  // namespace tabtx::analysis

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
#include <string>
#include <string_view>
#include <vector>

// Small UTF-8 and string helpers shared across modules.
namespace tabtx::text {

/// Decodes one code point starting at `pos`, advancing it. Invalid bytes
/// decode as U+FFFD and consume a single byte.
char32_t next_code_point(std::string_view s, std::size_t& pos) noexcept;

/// Splits into one UTF-8 string per code point.
std::vector<std::string> code_points(std::string_view s);

std::size_t code_point_count(std::string_view s) noexcept;

bool is_space(char32_t cp) noexcept;
bool is_hangul(char32_t cp) noexcept;
bool contains_hangul(std::string_view s) noexcept;

std::string_view trim(std::string_view s) noexcept;
std::string_view trim_left(std::string_view s) noexcept;

/// ASCII case folding; non-ASCII bytes pass through.
std::string ascii_lower(std::string_view s);

/// Trims and collapses internal whitespace runs to a single ASCII space.
std::string collapse_whitespace(std::string_view s);

/// Case-insensitive (ASCII) search; npos when absent.
std::size_t ifind(std::string_view haystack, std::string_view needle, std::size_t from = 0) noexcept;

bool starts_with_icase(std::string_view s, std::string_view prefix) noexcept;

/// Shortest round-trip decimal rendering; integral values below 1e15 print
/// without exponent or fraction.
std::string format_number(double v);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view s);

}  // namespace tabtx::text

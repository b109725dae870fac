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

#include "tabtx/text.hpp"

using namespace tabtx::text;

TEST_CASE("code points decode utf-8 and replace invalid bytes") {
  CHECK(code_points("a한b") == std::vector<std::string>{"a", "한", "b"});
  CHECK(code_point_count("국적별") == 3);
  std::string bad = "x\xff";
  std::size_t pos = 1;
  CHECK(next_code_point(bad, pos) == U'�');
  CHECK(pos == 2);
}

TEST_CASE("hangul detection") {
  CHECK(contains_hangul("refugee 난민"));
  CHECK_FALSE(contains_hangul("refugee"));
  CHECK(is_hangul(U'가'));
  CHECK_FALSE(is_hangul(U'a'));
}

TEST_CASE("whitespace helpers include wide spaces") {
  CHECK(trim("　 hi  ") == "hi");
  CHECK(trim_left("  x ") == "x ");
  CHECK(collapse_whitespace("  a \t b\n c ") == "a b c");
  CHECK(collapse_whitespace("") == "");
}

TEST_CASE("case-insensitive search") {
  CHECK(ifind("Hello According TO x", "according to") == 6);
  CHECK(ifind("abc", "d") == std::string_view::npos);
  CHECK(starts_with_icase("BASED on", "based on"));
  CHECK_FALSE(starts_with_icase("Base", "based"));
  CHECK(ascii_lower("KRW 원") == "krw 원");
}

TEST_CASE("number formatting") {
  CHECK(format_number(2437) == "2437");
  CHECK(format_number(9.435e12) == "9435000000000");
  CHECK(format_number(-106) == "-106");
  CHECK(format_number(12.5) == "12.5");
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("join and hash") {
  CHECK(join({"a", "b", "c"}, " > ") == "a > b > c");
  CHECK(join({}, ",") == "");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

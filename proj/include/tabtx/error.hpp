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
#include <stdexcept>
#include <string>

namespace tabtx {

/// Base of every error thrown by the library. The CLI maps subclasses onto
/// exit codes through `exit_code()`.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual int exit_code() const noexcept { return 1; }
};

/// Corpus or document data violates an invariant (exit code 1).
class DataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] int exit_code() const noexcept override { return 3; }
};

class SpanOverlapError : public DataError {
 public:
  SpanOverlapError(std::size_t row, std::size_t col)
      : DataError("span overlap at (" + std::to_string(row) + "," + std::to_string(col) + ")"),
        row_(row),
        col_(col) {}
  [[nodiscard]] std::size_t row() const noexcept { return row_; }
  [[nodiscard]] std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// No highlighted data cell survived preprocessing.
class EmptyResultError : public DataError {
 public:
  using DataError::DataError;
};

class NumericParseError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyTitleError : public DataError {
 public:
  EmptyTitleError() : DataError("table title is empty") {}
};

class EmptyCorpusError : public DataError {
 public:
  EmptyCorpusError() : DataError("nothing to aggregate: corpus is empty") {}
};

class TemplateError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace tabtx

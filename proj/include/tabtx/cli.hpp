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

#include <iosfwd>
#include <string>
#include <vector>

namespace tabtx::cli {

/// Exit codes: 0 success, 1 validation/data error, 2 backend error,
/// 3 config error.
enum ExitCode : int { kOk = 0, kDataError = 1, kBackendError = 2, kConfigError = 3 };

/// Entry point behind the `tabtx` binary. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tabtx::cli

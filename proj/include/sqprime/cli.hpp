// Copyright 2026 The sqprime Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace sqprime::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
};

// Runs one subcommand. `args` excludes the program name. Data goes to `out`
// (or the --output file), diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// Parses "p/q" or a decimal literal.
double parse_rational(const std::string& text);

}  // namespace sqprime::cli

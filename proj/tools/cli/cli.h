// Copyright 2026 The rbdephase Authors
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

#ifndef RBDEPHASE_TOOLS_CLI_H
#define RBDEPHASE_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace rbdephase::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitQuadrature = 3;
inline constexpr int kExitPrecondition = 4;
inline constexpr int kExitIo = 5;

/// Runs one command line (args[0] is the program name). Normal output
/// goes to out, diagnostics to err; the return value is the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace rbdephase::cli

#endif  // RBDEPHASE_TOOLS_CLI_H

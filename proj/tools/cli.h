// Copyright 2026 The qalloc Authors
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

#ifndef QALLOC_TOOLS_CLI_H_
#define QALLOC_TOOLS_CLI_H_

#include <ostream>

namespace qalloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Entry point behind the `qalloc` binary. Subcommands:
//   run <preset|config.yaml>   simulate and export results
//   solve <instance.txt>       solve one assignment instance
//   presets                    list the built-in scenarios
//   validate <config.yaml>     check a config without running it
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qalloc::cli

#endif  // QALLOC_TOOLS_CLI_H_

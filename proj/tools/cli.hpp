// Copyright 2026 The Quadbench Authors
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

// The quadbench command line: sprint | scramble | dyno | tune | replay.
//
// Output directory precedence: --out, then $QUADBENCH_OUT, then the config's
// run.output_dir.

#ifndef QUADBENCH_TOOLS_CLI_HPP_
#define QUADBENCH_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace quadbench::cli {

enum ExitCode : int {
  kOk = 0,
  kAllDnf = 1,
  kConfigError = 2,
  kDiverged = 3,
};

inline constexpr const char* kOutputEnv = "QUADBENCH_OUT";

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace quadbench::cli

#endif  // QUADBENCH_TOOLS_CLI_HPP_

// Copyright 2026 The sqhex Authors.
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

// Subcommands of the sqhex tool. Each writes its files into the output
// directory and a short summary to `log`. Errors surface as ValidationError
// (exit code 2) or NumericError (exit code 3).

#ifndef SQHEX_TOOLS_COMMANDS_H_
#define SQHEX_TOOLS_COMMANDS_H_

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "config.h"

namespace sqhex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitOther = 1;

const std::vector<std::string>& command_names();

void cmd_partition(const RunConfig& config, std::ostream& log);
void cmd_sample(const RunConfig& config, std::ostream& log);
void cmd_frozen_boundary(const RunConfig& config, std::ostream& log);
void cmd_density(const RunConfig& config, std::ostream& log);
void cmd_limit_height(const RunConfig& config, std::ostream& log);
void cmd_gue(const RunConfig& config, std::ostream& log);
void cmd_enumerate(const RunConfig& config, std::ostream& log);

void run_command(const std::string& name, const RunConfig& config, std::ostream& log);

// Full command line handling, returns the process exit code.
// Runs body and maps its exception to an exit code, reporting it on err.
int guarded_run(const std::function<void()>& body, std::ostream& err);

int tool_main(int argc, char** argv);

}  // namespace sqhex::cli

#endif  // SQHEX_TOOLS_COMMANDS_H_

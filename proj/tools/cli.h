// Copyright (c) 2026 labelcheck authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. All commands run through RunMain so tests can
// drive them in-process.

#ifndef LABELCHECK_TOOLS_CLI_H_
#define LABELCHECK_TOOLS_CLI_H_

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "labelcheck/validation.h"

namespace labelcheck::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitWeak = 3;
inline constexpr int kExitOthers = 4;

inline constexpr double kDefaultFrameShiftMs = 40.0;

// 0 for STRONG_LABEL, 3 for WEAK_LABEL, 4 for OTHERS.
int ExitCodeFor(PartitionLabel label);

// Worker threads for parallel commands: CLG_WORKERS if set to a positive
// integer, capped by the hardware concurrency; otherwise the latter.
int WorkerCount();

// key=value lines; '#' starts a comment, values may be quoted, '_' in keys
// is read as '-'. Throws Error(kFileMissing) or Error(kInvalidArgument).
std::map<std::string, std::string> ParseConfigFile(const std::string& path);

// args[0] is the program name. Returns the process exit status.
int RunMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace labelcheck::cli

#endif  // LABELCHECK_TOOLS_CLI_H_

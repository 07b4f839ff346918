// Copyright 2026 The psv Authors. All Rights Reserved.
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

#ifndef PSV_TOOLS_CLI_H_
#define PSV_TOOLS_CLI_H_

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace psv::cli {

// Process exit statuses. `verify` additionally uses 2 (impostor) and
// 3 (retry) for its decisions.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitImpostor = 2;
inline constexpr int kExitRetry = 3;

// Parses `args` (args[0] is the program name) and runs the subcommand.
int ParseAndDispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psv::cli

#endif  // PSV_TOOLS_CLI_H_

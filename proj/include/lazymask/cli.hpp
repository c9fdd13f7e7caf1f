// Copyright 2026 The lazymask Authors
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

#ifndef LAZYMASK_CLI_HPP_
#define LAZYMASK_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace lazymask {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
// oracle-check found a violated bound.
inline constexpr int kExitCheckFailed = 3;

// Runs one of: generate, solve, train, evaluate, oracle-check,
// parse-benchmark. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lazymask

#endif  // LAZYMASK_CLI_HPP_

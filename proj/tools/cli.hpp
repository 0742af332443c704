// Copyright 2026 The jrom Authors.
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

// The `jrom` command line: link, report, romize and verify.

#ifndef JROM_TOOLS_CLI_HPP_
#define JROM_TOOLS_CLI_HPP_

#include <iosfwd>

namespace jrom {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailures = 1;  // some class failed
inline constexpr int kExitConfig = 2;    // bad arguments or I/O

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace jrom

#endif  // JROM_TOOLS_CLI_HPP_

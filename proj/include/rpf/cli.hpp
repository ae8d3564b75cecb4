/*
   Copyright 2026 The rpf-lab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


// Command-line front end. Every subcommand writes one file with a fixed name
// into --out-dir and embeds its resolved configuration and seed in it.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rpf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

/// `args` holds the subcommand and its flags, without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace rpf::cli

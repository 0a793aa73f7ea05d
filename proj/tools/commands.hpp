// Copyright 2026 The psdrec Authors
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

#ifndef PSDREC_TOOLS_COMMANDS_HPP
#define PSDREC_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "psdrec/linalg.hpp"

namespace psdrec::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // parse, numerical or validation error
inline constexpr int kIoFailure = 2;  // unreadable input or unwritable output
inline constexpr int kUsage = 64;

/// Runs `psdrec <args...>` (args excludes the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

struct DemoInputs {
    CMatrix rho;
    CMatrix like;
    CMatrix dislike;
    double expect_like = 49.0 / 50.0;
    double expect_dislike = 1.0 / 50.0;
};

/// The two-dimensional state and two-outcome measurement of the worked
/// example.
DemoInputs demo_inputs();

/// Prints both outcome probabilities and checks them to 1e-12.
int cmd_demo(const DemoInputs &in, std::ostream &out, std::ostream &err);

}  // namespace psdrec::cli

#endif  // PSDREC_TOOLS_COMMANDS_HPP

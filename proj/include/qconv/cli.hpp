// Copyright 2026 The qconv Authors
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

#pragma once

#include <ostream>

namespace qconv {

/// Exit codes: 0 success, 1 protocol abort or verification mismatch, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitProtocol = 1;
inline constexpr int kExitInput = 2;

/// Entry point for the `qconv` tool: generate | ndd-verify | attack | converse.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qconv

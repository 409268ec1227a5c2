// SPDX-License-Identifier: Apache-2.0
//
// ucmvdr: unit circle rectified MVDR beamforming for uniform linear arrays
// Copyright (C) 2026 The ucmvdr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef UCMVDR_CLI_COMMANDS_HPP
#define UCMVDR_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ucmvdr::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2 };

struct CommandOptions {
  std::string config_path;
  std::string out_dir = "out";
  int workers = 0;  // 0: all available threads
  std::optional<std::uint64_t> seed;
  bool emit_zeros = false;
  bool linear_power = false;

  // rectify only.
  std::string weights_path;
  int sensors = 0;
  double look = 0.0;
  double spacing = 0.5;
};

// Each command validates everything, computes, and only then writes its
// files; the return value lists them (manifest.json last).
std::vector<std::string> cmd_ensemble(const CommandOptions& options);
std::vector<std::string> cmd_montecarlo(const CommandOptions& options);
std::vector<std::string> cmd_rectify(const CommandOptions& options);

// Full command line front end; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace ucmvdr::cli

#endif  // UCMVDR_CLI_COMMANDS_HPP

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


#ifndef UCMVDR_CLI_CONFIG_HPP
#define UCMVDR_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucmvdr/experiments.hpp"

namespace ucmvdr::cli {

// Config problem tied to a location in the source file. `field` is a JSON
// pointer ("/interferers/0/u"); `line` is 1-based, 0 when unknown.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string source, int line, std::string field,
              const std::string& message);

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class SweepParameter { kNumSnapshots, kInrDb };

struct Sweep {
  SweepParameter parameter = SweepParameter::kNumSnapshots;
  std::vector<double> values;
};

struct RunConfig {
  ExperimentConfig experiment;
  std::optional<Sweep> sweep;
  int beampattern_points = 1001;
  // INR of each interferer in dB, as written; the scenario stores linear.
  std::vector<double> inr_db;
};

// Parses and validates a JSON config. Throws ConfigError.
RunConfig parse_config(const std::string& text,
                       const std::string& source_name = "<config>");

RunConfig load_config(const std::string& path);

// Experiment for one sweep point.
ExperimentConfig sweep_point(const RunConfig& config, double value);

const char* to_string(SweepParameter p);

// Canonical JSON of the logical config: sorted keys, resolved values.
std::string canonical_json(const RunConfig& config);

// 64-bit FNV-1a of canonical_json, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace ucmvdr::cli

#endif  // UCMVDR_CLI_CONFIG_HPP

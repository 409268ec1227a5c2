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


#ifndef UCMVDR_CLI_CSV_OUTPUT_HPP
#define UCMVDR_CLI_CSV_OUTPUT_HPP

#include <string>
#include <vector>

namespace ucmvdr::cli {

inline constexpr int kCsvSchemaVersion = 1;

// Six significant digits, "%.6g".
std::string format_value(double x);

// Seventeen significant digits; exact round trip for doubles.
std::string format_exact(double x);

// Power in dB with six significant digits.
std::string format_db(double linear_power);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace ucmvdr::cli

#endif  // UCMVDR_CLI_CSV_OUTPUT_HPP

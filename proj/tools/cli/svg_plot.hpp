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


#ifndef UCMVDR_CLI_SVG_PLOT_HPP
#define UCMVDR_CLI_SVG_PLOT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ucmvdr::cli {

enum class SeriesStyle { kLine, kStep, kPoints, kRings, kBars };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  SeriesStyle style = SeriesStyle::kLine;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::optional<std::pair<double, double>> x_range;
  std::optional<std::pair<double, double>> y_range;
  // Same scale on both axes, with the unit circle drawn.
  bool unit_circle = false;
  // Horizontal reference lines (value, label).
  std::vector<std::pair<double, std::string>> h_lines;
};

// Non-finite points are dropped.
std::string render_plot(const PlotSpec& spec, const std::vector<Series>& series);

// Bars over a shared set of bins; one series per sample set.
std::string render_histogram(
    const PlotSpec& spec,
    const std::vector<std::pair<std::string, std::vector<double>>>& samples,
    int bins);

void write_text(const std::string& path, const std::string& text);

}  // namespace ucmvdr::cli

#endif  // UCMVDR_CLI_SVG_PLOT_HPP

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


#include "cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ucmvdr::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", std::abs(x) < 1e-12 ? 0.0 : x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push_back(t);
  }
  return ticks;
}

std::pair<double, double> padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(1.0, std::abs(lo) * 0.1);
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
      if (s.style == SeriesStyle::kBars) y_lo = std::min(y_lo, 0.0);
    }
  }
  for (const auto& [v, unused] : spec.h_lines) {
    y_lo = std::min(y_lo, v);
    y_hi = std::max(y_hi, v);
  }
  if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  if (spec.unit_circle) {
    const double r = std::max({1.1, std::abs(x_lo), std::abs(x_hi), std::abs(y_lo),
                               std::abs(y_hi)}) * 1.05;
    x_lo = y_lo = -r;
    x_hi = y_hi = r;
  } else {
    std::tie(x_lo, x_hi) = padded(x_lo, x_hi);
    std::tie(y_lo, y_hi) = padded(y_lo, y_hi);
  }
  if (spec.x_range) std::tie(x_lo, x_hi) = *spec.x_range;
  if (spec.y_range) std::tie(y_lo, y_hi) = *spec.y_range;

  double plot_w = kWidth - kLeft - kRight;
  double plot_h = kHeight - kTop - kBottom;
  if (spec.unit_circle) plot_w = plot_h = std::min(plot_w, plot_h);
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };
  auto inside = [&](double x, double y) {
    return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" "
    << "font-size=\"14\">" << escape(spec.title) << "</text>\n";

  // Grid and ticks.
  for (double t : nice_ticks(x_lo, x_hi)) {
    o << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop) << "\" x2=\""
      << num(px(t)) << "\" y2=\"" << num(kTop + plot_h)
      << "\" stroke=\"#e0e0e0\"/>\n";
    o << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + plot_h + 16)
      << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : nice_ticks(y_lo, y_hi)) {
    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(t)) << "\" x2=\""
      << num(kLeft + plot_w) << "\" y2=\"" << num(py(t))
      << "\" stroke=\"#e0e0e0\"/>\n";
    o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(t) + 4)
      << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
    << num(plot_w) << "\" height=\"" << num(plot_h)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 15)
    << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  o << "<text x=\"18\" y=\"" << num(kTop + plot_h / 2)
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << num(kTop + plot_h / 2)
    << ")\">" << escape(spec.y_label) << "</text>\n";

  if (spec.unit_circle) {
    o << "<circle cx=\"" << num(px(0)) << "\" cy=\"" << num(py(0)) << "\" r=\""
      << num(px(1) - px(0)) << "\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (const auto& [v, label] : spec.h_lines) {
    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(v)) << "\" x2=\""
      << num(kLeft + plot_w) << "\" y2=\"" << num(py(v))
      << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
    o << "<text x=\"" << num(kLeft + plot_w - 4) << "\" y=\"" << num(py(v) - 4)
      << "\" text-anchor=\"end\">" << escape(label) << "</text>\n";
  }

  o << "<clipPath id=\"area\"><rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop)
    << "\" width=\"" << num(plot_w) << "\" height=\"" << num(plot_h)
    << "\"/></clipPath>\n<g clip-path=\"url(#area)\">\n";
  const double bar_count = static_cast<double>(std::count_if(
      series.begin(), series.end(),
      [](const Series& s) { return s.style == SeriesStyle::kBars; }));
  int bar_index = 0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    switch (s.style) {
      case SeriesStyle::kLine:
      case SeriesStyle::kStep: {
        o << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
        bool have_prev = false;
        double prev_y = 0.0;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
          if (s.style == SeriesStyle::kStep && have_prev) {
            o << num(px(s.x[i])) << "," << num(py(prev_y)) << " ";
          }
          o << num(px(s.x[i])) << "," << num(py(s.y[i])) << " ";
          have_prev = true;
          prev_y = s.y[i];
        }
        o << "\"/>\n";
        break;
      }
      case SeriesStyle::kPoints:
      case SeriesStyle::kRings:
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
          if (!inside(s.x[i], s.y[i])) continue;
          o << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
            << "\" r=\"" << (s.style == SeriesStyle::kRings ? "4" : "1.8") << "\" "
            << (s.style == SeriesStyle::kRings
                    ? std::string("fill=\"none\" stroke=\"") + color + "\""
                    : std::string("fill=\"") + color + "\" fill-opacity=\"0.5\"")
            << "/>\n";
        }
        break;
      case SeriesStyle::kBars: {
        const double width = s.x.size() > 1 ? (s.x[1] - s.x[0]) : 1.0;
        const double sub = width / std::max(1.0, bar_count);
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          const double left = s.x[i] - width / 2 + sub * bar_index;
          o << "<rect x=\"" << num(px(left)) << "\" y=\"" << num(py(s.y[i]))
            << "\" width=\"" << num(px(left + sub) - px(left)) << "\" height=\""
            << num(py(0) - py(s.y[i])) << "\" fill=\"" << color
            << "\" fill-opacity=\"0.7\"/>\n";
        }
        ++bar_index;
        break;
      }
    }
  }
  o << "</g>\n";

  // Legend.
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(k);
    const double x = kLeft + plot_w + 14;
    o << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 8) << "\" width=\"12\" "
      << "height=\"10\" fill=\"" << kPalette[k % std::size(kPalette)] << "\"/>\n";
    o << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y + 1) << "\">"
      << escape(series[k].label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_histogram(
    const PlotSpec& spec,
    const std::vector<std::pair<std::string, std::vector<double>>>& samples,
    int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs >= 1 bin");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& [unused, v] : samples) {
    for (double x : v) {
      if (!std::isfinite(x)) continue;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (!std::isfinite(lo)) return render_plot(spec, {});
  if (!(hi > lo)) hi = lo + 1.0;
  const double width = (hi - lo) / bins;
  std::vector<Series> series;
  for (const auto& [label, v] : samples) {
    Series s{label, {}, std::vector<double>(bins, 0.0), SeriesStyle::kBars};
    for (int b = 0; b < bins; ++b) s.x.push_back(lo + width * (b + 0.5));
    for (double x : v) {
      if (!std::isfinite(x)) continue;
      const int b = std::min(bins - 1, static_cast<int>((x - lo) / width));
      s.y[b] += 1.0;
    }
    series.push_back(std::move(s));
  }
  return render_plot(spec, series);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace ucmvdr::cli

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


#include "cli/commands.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "cli/config.hpp"
#include "cli/csv_output.hpp"
#include "cli/svg_plot.hpp"
#include "json.hpp"
#include "ucmvdr/arraypoly.hpp"
#include "ucmvdr/experiments.hpp"
#include "ucmvdr/uc_rectify.hpp"

namespace ucmvdr::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Files are staged in memory and written together, so a failure before
// commit leaves the output directory untouched.
class OutputSet {
 public:
  OutputSet() : started_(utc_now()) {}

  void add(const std::string& name, std::string content) {
    files_.emplace_back(name, std::move(content));
  }

  std::vector<std::string> commit(const std::string& dir, json manifest) {
    fs::create_directories(dir);
    std::vector<std::string> names;
    for (const auto& [name, content] : files_) {
      write_text((fs::path(dir) / name).string(), content);
      names.push_back(name);
    }
    names.push_back("manifest.json");
    manifest["tool_version"] = kToolVersion;
    manifest["csv_schema_version"] = kCsvSchemaVersion;
    manifest["started_at"] = started_;
    manifest["finished_at"] = utc_now();
    manifest["files"] = names;
    write_text((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    return names;
  }

 private:
  std::string started_;
  std::vector<std::pair<std::string, std::string>> files_;
};

RunConfig load_with_overrides(const CommandOptions& options) {
  RunConfig rc = load_config(options.config_path);
  if (options.seed) rc.experiment.base_seed = *options.seed;
  if (options.emit_zeros) {
    rc.experiment.capture_zeros = true;
    try {
      rc.experiment.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(options.config_path, 0, "", std::string("--emit-zeros: ") + e.what());
    }
  }
  return rc;
}

json run_manifest(const RunConfig& rc, const std::string& command) {
  json m;
  m["command"] = command;
  m["config_hash"] = config_hash(rc);
  m["base_seed"] = rc.experiment.base_seed;
  return m;
}

ExecutionOptions execution(const CommandOptions& options) {
  return {options.workers > 0 ? options.workers : omp_get_max_threads()};
}

std::string zeros_plot(const std::string& title, const std::vector<Complex>& zeros,
                       const std::vector<double>& interferers) {
  Series z{"zeros", {}, {}, SeriesStyle::kRings};
  for (const Complex& c : zeros) {
    z.x.push_back(c.real());
    z.y.push_back(c.imag());
  }
  Series i{"interferers", {}, {}, SeriesStyle::kPoints};
  for (double u : interferers) {
    i.x.push_back(std::cos(kPi * u));
    i.y.push_back(std::sin(kPi * u));
  }
  PlotSpec spec{title, "Re z", "Im z", {}, {}, true, {}};
  return render_plot(spec, {z, i});
}

void add_beampattern_csv(OutputSet& out, const WeightVector& w, int points,
                         bool linear) {
  std::vector<std::string> header{"u", "re", "im", "power_dB"};
  if (linear) header.push_back("power");
  CsvTable table(header);
  for (double u : direction_grid(points)) {
    const Complex b = w.response(u);
    std::vector<std::string> row{format_exact(u), format_exact(b.real()),
                                 format_exact(b.imag()), format_db(std::norm(b))};
    if (linear) row.push_back(format_value(std::norm(b)));
    table.add_row(std::move(row));
  }
  out.add("beampattern.csv", table.str());
}

Series beampattern_series(const std::string& label, const WeightVector& w, int points) {
  Series s{label, {}, {}, SeriesStyle::kLine};
  for (double u : direction_grid(points)) {
    s.x.push_back(u);
    s.y.push_back(10.0 * std::log10(std::norm(w.response(u))));
  }
  return s;
}

std::vector<double> interferer_directions(const UlaScenario& s) {
  std::vector<double> u;
  for (const SourceSpec& i : s.interferers()) u.push_back(i.direction_cosine);
  return u;
}

// Summary rows for one experiment; `prefix` cells lead each row.
void add_summary_rows(CsvTable& table, const std::vector<std::string>& prefix,
                      const ExperimentConfig& config, const ExperimentResult& result,
                      bool linear) {
  auto row_for = [&](std::vector<std::string> row, const std::string& label,
                     double delta, std::size_t trials, double mean_pi, double var_pi,
                     double median_pi, double mean_pn, double mean_wng,
                     double var_wng, double median_wng) {
    row.insert(row.end(),
               {label, std::isnan(delta) ? "" : format_db(delta), std::to_string(trials),
                std::to_string(result.failed_trials), format_db(mean_pi), format_db(var_pi),
                format_db(median_pi), format_db(mean_pn), format_value(mean_wng),
                format_value(var_wng), format_value(median_wng)});
    if (linear) {
      row.insert(row.end(), {format_value(mean_pi), format_value(var_pi),
                             format_value(median_pi), format_value(mean_pn)});
    }
    table.add_row(std::move(row));
  };
  for (const BeamformerSummary& s : summarize(config, result)) {
    row_for(prefix, s.label, s.delta, s.trials, s.mean_interferer_power,
            s.var_interferer_power, s.median_interferer_power, s.mean_noise_power,
            s.mean_wng, s.var_wng, s.median_wng);
  }
  if (result.ensemble) {
    const MetricsRecord& e = *result.ensemble;
    row_for(prefix, "ensemble_mvdr", std::nan(""), 0, e.interferer_power, 0.0,
            e.interferer_power, e.noise_power, e.wng, 0.0, e.wng);
  }
}

std::vector<std::string> summary_header(std::vector<std::string> prefix, bool linear) {
  for (const char* c : {"beamformer", "delta_dB", "trials", "failed_trials", "mean_P_I_dB",
                        "var_P_I_dB", "median_P_I_dB", "mean_P_N_dB", "mean_WNG",
                        "var_WNG", "median_WNG"}) {
    prefix.push_back(c);
  }
  if (linear) {
    for (const char* c : {"mean_P_I", "var_P_I", "median_P_I", "mean_P_N"}) prefix.push_back(c);
  }
  return prefix;
}

void single_run_outputs(OutputSet& out, const RunConfig& rc, const ExperimentResult& result,
                        bool linear) {
  const ExperimentConfig& config = rc.experiment;
  const std::size_t count = config.beamformers.size();
  std::vector<std::string> labels;
  for (const BeamformerSpec& b : config.beamformers) labels.push_back(b.label());

  std::vector<std::string> header{"trial", "beamformer", "P_I_dB", "P_N_dB",
                                  "WNG",   "ND_dB",      "failed"};
  if (linear) header.insert(header.end(), {"P_I", "P_N", "ND"});
  CsvTable trials(header);
  for (const TrialRecord& t : result.trials) {
    for (std::size_t k = 0; k < count; ++k) {
      std::vector<std::string> row{std::to_string(t.trial_index), labels[k]};
      if (t.failed) {
        row.insert(row.end(), {"", "", "", "", "1"});
        if (linear) row.insert(row.end(), {"", "", ""});
      } else {
        const MetricsRecord& m = t.metrics[k];
        row.insert(row.end(), {format_db(m.interferer_power), format_db(m.noise_power),
                               format_value(m.wng), format_db(m.worst_notch_depth()), "0"});
        if (linear) {
          row.insert(row.end(), {format_value(m.interferer_power),
                                 format_value(m.noise_power),
                                 format_value(m.worst_notch_depth())});
        }
      }
      trials.add_row(std::move(row));
    }
  }
  out.add("trials.csv", trials.str());

  CsvTable summary(summary_header({}, linear));
  add_summary_rows(summary, {}, config, result, linear);
  out.add("summary.csv", summary.str());

  const std::vector<BeamformerSummary> summaries = summarize(config, result);
  std::vector<Series> ecdf_series;
  for (const BeamformerSummary& s : summaries) {
    CsvTable e({"P_I_dB", "probability"});
    const EcdfCurve& c = s.interferer_power_db;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      e.add_row({format_value(c.values[i]), format_value(c.probabilities[i])});
    }
    out.add("ecdf_" + s.label + ".csv", e.str());
    ecdf_series.push_back({s.label, c.values, c.probabilities, SeriesStyle::kStep});
  }
  out.add("ecdf.svg",
          render_plot({"ECDF of interferer output power", "P_I (dB)", "F(P_I)",
                       {}, std::make_pair(0.0, 1.0), false, {}},
                      ecdf_series));

  std::vector<std::pair<std::string, std::vector<double>>> wng;
  std::vector<Series> scatter;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> w, pi;
    for (const TrialRecord& t : result.trials) {
      if (t.failed) continue;
      w.push_back(t.metrics[k].wng);
      pi.push_back(10.0 * std::log10(t.metrics[k].interferer_power));
    }
    scatter.push_back({labels[k], w, pi, SeriesStyle::kPoints});
    wng.emplace_back(labels[k], std::move(w));
  }
  PlotSpec hist{"White noise gain", "WNG", "trials", {}, {}, false,
                {}};
  out.add("wng_histogram.svg", render_histogram(hist, wng, 40));
  out.add("wng_scatter.svg",
          render_plot({"Interferer power vs white noise gain", "WNG", "P_I (dB)", {}, {},
                       false, {}},
                      scatter));

  if (config.capture_zeros) {
    CsvTable zeros({"trial", "beamformer", "index", "re", "im", "modulus"});
    std::map<std::string, std::vector<Complex>> cloud;
    for (const TrialRecord& t : result.trials) {
      if (t.failed) continue;
      for (std::size_t k = 0; k < count; ++k) {
        const auto& z = t.zeros[k].zeros;
        for (std::size_t i = 0; i < z.size(); ++i) {
          zeros.add_row({std::to_string(t.trial_index), labels[k], std::to_string(i),
                         format_exact(z[i].real()), format_exact(z[i].imag()),
                         format_value(std::abs(z[i]))});
          cloud[labels[k]].push_back(z[i]);
        }
      }
    }
    out.add("zeros.csv", zeros.str());
    std::vector<Series> series;
    for (const auto& [label, z] : cloud) {
      Series s{label, {}, {}, SeriesStyle::kPoints};
      for (const Complex& c : z) {
        s.x.push_back(c.real());
        s.y.push_back(c.imag());
      }
      series.push_back(std::move(s));
    }
    out.add("zeros.svg", render_plot({"Array polynomial zeros", "Re z", "Im z", {}, {},
                                      true, {}},
                                     series));
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open weights file");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

ComplexVector parse_weights(const std::string& path) {
  std::vector<Complex> w;
  const std::vector<std::string> lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = path + ":" + std::to_string(i + 1) + ": ";
    const char* p = line.c_str();
    char* end = nullptr;
    const double re = std::strtod(p, &end);
    if (end == p) throw std::invalid_argument(where + "expected \"re im\"");
    p = end;
    const double im = std::strtod(p, &end);
    if (end == p) throw std::invalid_argument(where + "expected \"re im\"");
    if (std::string(end).find_first_not_of(" \t\r") != std::string::npos) {
      throw std::invalid_argument(where + "trailing characters");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw std::invalid_argument(where + "non-finite weight");
    }
    w.emplace_back(re, im);
  }
  ComplexVector out(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) out(static_cast<Eigen::Index>(i)) = w[i];
  return out;
}

}  // namespace

std::vector<std::string> cmd_ensemble(const CommandOptions& options) {
  const RunConfig rc = load_with_overrides(options);
  const UlaScenario& s = rc.experiment.scenario;
  const WeightVector w =
      mvdr_weights(ensemble_covariance(s), s.geometry(), s.look_direction());

  OutputSet out;
  CsvTable weights({"index", "re", "im"});
  for (int n = 0; n < w.size(); ++n) {
    weights.add_row({std::to_string(n), format_exact(w.weights()(n).real()),
                     format_exact(w.weights()(n).imag())});
  }
  out.add("weights.csv", weights.str());

  if (s.geometry().is_half_wavelength()) {
    const ZeroSet zs = find_zeros(weights_to_polynomial(w));
    CsvTable zeros({"index", "re", "im", "modulus", "modulus_error", "u"});
    for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
      const Complex z = zs.zeros[i];
      zeros.add_row({std::to_string(i), format_exact(z.real()), format_exact(z.imag()),
                     format_exact(std::abs(z)), format_value(std::abs(std::abs(z) - 1.0)),
                     format_value(angle_to_direction(std::arg(z)))});
    }
    out.add("zeros.csv", zeros.str());
    out.add("zeros.svg", zeros_plot("Ensemble MVDR zeros", zs.zeros, interferer_directions(s)));
  }
  add_beampattern_csv(out, w, rc.beampattern_points, options.linear_power);
  PlotSpec spec{"Ensemble MVDR beampattern", "u", "|B(u)|^2 (dB)", std::make_pair(-1.0, 1.0),
                {}, false, {}};
  std::vector<Series> series{beampattern_series("mvdr", w, rc.beampattern_points)};
  for (Series& p : series) {
    for (double& y : p.y) y = std::max(y, -100.0);
  }
  out.add("beampattern.svg", render_plot(spec, series));
  return out.commit(options.out_dir, run_manifest(rc, "ensemble"));
}

std::vector<std::string> cmd_montecarlo(const CommandOptions& options) {
  const RunConfig rc = load_with_overrides(options);
  const ExecutionOptions exec = execution(options);
  OutputSet out;
  if (!rc.sweep) {
    const ExperimentResult result = run_experiment(rc.experiment, exec);
    single_run_outputs(out, rc, result, options.linear_power);
  } else {
    const std::string param = to_string(rc.sweep->parameter);
    CsvTable summary(summary_header({param}, options.linear_power));
    std::map<std::string, Series> mean, var;
    std::vector<std::string> order;
    for (double value : rc.sweep->values) {
      const ExperimentConfig config = sweep_point(rc, value);
      const ExperimentResult result = run_experiment(config, exec);
      add_summary_rows(summary, {format_value(value)}, config, result, options.linear_power);
      for (const BeamformerSummary& s : summarize(config, result)) {
        if (!mean.count(s.label)) {
          order.push_back(s.label);
          mean[s.label] = {s.label, {}, {}, SeriesStyle::kLine};
          var[s.label] = {s.label, {}, {}, SeriesStyle::kLine};
        }
        mean[s.label].x.push_back(value);
        mean[s.label].y.push_back(10.0 * std::log10(s.mean_interferer_power));
        var[s.label].x.push_back(value);
        var[s.label].y.push_back(10.0 * std::log10(s.var_interferer_power));
      }
    }
    out.add("summary.csv", summary.str());
    std::vector<Series> m, v;
    for (const std::string& label : order) {
      m.push_back(mean[label]);
      v.push_back(var[label]);
    }
    out.add("sweep_mean.svg", render_plot({"Mean interferer power", param,
                                           "mean P_I (dB)", {}, {}, false, {}},
                                          m));
    out.add("sweep_variance.svg", render_plot({"Variance of interferer power", param,
                                               "var P_I (dB)", {}, {}, false, {}},
                                              v));
  }
  return out.commit(options.out_dir, run_manifest(rc, "montecarlo"));
}

std::vector<std::string> cmd_rectify(const CommandOptions& options) {
  if (options.weights_path.empty()) throw std::invalid_argument("--weights is required");
  const UlaGeometry geometry(options.sensors, options.spacing);
  const ComplexVector raw = parse_weights(options.weights_path);
  if (raw.size() != options.sensors) {
    throw std::invalid_argument(options.weights_path + ": " + std::to_string(raw.size()) +
                                " weights, expected " + std::to_string(options.sensors));
  }
  const WeightVector w(raw, geometry, options.look);
  const UcResult uc = uc_mvdr_weights(w);

  OutputSet out;
  std::ostringstream text;
  for (int n = 0; n < uc.weights.size(); ++n) {
    text << format_exact(uc.weights.weights()(n).real()) << ' '
         << format_exact(uc.weights.weights()(n).imag()) << '\n';
  }
  out.add("uc_weights.txt", text.str());

  const ProjectionReport& r = uc.report;
  CsvTable proj({"index", "original_re", "original_im", "original_modulus", "projected_re",
                 "projected_im", "mainlobe_moved"});
  for (std::size_t i = 0; i < r.original_zeros.zeros.size(); ++i) {
    const Complex a = r.original_zeros.zeros[i];
    const Complex b = r.projected_zeros.zeros[i];
    const bool moved =
        std::find(r.mainlobe_moved.begin(), r.mainlobe_moved.end(), i) != r.mainlobe_moved.end();
    proj.add_row({std::to_string(i), format_exact(a.real()), format_exact(a.imag()),
                  format_value(std::abs(a)), format_exact(b.real()), format_exact(b.imag()),
                  moved ? "1" : "0"});
  }
  out.add("projection.csv", proj.str());

  const int points = 1001;
  CsvTable pattern({"u", "before_dB", "after_dB"});
  for (double u : direction_grid(points)) {
    pattern.add_row({format_exact(u), format_db(std::norm(w.response(u))),
                     format_db(std::norm(uc.weights.response(u)))});
  }
  out.add("beampattern.csv", pattern.str());
  std::vector<Series> series{beampattern_series("input", w, points),
                             beampattern_series("uc", uc.weights, points)};
  for (Series& p : series) {
    for (double& y : p.y) y = std::max(y, -100.0);
  }
  out.add("beampattern.svg", render_plot({"Beampattern before and after rectification", "u",
                                          "|B(u)|^2 (dB)", std::make_pair(-1.0, 1.0), {},
                                          false, {}},
                                         series));
  Series before{"input zeros", {}, {}, SeriesStyle::kPoints};
  Series after{"projected zeros", {}, {}, SeriesStyle::kRings};
  for (std::size_t i = 0; i < r.original_zeros.zeros.size(); ++i) {
    before.x.push_back(r.original_zeros.zeros[i].real());
    before.y.push_back(r.original_zeros.zeros[i].imag());
    after.x.push_back(r.projected_zeros.zeros[i].real());
    after.y.push_back(r.projected_zeros.zeros[i].imag());
  }
  out.add("zeros.svg",
          render_plot({"Zero projection", "Re z", "Im z", {}, {}, true, {}}, {before, after}));

  json manifest;
  manifest["command"] = "rectify";
  manifest["weights_file"] = options.weights_path;
  manifest["sensors"] = options.sensors;
  manifest["look"] = options.look;
  manifest["spacing"] = options.spacing;
  manifest["mainlobe_moved"] = r.mainlobe_moved;
  manifest["collapsed_to_multiple_root"] = r.collapsed_to_multiple_root;
  return out.commit(options.out_dir, manifest);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"UC MVDR beamforming experiments for uniform linear arrays", "ucmvdr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  CommandOptions o;
  auto common = [&](CLI::App* sub, bool config) {
    if (config) sub->add_option("--config", o.config_path, "JSON config file")->required();
    sub->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    sub->add_flag("--linear-power", o.linear_power, "Also write linear power columns");
  };
  CLI::App* ensemble = app.add_subcommand("ensemble", "Ensemble MVDR weights, zeros, beampattern");
  common(ensemble, true);
  CLI::App* mc = app.add_subcommand("montecarlo", "Monte Carlo comparison of beamformers");
  common(mc, true);
  mc->add_option("--workers", o.workers, "Worker threads (0: all)")->check(CLI::NonNegativeNumber);
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = mc->add_option("--seed", seed, "Override the config base seed");
  mc->add_flag("--emit-zeros", o.emit_zeros, "Write the per-trial zero cloud");
  CLI::App* rectify = app.add_subcommand("rectify", "Unit circle rectification of given weights");
  common(rectify, false);
  rectify->add_option("--weights", o.weights_path, "Weights file, one \"re im\" per line")
      ->required();
  rectify->add_option("--sensors", o.sensors, "Number of sensors N")->required();
  rectify->add_option("--look", o.look, "Look direction cosine")->capture_default_str();
  rectify->add_option("--spacing", o.spacing, "Sensor spacing over wavelength")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  if (seed_opt->count() > 0) o.seed = seed;

  try {
    std::vector<std::string> files;
    if (ensemble->parsed()) {
      files = cmd_ensemble(o);
    } else if (mc->parsed()) {
      files = cmd_montecarlo(o);
    } else {
      files = cmd_rectify(o);
    }
    for (const std::string& f : files) out << (fs::path(o.out_dir) / f).string() << '\n';
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "aborted: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace ucmvdr::cli

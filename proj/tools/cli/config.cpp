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


#include "cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ucmvdr::cli {

using nlohmann::json;

ConfigError::ConfigError(std::string source, int line, std::string field,
                         const std::string& message)
    : std::invalid_argument([&] {
        std::ostringstream s;
        s << source;
        if (line > 0) s << ":" << line;
        s << ": ";
        if (!field.empty()) s << "field " << field << ": ";
        s << message;
        return s.str();
      }()),
      field_(std::move(field)),
      line_(line) {}

namespace {

// Maps JSON pointers to the line where their value starts. Runs on text that
// nlohmann has already accepted, so it skips error handling.
class LineIndex {
 public:
  explicit LineIndex(const std::string& text) : text_(text) {
    value("");
  }

  int line_of(const std::string& pointer) const {
    auto it = lines_.find(pointer);
    return it == lines_.end() ? 0 : it->second;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') out += text_[pos_++];
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(const std::string& pointer) {
    skip_ws();
    lines_.emplace(pointer, line_);
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        const std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        value(pointer + "/" + key);
        skip_ws();
        if (text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      for (int index = 0; pos_ < text_.size() && text_[pos_] != ']'; ++index) {
        value(pointer + "/" + std::to_string(index));
        skip_ws();
        if (text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
             text_[pos_] != ']' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

class Reader {
 public:
  Reader(const std::string& source, const LineIndex& index)
      : source_(source), index_(index) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw ConfigError(source_, index_.line_of(pointer), pointer, message);
  }

  void check_keys(const json& object, const std::string& pointer,
                  const std::set<std::string>& allowed) const {
    if (!object.is_object()) fail(pointer, "expected an object");
    for (const auto& [key, unused] : object.items()) {
      if (!allowed.count(key)) fail(pointer + "/" + key, "unknown field");
    }
  }

  double number(const json& v, const std::string& pointer) const {
    if (!v.is_number()) fail(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(pointer, "must be finite");
    return x;
  }

  int integer(const json& v, const std::string& pointer) const {
    if (!v.is_number_integer()) fail(pointer, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < 0 || x > 100000000) fail(pointer, "out of range");
    return static_cast<int>(x);
  }

  // A number, or a fraction written as "a/b".
  double direction(const json& v, const std::string& pointer) const {
    if (v.is_number()) return number(v, pointer);
    if (!v.is_string()) fail(pointer, "expected a number or a fraction \"a/b\"");
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    double a = 0.0, b = 0.0;
    const bool ok =
        slash != std::string::npos &&
        std::from_chars(s.data(), s.data() + slash, a).ec == std::errc() &&
        std::from_chars(s.data() + slash + 1, s.data() + s.size(), b).ec == std::errc();
    if (!ok || b == 0.0) fail(pointer, "cannot parse fraction '" + s + "'");
    return a / b;
  }

  template <typename Fn>
  auto guarded(const std::string& pointer, Fn&& fn) const -> decltype(fn()) {
    try {
      return fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      fail(pointer, e.what());
    }
  }

 private:
  const std::string& source_;
  const LineIndex& index_;
};

BeamformerSpec parse_beamformer(const Reader& r, const json& v,
                                const std::string& pointer) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    static const std::map<std::string, BeamformerKind> kinds = {
        {"cbf", BeamformerKind::kCbf},
        {"smi", BeamformerKind::kSmi},
        {"uc", BeamformerKind::kUc},
        {"dl_matched", BeamformerKind::kDlMatched},
        {"dl_oracle", BeamformerKind::kDlOracle},
    };
    auto it = kinds.find(name);
    if (it == kinds.end()) {
      r.fail(pointer, "unknown beamformer '" + name +
                          "' (cbf, smi, uc, dl_matched, dl_oracle, "
                          "{\"dl_fixed_db\": x})");
    }
    return {it->second, 0.0};
  }
  r.check_keys(v, pointer, {"dl_fixed_db"});
  if (!v.contains("dl_fixed_db")) r.fail(pointer, "missing dl_fixed_db");
  const double db = r.number(v["dl_fixed_db"], pointer + "/dl_fixed_db");
  return BeamformerSpec::fixed(db_to_linear(db));
}

ExperimentConfig with_inr_db(const ExperimentConfig& base, double inr_db) {
  ExperimentConfig c = base;
  c.scenario = base.scenario.with_interferer_power(
      base.scenario.noise_power() * db_to_linear(inr_db));
  return c;
}

}  // namespace

const char* to_string(SweepParameter p) {
  return p == SweepParameter::kNumSnapshots ? "snapshots" : "inr_db";
}

RunConfig parse_config(const std::string& text, const std::string& source_name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      line += text[i] == '\n' ? 1 : 0;
    }
    throw ConfigError(source_name, line, "", std::string("JSON syntax: ") + e.what());
  }
  const LineIndex index(text);
  const Reader r(source_name, index);
  r.check_keys(root, "",
               {"array", "look", "noise_power", "interferers", "snapshots",
                "trials", "seed", "beamformers", "capture_zeros",
                "oracle_grid", "sweep", "beampattern_points"});

  if (!root.contains("array")) r.fail("/array", "missing required field");
  const json& array = root["array"];
  r.check_keys(array, "/array", {"sensors", "spacing"});
  if (!array.contains("sensors")) r.fail("/array/sensors", "missing required field");
  const int n = r.integer(array["sensors"], "/array/sensors");
  const double spacing =
      array.contains("spacing") ? r.number(array["spacing"], "/array/spacing") : 0.5;
  const UlaGeometry geometry =
      r.guarded("/array", [&] { return UlaGeometry(n, spacing); });

  const double look = root.contains("look") ? r.direction(root["look"], "/look") : 0.0;
  const double noise =
      root.contains("noise_power") ? r.number(root["noise_power"], "/noise_power") : 1.0;

  std::vector<double> inr_db;
  std::vector<SourceSpec> interferers;
  if (root.contains("interferers")) {
    const json& list = root["interferers"];
    if (!list.is_array()) r.fail("/interferers", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = "/interferers/" + std::to_string(i);
      r.check_keys(list[i], p, {"u", "inr_db"});
      if (!list[i].contains("u")) r.fail(p + "/u", "missing required field");
      if (!list[i].contains("inr_db")) r.fail(p + "/inr_db", "missing required field");
      const double u = r.direction(list[i]["u"], p + "/u");
      const double inr = r.number(list[i]["inr_db"], p + "/inr_db");
      interferers.push_back(r.guarded(p, [&] {
        return SourceSpec(u, noise * db_to_linear(inr));
      }));
      inr_db.push_back(inr);
    }
  }
  if (!(noise > 0.0)) r.fail("/noise_power", "must be positive");
  const UlaScenario scenario = r.guarded("", [&] {
    return UlaScenario(geometry, look, interferers, noise);
  });

  std::vector<BeamformerSpec> beamformers;
  if (root.contains("beamformers")) {
    const json& list = root["beamformers"];
    if (!list.is_array()) r.fail("/beamformers", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      beamformers.push_back(
          parse_beamformer(r, list[i], "/beamformers/" + std::to_string(i)));
    }
  } else {
    beamformers = {{BeamformerKind::kCbf, 0.0},
                   {BeamformerKind::kSmi, 0.0},
                   {BeamformerKind::kUc, 0.0},
                   {BeamformerKind::kDlMatched, 0.0}};
  }

  const int snapshots = root.contains("snapshots")
                            ? r.integer(root["snapshots"], "/snapshots")
                            : 2 * n;
  const int trials =
      root.contains("trials") ? r.integer(root["trials"], "/trials") : 3000;
  std::uint64_t seed = 0;
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) r.fail("/seed", "expected a non-negative integer");
    seed = root["seed"].get<std::uint64_t>();
  }
  bool capture = false;
  if (root.contains("capture_zeros")) {
    if (!root["capture_zeros"].is_boolean()) r.fail("/capture_zeros", "expected true or false");
    capture = root["capture_zeros"].get<bool>();
  }
  std::vector<double> oracle_grid;
  if (root.contains("oracle_grid")) {
    const json& g = root["oracle_grid"];
    r.check_keys(g, "/oracle_grid", {"min_db", "max_db", "points"});
    for (const char* key : {"min_db", "max_db", "points"}) {
      if (!g.contains(key)) r.fail(std::string("/oracle_grid/") + key, "missing required field");
    }
    const double lo = r.number(g["min_db"], "/oracle_grid/min_db");
    const double hi = r.number(g["max_db"], "/oracle_grid/max_db");
    const int points = r.integer(g["points"], "/oracle_grid/points");
    oracle_grid = r.guarded("/oracle_grid", [&] { return log_dl_grid(lo, hi, points); });
  }
  int beampattern_points = 1001;
  if (root.contains("beampattern_points")) {
    beampattern_points = r.integer(root["beampattern_points"], "/beampattern_points");
    if (beampattern_points < 2) r.fail("/beampattern_points", "must be >= 2");
  }

  RunConfig out{ExperimentConfig{scenario, snapshots, trials, beamformers, seed,
                                 capture, oracle_grid},
                std::nullopt, beampattern_points, inr_db};
  r.guarded("", [&] {
    out.experiment.validate();
    return 0;
  });

  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    r.check_keys(s, "/sweep", {"parameter", "values"});
    if (!s.contains("parameter") || !s["parameter"].is_string()) {
      r.fail("/sweep/parameter", "expected \"snapshots\" or \"inr_db\"");
    }
    Sweep sweep;
    const std::string param = s["parameter"].get<std::string>();
    if (param == "snapshots") {
      sweep.parameter = SweepParameter::kNumSnapshots;
    } else if (param == "inr_db") {
      sweep.parameter = SweepParameter::kInrDb;
      if (interferers.empty()) r.fail("/sweep/parameter", "inr_db sweep needs interferers");
    } else {
      r.fail("/sweep/parameter", "expected \"snapshots\" or \"inr_db\"");
    }
    if (!s.contains("values") || !s["values"].is_array() || s["values"].empty()) {
      r.fail("/sweep/values", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < s["values"].size(); ++i) {
      const std::string p = "/sweep/values/" + std::to_string(i);
      const double v = sweep.parameter == SweepParameter::kNumSnapshots
                           ? r.integer(s["values"][i], p)
                           : r.number(s["values"][i], p);
      sweep.values.push_back(v);
    }
    out.sweep = sweep;
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
      r.guarded("/sweep/values/" + std::to_string(i), [&] {
        sweep_point(out, sweep.values[i]).validate();
        return 0;
      });
    }
  }
  return out;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

ExperimentConfig sweep_point(const RunConfig& config, double value) {
  if (!config.sweep) return config.experiment;
  if (config.sweep->parameter == SweepParameter::kNumSnapshots) {
    ExperimentConfig c = config.experiment;
    c.num_snapshots = static_cast<int>(value);
    return c;
  }
  return with_inr_db(config.experiment, value);
}

std::string canonical_json(const RunConfig& config) {
  const ExperimentConfig& e = config.experiment;
  const UlaScenario& s = e.scenario;
  json j;
  j["array"] = {{"sensors", s.num_sensors()},
                {"spacing", s.geometry().spacing_over_wavelength()}};
  j["look"] = s.look_direction();
  j["noise_power"] = s.noise_power();
  json interferers = json::array();
  for (std::size_t i = 0; i < s.interferers().size(); ++i) {
    interferers.push_back({{"u", s.interferers()[i].direction_cosine},
                           {"power", s.interferers()[i].power}});
  }
  j["interferers"] = interferers;
  j["snapshots"] = e.num_snapshots;
  j["trials"] = e.num_trials;
  j["seed"] = e.base_seed;
  json bfs = json::array();
  for (const BeamformerSpec& b : e.beamformers) bfs.push_back(b.label());
  j["beamformers"] = bfs;
  j["capture_zeros"] = e.capture_zeros;
  j["oracle_grid"] = e.oracle_grid.empty() ? default_oracle_grid() : e.oracle_grid;
  j["beampattern_points"] = config.beampattern_points;
  if (config.sweep) {
    j["sweep"] = {{"parameter", to_string(config.sweep->parameter)},
                  {"values", config.sweep->values}};
  }
  return j.dump();
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ucmvdr::cli

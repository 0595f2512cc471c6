// Copyright 2026 The sqhex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sqhex/errors.h"

namespace sqhex::cli {

namespace {

using nlohmann::json;

std::vector<std::pair<double, double>> read_pairs(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be a list");
  std::vector<std::pair<double, double>> out;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 2) {
      throw ValidationError(std::string(what) + " entries must be [a, b]");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

struct LatticeSection {
  LatticeSpec spec;
  std::optional<BoundaryMeasureSpec> derived;
};

LatticeSection read_lattice(const json& j) {
  LatticeSection out;
  LatticeSpec& spec = out.spec;
  if (!j.contains("pattern")) throw ValidationError("lattice.pattern is required");
  spec.pattern = j.at("pattern").get<std::vector<int>>();
  if (j.contains("boundary")) {
    spec.boundary = j.at("boundary").get<std::vector<int>>();
    spec.levels = static_cast<int>(spec.boundary.size());
    if (j.contains("levels") && j.at("levels").get<int>() != spec.levels) {
      throw ValidationError("lattice.levels disagrees with the boundary length");
    }
  } else {
    if (!j.contains("levels")) {
      throw ValidationError("lattice needs a boundary or levels with segments/staircase_step");
    }
    spec.levels = j.at("levels").get<int>();
    if (j.contains("segments")) {
      const auto segments = read_pairs(j.at("segments"), "lattice.segments");
      spec.boundary = boundary_from_segments(spec.levels, segments);
      out.derived = BoundaryMeasureSpec::from_intervals(segments);
    } else if (j.contains("staircase_step")) {
      const int step = j.at("staircase_step").get<int>();
      spec.boundary = boundary_staircase(spec.levels, step);
      out.derived = BoundaryMeasureSpec::staircase(step);
    } else {
      throw ValidationError("lattice needs a boundary, segments or staircase_step");
    }
  }
  const int period = spec.period();
  if (j.contains("upper_weights")) {
    spec.weights.ne_upper = j.at("upper_weights").get<std::vector<double>>();
  } else {
    spec.weights.ne_upper.assign(period, 1.0);
  }
  for (int i = 1; i <= period; ++i) {
    if (spec.pattern[i - 1] == 0) spec.weights.ne_lower[i] = 1.0;
  }
  if (j.contains("lower_weights")) {
    for (const auto& [key, value] : j.at("lower_weights").items()) {
      int level = 0;
      try {
        level = std::stoi(key);
      } catch (const std::exception&) {
        throw ValidationError("lower_weights keys must be level numbers");
      }
      if (level < 1 || level > period || spec.pattern[level - 1] != 0) {
        throw ValidationError("lower weight given for level " + key +
                              ", which is not a square level of the period");
      }
      spec.weights.ne_lower[level] = value.get<double>();
    }
  }
  spec.validate();
  return out;
}

BoundaryMeasureSpec read_limit(const json& j) {
  BoundaryMeasureSpec b;
  if (j.contains("intervals")) {
    b = BoundaryMeasureSpec::from_intervals(read_pairs(j.at("intervals"), "limit.intervals"));
  } else if (j.contains("staircase_step")) {
    b = BoundaryMeasureSpec::staircase(j.at("staircase_step").get<int>());
  } else {
    throw ValidationError("limit needs intervals or staircase_step");
  }
  b.unit_mass = j.value("unit_mass", true);
  b.validate();
  return b;
}

}  // namespace

Backend parse_backend(const std::string& name) {
  if (name == "schur") return Backend::kSchur;
  if (name == "kasteleyn") return Backend::kKasteleyn;
  if (name == "both") return Backend::kBoth;
  throw ValidationError("backend must be schur, kasteleyn or both");
}

std::pair<int, int> parse_grid(const std::string& text) {
  const size_t x = text.find('x');
  int r = 0, c = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    size_t used = 0;
    r = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    c = std::stoi(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw ValidationError("grid must look like RxC, got '" + text + "'");
  }
  if (r < 1 || c < 1) throw ValidationError("grid dimensions must be positive");
  return {r, c};
}

const LatticeSpec& RunConfig::require_lattice() const {
  if (!lattice) throw ValidationError("this command needs a lattice section");
  return *lattice;
}

LimitModel RunConfig::limit_model() const {
  if (!lattice) throw ValidationError("the limit model needs lattice weights");
  if (!limit_boundary) {
    throw ValidationError(
        "no limit boundary: give a limit section or a segment/staircase lattice boundary");
  }
  LimitModel model{*limit_boundary, limit_weights(*lattice)};
  model.validate();
  return model;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("lattice")) {
      LatticeSection s = read_lattice(j.at("lattice"));
      c.lattice = s.spec;
      c.limit_boundary = s.derived;
    }
    if (j.contains("limit")) c.limit_boundary = read_limit(j.at("limit"));
    c.samples = j.value("samples", c.samples);
    c.seed = j.value("seed", c.seed);
    if (j.contains("grid")) {
      std::tie(c.grid_rows, c.grid_cols) = parse_grid(j.at("grid").get<std::string>());
    }
    c.out_dir = j.value("out", c.out_dir);
    if (j.contains("backend")) c.backend = parse_backend(j.at("backend").get<std::string>());
    c.curve_samples = j.value("curve_samples", c.curve_samples);
    c.svg = j.value("svg", c.svg);
    if (j.contains("gue")) {
      const json& g = j.at("gue");
      c.gue.k = g.value("k", c.gue.k);
      const std::string centering = g.value("centering", std::string("finite"));
      const std::string scale = g.value("scale", std::string("root"));
      if (centering != "finite" && centering != "limit") {
        throw ValidationError("gue.centering must be finite or limit");
      }
      if (scale != "root" && scale != "plain") {
        throw ValidationError("gue.scale must be root or plain");
      }
      c.gue.centering = centering == "finite" ? GueCentering::kFiniteN : GueCentering::kLimit;
      c.gue.scale = scale == "root" ? GueScale::kRootB : GueScale::kPlainB;
      c.gue.small_gap = g.value("small_gap", c.gue.small_gap);
      c.gue.min_replicas = g.value("min_replicas", c.gue.min_replicas);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  if (c.samples < 1) throw ValidationError("samples must be at least 1");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

}  // namespace sqhex::cli

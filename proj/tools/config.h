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

// Run configuration of the command-line tool, read from a JSON file.
//
// {
//   "lattice": {
//     "boundary": [1, 3, 6]                      (explicit positions) or
//     "levels": 40, "segments": [[0, 0.5], ...]  or
//     "levels": 40, "staircase_step": 2,
//     "pattern": [1, 0, 1],
//     "upper_weights": [1, 1, 1],                (default all 1)
//     "lower_weights": {"2": 0.5}                (default 1 on square levels)
//   },
//   "limit": {"intervals": [[0, 0.5], ...]} or {"staircase_step": 2},
//             optional "unit_mass": false
//   "samples": 1, "seed": 1, "grid": "40x60", "out": "out",
//   "backend": "both", "curve_samples": 400, "svg": true,
//   "gue": {"k": 1, "centering": "finite"|"limit", "scale": "root"|"plain"}
// }

#ifndef SQHEX_TOOLS_CONFIG_H_
#define SQHEX_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>

#include "sqhex/analysis.h"
#include "sqhex/lattice.h"
#include "sqhex/limitshape.h"

namespace sqhex::cli {

enum class Backend { kSchur, kKasteleyn, kBoth };

struct RunConfig {
  std::optional<LatticeSpec> lattice;
  std::optional<BoundaryMeasureSpec> limit_boundary;
  int samples = 1;
  uint64_t seed = 1;
  int grid_rows = 40;
  int grid_cols = 40;
  std::string out_dir = ".";
  Backend backend = Backend::kBoth;
  int curve_samples = 400;
  bool svg = true;
  GueOptions gue;

  const LatticeSpec& require_lattice() const;
  // Limit model from the "limit" section, or derived from a segment or
  // staircase lattice boundary.
  LimitModel limit_model() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

Backend parse_backend(const std::string& name);
// "RxC" with R, C >= 1.
std::pair<int, int> parse_grid(const std::string& text);

}  // namespace sqhex::cli

#endif  // SQHEX_TOOLS_CONFIG_H_

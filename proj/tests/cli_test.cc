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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.h"
#include "config.h"
#include "oracles.h"
#include "sqhex/errors.h"
#include "sqhex/schur.h"

namespace sqhex::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("sqhex_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / (name + ".json");
  std::ofstream(p) << text;
  return p.string();
}

int run_tool(const std::string& args) {
  const std::string cmd =
      std::string(SQHEX_TOOL_PATH) + " " + args + " > " + (scratch_dir() / "stdout.txt").string() +
      " 2> " + (scratch_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path, std::string* header) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream s(line);
    std::string cell;
    while (std::getline(s, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const char* kMixed = R"({"lattice": {"boundary": [1, 3, 6], "pattern": [1, 0, 1]}})";
const char* kStaircase = R"({"lattice": {"levels": 30, "staircase_step": 2, "pattern": [0, 1],
  "lower_weights": {"1": 1}}, "curve_samples": 200})";
const char* kAztec = R"({"lattice": {"levels": 20, "pattern": [0, 0],
  "segments": [[0, 0.25], [0.5, 0.75], [1, 1.25], [1.5, 1.75]],
  "lower_weights": {"1": 4, "2": 0.25}}})";

TEST_CASE("partition command reports both backends") {
  const std::string cfg = write_config("mixed", kMixed);
  const fs::path out = scratch_dir() / "partition";
  REQUIRE(run_tool("partition --config " + cfg + " --out " + out.string()) == kExitOk);
  std::string header;
  const auto rows = read_csv(out / "partition.csv", &header);
  CHECK(header == "backend,log_partition,partition");
  REQUIRE(rows.size() == 2);
  const double a = std::stod(rows[0][2]), b = std::stod(rows[1][2]);
  CHECK(a == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(std::abs(a - b) / a < 1e-12);
  REQUIRE(run_tool("partition --backend kasteleyn --config " + cfg + " --out " + out.string()) ==
          kExitOk);
  CHECK(read_csv(out / "partition.csv", nullptr).size() == 1);
}

TEST_CASE("partition of hexagon and trivial lattices") {
  const std::string cfg = write_config(
      "hex", R"({"lattice": {"boundary": [1, 2, 4, 7], "pattern": [1], "upper_weights": [1.5]}})");
  const fs::path out = scratch_dir() / "hex";
  REQUIRE(run_tool("partition --backend schur --config " + cfg + " --out " + out.string()) ==
          kExitOk);
  const double z = std::stod(read_csv(out / "partition.csv", nullptr)[0][2]);
  CHECK(z == doctest::Approx(oracle::schur_branching({3, 1, 0, 0}, {1.5, 1.5, 1.5, 1.5})));
  const std::string one = write_config("one", R"({"lattice": {"boundary": [1], "pattern": [1]}})");
  REQUIRE(run_tool("partition --config " + one + " --out " + out.string()) == kExitOk);
  CHECK(std::stod(read_csv(out / "partition.csv", nullptr)[0][2]) == doctest::Approx(1.0));
}

TEST_CASE("sampling is byte-identical for a fixed seed") {
  const std::string cfg = write_config("stair", kStaircase);
  const fs::path a = scratch_dir() / "sample_a", b = scratch_dir() / "sample_b",
                 c = scratch_dir() / "sample_c";
  REQUIRE(run_tool("sample --seed 5 --samples 3 --config " + cfg + " --out " + a.string()) ==
          kExitOk);
  REQUIRE(run_tool("sample --seed 5 --samples 3 --config " + cfg + " --out " + b.string()) ==
          kExitOk);
  REQUIRE(run_tool("sample --seed 6 --samples 3 --config " + cfg + " --out " + c.string()) ==
          kExitOk);
  for (const char* f : {"chains.csv", "matchings.csv"}) {
    CHECK(oracle::read_file((a / f).string()) == oracle::read_file((b / f).string()));
    CHECK(oracle::read_file((a / f).string()) != oracle::read_file((c / f).string()));
  }
  std::string header;
  read_csv(a / "chains.csv", &header);
  CHECK(header == "sample,row,index,part");
  const std::string svg = oracle::read_file((a / "sample_0.svg").string());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  const std::string small = write_config("mixed", kMixed);
  REQUIRE(run_tool("sample --backend kasteleyn --seed 5 --samples 4 --config " + small +
                   " --out " + c.string()) == kExitOk);
  CHECK(read_csv(c / "matchings.csv", nullptr).size() == 4 * 17);
}

TEST_CASE("enumerate reports the sampler distance") {
  const std::string cfg = write_config("mixed", kMixed);
  const fs::path out = scratch_dir() / "enumerate";
  REQUIRE(run_tool("enumerate --samples 20000 --config " + cfg + " --out " + out.string()) ==
          kExitOk);
  CHECK(read_csv(out / "enumeration.csv", nullptr).size() == 60);
  const auto j = nlohmann::json::parse(oracle::read_file((out / "enumeration_check.json").string()));
  CHECK(j["tv_distance"].get<double>() < 0.03);
  CHECK(j["matchings"].get<int>() == 60);
}

TEST_CASE("frozen boundary outputs") {
  const fs::path out = scratch_dir() / "frozen";
  REQUIRE(run_tool("frozen-boundary --config " + write_config("stair", kStaircase) + " --out " +
                   out.string()) == kExitOk);
  std::string header;
  const auto rows = read_csv(out / "curve.csv", &header);
  CHECK(header == "t,chi,kappa");
  CHECK(rows.size() >= 200);
  for (const auto& r : rows) {
    CHECK(std::abs(oracle::staircase_quartic(std::stod(r[1]), std::stod(r[2]))) < 1e-8);
  }
  CHECK(fs::exists(out / "frozen_boundary.svg"));

  const fs::path aztec = scratch_dir() / "aztec";
  REQUIRE(run_tool("frozen-boundary --config " + write_config("aztec", kAztec) + " --out " +
                   aztec.string()) == kExitOk);
  const auto j = nlohmann::json::parse(oracle::read_file((aztec / "tangencies.json").string()));
  CHECK(j["counts"]["kappa=0"].get<int>() == 11);

  const fs::path jg = scratch_dir() / "jgraph";
  const std::string cfg = write_config("jgraph", R"({
    "lattice": {"boundary": [1], "pattern": [1, 0, 0, 0, 0],
                "lower_weights": {"2": 1.4285714285714286, "3": 1.4285714285714286,
                                  "4": 2.5, "5": 5}},
    "limit": {"intervals": [[3, 6], [8, 10]], "unit_mass": false}})");
  REQUIRE(run_tool("frozen-boundary --config " + cfg + " --out " + jg.string()) == kExitOk);
  const auto jrows = read_csv(jg / "j_graph.csv", &header);
  CHECK(header == "t,j");
  CHECK(jrows.size() > 1000);
  CHECK_FALSE(fs::exists(jg / "curve.csv"));
}

TEST_CASE("density and limit height grids") {
  const std::string cfg = write_config("stair", kStaircase);
  const fs::path out = scratch_dir() / "grids";
  REQUIRE(run_tool("density --grid 8x9 --config " + cfg + " --out " + out.string()) == kExitOk);
  std::string header;
  const auto d = read_csv(out / "density.csv", &header);
  CHECK(header == "chi,kappa,density");
  CHECK(d.size() == 72);
  for (const auto& r : d) {
    CHECK(std::stod(r[2]) >= 0);
    CHECK(std::stod(r[2]) <= 1);
  }
  REQUIRE(run_tool("limit-height --grid 8x9 --config " + cfg + " --out " + out.string()) ==
          kExitOk);
  for (const auto& r : read_csv(out / "limit_height.csv", nullptr)) {
    if (std::stod(r[0]) == 0) CHECK(std::stod(r[2]) == doctest::Approx(2 * std::stod(r[1])));
  }
  CHECK(run_tool("density --grid 3x9 --config " + cfg + " --out " + out.string()) ==
        kExitValidation);
}

TEST_CASE("gue report schema") {
  const std::string cfg = write_config(
      "gue", R"({"lattice": {"boundary": [1, 3, 5, 7, 9, 11, 13, 15, 17, 19], "pattern": [1]},
                "gue": {"k": 1, "min_replicas": 50}})");
  const fs::path out = scratch_dir() / "gue";
  REQUIRE(run_tool("gue --samples 200 --config " + cfg + " --out " + out.string()) == kExitOk);
  const auto j = nlohmann::json::parse(oracle::read_file((out / "gue.json").string()));
  for (const char* key : {"mean", "variance", "ks_distance", "covariance", "constants"}) {
    CHECK(j.contains(key));
  }
  CHECK(run_tool("gue --samples 10 --config " + cfg + " --out " + out.string()) ==
        kExitValidation);
}

TEST_CASE("exit codes") {
  CHECK(run_tool("partition --config /nonexistent/config.json") == kExitValidation);
  CHECK(run_tool("partition --config " + write_config("bad", "{not json")) == kExitValidation);
  CHECK(run_tool("partition --config " +
                 write_config("bad_boundary", R"({"lattice": {"boundary": [2, 3], "pattern": [1]}})")) ==
        kExitValidation);
  const std::string cfg = write_config("mixed", kMixed);
  CHECK(run_tool("partition --backend magic --config " + cfg) == kExitValidation);
  CHECK(run_tool("frobnicate --config " + cfg) == kExitValidation);
  CHECK(run_tool("density --config " + cfg) == kExitValidation);
}

TEST_CASE("exceptions map to exit codes") {
  std::ostringstream err;
  CHECK(guarded_run([] {}, err) == kExitOk);
  CHECK(guarded_run([] { throw ValidationError("bad"); }, err) == kExitValidation);
  CHECK(guarded_run([] { throw NumericError("singular"); }, err) == kExitNumeric);
  CHECK(guarded_run([] { throw std::runtime_error("disk"); }, err) == kExitOther);
  CHECK(err.str().find("numeric failure: singular") != std::string::npos);
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_config_text(kAztec);
  REQUIRE(c.lattice.has_value());
  CHECK(c.lattice->levels == 20);
  CHECK(c.limit_model().boundary.intervals.size() == 4);
  CHECK(parse_grid("12x7") == std::pair<int, int>{12, 7});
  CHECK_THROWS_AS(parse_grid("12by7"), ValidationError);
  CHECK_THROWS_AS(parse_config_text(R"({"lattice": {"boundary": [1], "pattern": [0],
      "lower_weights": {"2": 1}}})"), ValidationError);
}

}  // namespace
}  // namespace sqhex::cli

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

#include "commands.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <json.hpp>

#include "sqhex/analysis.h"
#include "sqhex/chain_sampler.h"
#include "sqhex/errors.h"
#include "sqhex/kasteleyn.h"
#include "sqhex/parallel.h"
#include "sqhex/schur.h"
#include "svg.h"

namespace sqhex::cli {

namespace {

using nlohmann::json;

// Shortest round-trip representation, so reruns are byte-identical.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::filesystem::path out_path(const RunConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.out_dir);
  return std::filesystem::path(c.out_dir) / name;
}

void write_file(const RunConfig& c, const std::string& name, const std::string& text) {
  const auto path = out_path(c, name);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

class CsvWriter {
 public:
  CsvWriter(const RunConfig& c, const std::string& name, const std::string& header)
      : path_(out_path(c, name)), out_(path_, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path_.string());
    out_ << header << '\n';
  }
  template <typename... T>
  void row(const T&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(fields), first = false), ...);
    out_ << '\n';
  }
  ~CsvWriter() = default;

 private:
  static std::string cell(double v) { return fmt(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(int64_t v) { return std::to_string(v); }
  static std::string cell(size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  std::filesystem::path path_;
  std::ofstream out_;
};

Matching sample_matching(const KasteleynSystem& k, uint64_t seed, int replica) {
  Rng rng(seed, static_cast<uint64_t>(replica));
  return sample_exact(k, rng);
}

std::vector<Matching> draw_matchings(const RunConfig& c, const Graph& g) {
  const LatticeSpec& spec = c.require_lattice();
  std::vector<Matching> out(c.samples);
  if (c.backend == Backend::kKasteleyn) {
    const KasteleynSystem k = build_kasteleyn(g);
    parallel_for(c.samples, [&](int i) { out[i] = sample_matching(k, c.seed, i); });
  } else {
    const std::vector<SignatureChain> chains = sample_chains(spec, c.seed, c.samples);
    for (int i = 0; i < c.samples; ++i) out[i] = chain_to_matching(g, chains[i]);
  }
  return out;
}

struct Grid {
  std::vector<double> kappas, chis;
};

Grid make_grid(const RunConfig& c, const LimitModel& model) {
  if (c.grid_rows < 4 || c.grid_cols < 4) {
    throw ValidationError("grid too coarse: need at least 4x4 points");
  }
  Grid g;
  for (int a = 0; a < c.grid_rows; ++a) g.kappas.push_back(static_cast<double>(a) / c.grid_rows);
  const double lo = std::min(0.0, model.boundary.left_edge());
  const double hi = model.boundary.right_edge();
  for (int b = 0; b < c.grid_cols; ++b) {
    g.chis.push_back(lo + (hi - lo) * b / (c.grid_cols - 1));
  }
  return g;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "partition", "sample", "frozen-boundary", "density", "limit-height", "gue", "enumerate"};
  return names;
}

void cmd_partition(const RunConfig& c, std::ostream& log) {
  const LatticeSpec& spec = c.require_lattice();
  CsvWriter csv(c, "partition.csv", "backend,log_partition,partition");
  double log_schur = NAN, log_kast = NAN;
  if (c.backend != Backend::kKasteleyn) {
    log_schur = log_partition_function_schur(spec);
    csv.row("schur", log_schur, std::exp(log_schur));
    log << "schur      log Z = " << fmt(log_schur) << "  Z = " << fmt(std::exp(log_schur)) << '\n';
  }
  if (c.backend != Backend::kSchur) {
    const Graph g = build_lattice(spec);
    log_kast = log_partition_function_kasteleyn(build_kasteleyn(g));
    csv.row("kasteleyn", log_kast, std::exp(log_kast));
    log << "kasteleyn  log Z = " << fmt(log_kast) << "  Z = " << fmt(std::exp(log_kast)) << '\n';
  }
  if (c.backend == Backend::kBoth) {
    const double rel = std::abs(std::expm1(log_schur - log_kast));
    log << "relative difference = " << fmt(rel) << '\n';
    if (!(rel <= 1e-8)) {
      throw NumericError("partition functions disagree: relative difference " + fmt(rel));
    }
  }
}

void cmd_sample(const RunConfig& c, std::ostream& log) {
  const LatticeSpec& spec = c.require_lattice();
  const Graph g = build_lattice(spec);
  const std::vector<Matching> matchings = draw_matchings(c, g);
  {
    CsvWriter csv(c, "matchings.csv", "sample,edge");
    for (int i = 0; i < c.samples; ++i) {
      for (int e : matchings[i]) csv.row(i, e);
    }
  }
  {
    CsvWriter csv(c, "chains.csv", "sample,row,index,part");
    const int omega_size = size_of(signature_from_boundary(spec.boundary));
    for (int i = 0; i < c.samples; ++i) {
      const SignatureChain chain = matching_to_chain(g, matchings[i]);
      if (count_ne_sw(g, matchings[i]).signed_total() != omega_size) {
        throw NumericError("sample " + std::to_string(i) + " breaks the NE-SW edge count");
      }
      for (size_t r = 0; r < chain.rows.size(); ++r) {
        for (size_t l = 0; l < chain.rows[r].size(); ++l) {
          csv.row(i, static_cast<int>(r + 1), static_cast<int>(l + 1), chain.rows[r][l]);
        }
      }
    }
  }
  if (c.svg) write_file(c, "sample_0.svg", tiling_svg(g, matchings.front()));
  log << "wrote " << c.samples << " samples to " << c.out_dir << '\n';
}

void cmd_frozen_boundary(const RunConfig& c, std::ostream& log) {
  const LimitModel model = c.limit_model();
  const bool intervals = model.boundary.kind == BoundaryMeasureSpec::Kind::kIntervals;
  const LimitWeights& w = model.weights;
  const double r_over_n = static_cast<double>(w.hexagon_levels) / w.period;
  if (intervals) {
    CsvWriter csv(c, "j_graph.csv", "t,j");
    const double lo = model.boundary.left_edge(), hi = model.boundary.right_edge();
    const double span = hi - lo;
    Plot plot;
    plot.title = "J(t)";
    plot.x_label = "t";
    plot.y_label = "J";
    plot.x_lo = lo - 0.25 * span;
    plot.x_hi = hi + 0.25 * span;
    plot.y_lo = -10;
    plot.y_hi = 10;
    Series s;
    const int steps = 4000;
    for (int k = 0; k <= steps; ++k) {
      const double t = plot.x_lo + (plot.x_hi - plot.x_lo) * (k + 0.5) / (steps + 1);
      const double j = j_function(t, model);
      if (!std::isfinite(j)) continue;
      csv.row(t, j);
      s.points.push_back({t, j});
    }
    plot.series.push_back(s);
    if (c.svg) write_file(c, "j_graph.svg", plot_svg(plot));
    if (!model.boundary.unit_mass) {
      log << "wrote J graph only (boundary intervals do not have unit mass)\n";
      return;
    }
  }
  const FrozenBoundaryCurve curve = intervals
                                        ? frozen_boundary(model, c.curve_samples)
                                        : frozen_boundary_general(model, c.curve_samples);
  {
    CsvWriter csv(c, "curve.csv", "t,chi,kappa");
    for (const CurveSample& p : curve.samples) csv.row(p.t, p.chi, p.kappa);
  }
  json tj;
  tj["rank"] = curve.rank;
  tj["tangencies"] = json::array();
  std::map<std::string, int> counts;
  for (const TangencyPoint& p : curve.tangencies) {
    tj["tangencies"].push_back({{"chi", p.chi}, {"kappa", p.kappa}, {"t", p.t}, {"line", p.line}});
    ++counts[p.line];
  }
  tj["counts"] = counts;
  write_file(c, "tangencies.json", tj.dump(2) + "\n");
  if (c.svg) {
    Plot plot;
    plot.title = "frozen boundary";
    plot.x_label = "chi";
    plot.y_label = "kappa";
    plot.x_lo = std::min(0.0, model.boundary.left_edge()) - 0.1;
    plot.x_hi = model.boundary.right_edge() + 0.1;
    Series pts;
    pts.dots = true;
    pts.color = "#1f77b4";
    for (const CurveSample& p : curve.samples) pts.points.push_back({p.chi, p.kappa});
    plot.series.push_back(pts);
    if (intervals) {
      for (const auto& [a, b] : model.boundary.intervals) {
        plot.series.push_back({{{a, 0.0}, {a, 1.0}}, "#999999", false});
        plot.series.push_back({{{b, 0.0}, {b - r_over_n, 1.0}}, "#999999", false});
      }
    }
    Series tan;
    tan.dots = true;
    tan.color = "#d62728";
    for (const TangencyPoint& p : curve.tangencies) tan.points.push_back({p.chi, p.kappa});
    plot.series.push_back(tan);
    write_file(c, "frozen_boundary.svg", plot_svg(plot));
  }
  log << "curve samples " << curve.samples.size() << ", tangencies "
      << curve.tangencies.size() << ", rank " << curve.rank << '\n';
  for (const auto& [line, n] : counts) log << "  " << line << ": " << n << '\n';
}

void cmd_density(const RunConfig& c, std::ostream& log) {
  const LimitModel model = c.limit_model();
  const Grid grid = make_grid(c, model);
  CsvWriter csv(c, "density.csv", "chi,kappa,density");
  std::vector<std::vector<double>> values;
  for (double kappa : grid.kappas) {
    const RowProfile row(model, kappa);
    if (row.inconsistent()) {
      log << "warning: frozen stretch with conflicting sides at kappa " << fmt(kappa) << '\n';
    }
    values.emplace_back();
    for (double chi : grid.chis) {
      const double d = row.density(chi / (1 - kappa));
      csv.row(chi, kappa, d);
      values.back().push_back(d);
    }
  }
  if (c.svg) write_file(c, "density.svg", heatmap_svg(values, 0, 1, "density"));
  log << "wrote " << grid.kappas.size() << "x" << grid.chis.size() << " density grid\n";
}

void cmd_limit_height(const RunConfig& c, std::ostream& log) {
  const LimitModel model = c.limit_model();
  const Grid grid = make_grid(c, model);
  CsvWriter csv(c, "limit_height.csv", "chi,kappa,height");
  std::vector<std::vector<double>> values;
  double lo = INFINITY, hi = -INFINITY;
  for (double kappa : grid.kappas) {
    const RowProfile row(model, kappa);
    values.emplace_back();
    for (double chi : grid.chis) {
      const double h = limit_height(chi, row);
      csv.row(chi, kappa, h);
      values.back().push_back(h);
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
  }
  if (c.svg) write_file(c, "limit_height.svg", heatmap_svg(values, lo, hi, "limit height"));
  log << "wrote " << grid.kappas.size() << "x" << grid.chis.size() << " height grid\n";
}

void cmd_gue(const RunConfig& c, std::ostream& log) {
  const LatticeSpec& spec = c.require_lattice();
  const std::vector<SignatureChain> chains = sample_chains(spec, c.seed, c.samples);
  const GueReport rep = gue_corner_test(spec, chains, c.gue);
  GueOptions plain = c.gue;
  plain.scale = c.gue.scale == GueScale::kRootB ? GueScale::kPlainB : GueScale::kRootB;
  const GueReport alt_scale = gue_corner_test(spec, chains, plain);
  GueOptions other = c.gue;
  other.centering = c.gue.centering == GueCentering::kFiniteN ? GueCentering::kLimit
                                                              : GueCentering::kFiniteN;
  const GueReport alt_center = gue_corner_test(spec, chains, other);

  json j;
  j["k"] = rep.k;
  j["levels"] = spec.levels;
  j["replicas"] = rep.replicas;
  j["centering"] = c.gue.centering == GueCentering::kFiniteN ? "finite" : "limit";
  j["scale"] = c.gue.scale == GueScale::kRootB ? "root" : "plain";
  j["constants"] = {{"psi1", rep.constants.psi1},
                    {"psi2", rep.constants.psi2},
                    {"center", rep.constants.center},
                    {"spread", rep.constants.spread}};
  j["mean"] = rep.mean;
  j["variance"] = rep.covariance[0][0];
  j["covariance"] = rep.covariance;
  j["mean_offset"] = rep.mean_offset;
  if (rep.k == 1) {
    j["ks_distance"] = rep.ks_distance;
  } else {
    j["small_gap"] = {{"threshold", c.gue.small_gap},
                      {"fraction", rep.small_gap_fraction},
                      {"gue", rep.small_gap_gue},
                      {"independent", rep.small_gap_independent},
                      {"sigma", rep.small_gap_sigma},
                      {"repulsion", rep.repulsion}};
  }
  j["alternatives"] = {{"other_scale_variance", alt_scale.covariance[0][0]},
                       {"other_centering_mean", alt_center.mean},
                       {"other_centering_variance", alt_center.covariance[0][0]}};
  write_file(c, "gue.json", j.dump(2) + "\n");
  {
    CsvWriter csv(c, "gue_samples.csv", "replica,index,value");
    for (int i = 0; i < rep.replicas; ++i) {
      for (int l = 0; l < rep.k; ++l) csv.row(i, l + 1, rep.rescaled[i][l]);
    }
  }
  log << "k = " << rep.k << ", replicas = " << rep.replicas << ", mean = " << fmt(rep.mean[0])
      << ", variance = " << fmt(rep.covariance[0][0]);
  if (rep.k == 1) log << ", KS = " << fmt(rep.ks_distance);
  log << '\n';
}

void cmd_enumerate(const RunConfig& c, std::ostream& log) {
  const LatticeSpec& spec = c.require_lattice();
  const Graph g = build_lattice(spec);
  const std::vector<Matching> all = enumerate_matchings(g, 100000);
  std::vector<double> weight;
  double z = 0;
  for (const Matching& m : all) {
    weight.push_back(matching_weight(g, m));
    z += weight.back();
  }
  {
    CsvWriter csv(c, "enumeration.csv", "index,weight,probability,ne_sw_total,edges");
    for (size_t i = 0; i < all.size(); ++i) {
      std::string edges;
      for (int e : all[i]) edges += (edges.empty() ? "" : " ") + std::to_string(e);
      csv.row(static_cast<int>(i), weight[i], weight[i] / z, count_ne_sw(g, all[i]).total(),
              edges);
    }
  }
  log << "matchings = " << all.size() << ", Z = " << fmt(z) << '\n';
  if (c.samples > 1) {
    std::map<Matching, int> index;
    for (size_t i = 0; i < all.size(); ++i) index[all[i]] = static_cast<int>(i);
    std::vector<int> hits(all.size(), 0);
    for (const Matching& m : draw_matchings(c, g)) ++hits.at(index.at(m));
    double tv = 0, chi2 = 0;
    for (size_t i = 0; i < all.size(); ++i) {
      const double expected = c.samples * weight[i] / z;
      tv += std::abs(hits[i] / static_cast<double>(c.samples) - weight[i] / z) / 2;
      chi2 += (hits[i] - expected) * (hits[i] - expected) / expected;
    }
    double p = 1;
    if (all.size() > 1) {
      const boost::math::chi_squared_distribution<double> dist(static_cast<double>(all.size() - 1));
      p = boost::math::cdf(boost::math::complement(dist, chi2));
    }
    json j = {{"samples", c.samples}, {"matchings", all.size()}, {"tv_distance", tv},
              {"chi_square", chi2}, {"p_value", p}};
    write_file(c, "enumeration_check.json", j.dump(2) + "\n");
    log << "samples = " << c.samples << ", TV = " << fmt(tv) << ", chi-square p = " << fmt(p)
        << '\n';
  }
}

void run_command(const std::string& name, const RunConfig& config, std::ostream& log) {
  if (name == "partition") return cmd_partition(config, log);
  if (name == "sample") return cmd_sample(config, log);
  if (name == "frozen-boundary") return cmd_frozen_boundary(config, log);
  if (name == "density") return cmd_density(config, log);
  if (name == "limit-height") return cmd_limit_height(config, log);
  if (name == "gue") return cmd_gue(config, log);
  if (name == "enumerate") return cmd_enumerate(config, log);
  throw ValidationError("unknown command " + name);
}

int guarded_run(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOk;
}

int tool_main(int argc, char** argv) {
  CLI::App app{"Dimers on contracting square-hexagon lattices"};
  app.require_subcommand(1);
  std::string config_path, grid, out, backend;
  uint64_t seed = 0;
  int samples = 0;
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> about = {
      {"partition", "partition function from the Schur formula and the Kasteleyn determinant"},
      {"sample", "seeded random perfect matchings with their signature chains"},
      {"frozen-boundary", "frozen boundary curve, tangency points and the J graph"},
      {"density", "limiting particle density on a (chi, kappa) grid"},
      {"limit-height", "limiting height function on a (chi, kappa) grid"},
      {"gue", "fluctuations of the short top rows against GUE statistics"},
      {"enumerate", "all matchings of a small lattice, optionally checked against the sampler"}};
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--samples", samples, "number of samples or replicas");
    sub->add_option("--grid", grid, "grid size RxC");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--backend", backend, "schur, kasteleyn or both");
    subs[name] = sub;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  return guarded_run(
      [&] {
        RunConfig config = load_config(config_path);
        for (const auto& [name, sub] : subs) {
          if (!sub->parsed()) continue;
          if (sub->count("--seed")) config.seed = seed;
          if (sub->count("--samples")) {
            if (samples < 1) throw ValidationError("--samples must be at least 1");
            config.samples = samples;
          }
          if (sub->count("--grid")) {
            std::tie(config.grid_rows, config.grid_cols) = parse_grid(grid);
          }
          if (sub->count("--out")) config.out_dir = out;
          if (sub->count("--backend")) config.backend = parse_backend(backend);
          run_command(name, config, std::cout);
        }
      },
      std::cerr);
  return kExitOk;
}

}  // namespace sqhex::cli

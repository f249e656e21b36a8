// Copyright 2026 The ergosim authors
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergosim/characterize.hpp"
#include "ergosim/config.hpp"
#include "ergosim/objective.hpp"
#include "ergosim/optimize.hpp"
#include "ergosim/random.hpp"
#include "ergosim/sim.hpp"
#include "ergosim/topology.hpp"
#include "ergosim/workload.hpp"

namespace {

using ergosim::DesignPoint;
using nlohmann::json;

constexpr int kExitConfigError = 2;
constexpr int kExitSimAbort = 3;
constexpr int kExitCampaignFailure = 4;

// All artifacts are written to a temp file first and renamed into place, so a
// crashed run never leaves a truncated output behind.
void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

// Reproducibility header carried by every CSV artifact.
std::string csv_preamble(const ergosim::SimConfig& config, uint64_t seed) {
  json j = json::parse(ergosim::config_to_json(config));
  return "# master_seed=" + std::to_string(seed) + "\n# config=" + j.dump() + "\n";
}

DesignPoint parse_point(const std::string& text, const ergosim::ParameterSpace& space) {
  DesignPoint y;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    size_t used = 0;
    y.push_back(std::stod(field, &used));
    if (used != field.size())
      throw ergosim::ConfigError("bad design point component: " + field);
  }
  if (y.size() != space.dimension())
    throw ergosim::ConfigError("design point has " + std::to_string(y.size()) +
                               " components, space has " +
                               std::to_string(space.dimension()));
  return y;
}

int cmd_simulate(const std::string& config_path, const std::string& y_text,
                 uint64_t seed, const std::string& trace_path) {
  auto config = ergosim::load_config(config_path);
  auto topo = config.build_topology();
  const DesignPoint y =
      y_text.empty() ? topo.space.midpoint() : parse_point(y_text, topo.space);

  ergosim::ObjectiveSpec spec;
  spec.topology = &topo;
  spec.suite = config.build_suite();
  spec.alpha = config.alpha;
  spec.seeds_per_eval = config.seeds_per_eval;
  spec.master_seed = seed;

  std::ofstream trace_file;
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    if (!trace_file) throw std::runtime_error("cannot write " + trace_path);
    spec.sim_options.trace = &trace_file;
  }

  const auto ev = ergosim::evaluate(y, spec, 0);
  std::cout << "master_seed " << seed << "\n";
  std::cout << "design_point";
  for (double v : y) std::cout << " " << format_double(v);
  std::cout << "\n";
  std::cout << "execution_time " << format_double(ev.execution_time) << "\n";
  std::cout << "cost " << format_double(ev.cost) << "\n";
  std::cout << "objective " << format_double(ev.objective) << "\n";
  return 0;
}

int cmd_scan(const std::string& config_path, const std::string& out_dir, int n_lines,
             int n_points, int seeds_per_point, uint64_t seed,
             const std::string& from_text, const std::string& to_text) {
  auto config = ergosim::load_config(config_path);
  auto topo = config.build_topology();

  ergosim::ObjectiveSpec spec;
  spec.topology = &topo;
  spec.suite = config.build_suite();
  spec.alpha = config.alpha;
  spec.seeds_per_eval = config.seeds_per_eval;
  spec.master_seed = seed;

  std::filesystem::create_directories(out_dir);

  std::vector<std::pair<DesignPoint, DesignPoint>> lines;
  if (!from_text.empty() || !to_text.empty()) {
    if (from_text.empty() || to_text.empty())
      throw ergosim::ConfigError("--from and --to must be given together");
    lines.emplace_back(parse_point(from_text, topo.space),
                       parse_point(to_text, topo.space));
  } else {
    ergosim::ParamStream rng(seed, ergosim::ParamStream::hash_id("scan_lines"));
    for (int k = 0; k < n_lines; ++k) lines.push_back(ergosim::random_line(topo.space, rng));
  }

  for (size_t k = 0; k < lines.size(); ++k) {
    const auto scan =
        ergosim::scan_line(lines[k].first, lines[k].second, n_points, seeds_per_point, spec);
    std::ostringstream os;
    os << csv_preamble(config, seed);
    ergosim::write_scan_csv(os, static_cast<int>(k), scan, topo.space);
    char name[32];
    std::snprintf(name, sizeof(name), "line_%03zu.csv", k);
    write_atomic(std::filesystem::path(out_dir) / name, os.str());
    std::cout << "wrote " << (std::filesystem::path(out_dir) / name).string() << "\n";
  }
  return 0;
}

json run_to_json(const ergosim::RunResult& r) {
  json j;
  j["run_id"] = r.run_id;
  j["alpha"] = r.alpha;
  j["failed"] = r.failed;
  if (r.failed) {
    j["error"] = r.error;
    return j;
  }
  j["start"] = r.start;
  j["start_objective"] = r.start_objective;
  j["best_y"] = r.best_y;
  j["best_objective"] = r.best_objective;
  j["evaluations"] = r.history.size();
  j["budget_flag"] = r.budget_flag;
  j["improvement_ratio"] =
      r.best_objective != 0.0 ? r.start_objective / r.best_objective : 1.0;
  j["rounded_x"] = r.rounded_x;
  j["rounded_objective"] = r.rounded_objective;
  j["rounded_cost"] = r.rounded_cost;
  j["rounded_execution_time"] = r.rounded_execution_time;
  return j;
}

int cmd_optimize(const std::string& config_path, const std::string& out_dir,
                 std::vector<double> alphas, int starts, int budget, uint64_t seed,
                 int parallel) {
  auto config = ergosim::load_config(config_path);
  auto topo = config.build_topology();

  ergosim::ObjectiveSpec base;
  base.topology = &topo;
  base.suite = config.build_suite();
  base.seeds_per_eval = config.seeds_per_eval;

  ergosim::CampaignConfig cc;
  if (!alphas.empty()) cc.alphas = std::move(alphas);
  cc.n_starts = starts;
  cc.optimizer.max_evals = budget;
  cc.master_seed = seed;
  cc.parallel = parallel;

  const auto campaign = ergosim::multi_start(base, cc);
  std::filesystem::create_directories(out_dir);

  // campaign.json: resolved config, seed, every run and the per-alpha summary.
  json root;
  root["master_seed"] = seed;
  root["config"] = json::parse(ergosim::config_to_json(config));
  root["n_starts"] = cc.n_starts;
  root["budget"] = cc.optimizer.max_evals;
  root["alphas"] = cc.alphas;
  root["runs"] = json::array();
  for (const auto& r : campaign.runs) root["runs"].push_back(run_to_json(r));
  root["summaries"] = json::array();
  for (const auto& s : campaign.summaries) {
    root["summaries"].push_back({{"alpha", s.alpha},
                                 {"best", s.best},
                                 {"worst", s.worst},
                                 {"mean", s.mean},
                                 {"rel_std_dev", s.rel_std_dev}});
  }
  write_atomic(std::filesystem::path(out_dir) / "campaign.json", root.dump(2) + "\n");

  // convergence.csv: objective and running best per evaluation of every run.
  {
    std::ostringstream os;
    os << csv_preamble(config, seed);
    os << "run_id,alpha,eval_index,objective,best_so_far\n";
    for (const auto& r : campaign.runs) {
      if (r.failed) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& h : r.history) {
        best = std::min(best, h.objective);
        os << r.run_id << "," << format_double(r.alpha) << "," << h.index << ","
           << format_double(h.objective) << "," << format_double(best) << "\n";
      }
    }
    write_atomic(std::filesystem::path(out_dir) / "convergence.csv", os.str());
  }

  // scatter.csv: the (cost, execution time) trade-off of the rounded optima.
  {
    std::ostringstream os;
    os << csv_preamble(config, seed);
    os << "alpha,run_id,cost,execution_time,objective\n";
    for (const auto& r : campaign.runs) {
      if (r.failed) continue;
      os << format_double(r.alpha) << "," << r.run_id << ","
         << format_double(r.rounded_cost) << ","
         << format_double(r.rounded_execution_time) << ","
         << format_double(r.rounded_objective) << "\n";
    }
    write_atomic(std::filesystem::path(out_dir) / "scatter.csv", os.str());
  }

  // parameters.csv: per-alpha best rounded design point, one row per parameter.
  {
    std::ostringstream os;
    os << csv_preamble(config, seed);
    os << "alpha,parameter,min,max,value\n";
    for (size_t ai = 0; ai < cc.alphas.size(); ++ai) {
      const ergosim::RunResult* best = nullptr;
      for (int r = 0; r < cc.n_starts; ++r) {
        const auto& run = campaign.runs[ai * static_cast<size_t>(cc.n_starts) +
                                        static_cast<size_t>(r)];
        if (run.failed) continue;
        if (!best || run.rounded_objective < best->rounded_objective) best = &run;
      }
      if (!best) continue;
      const auto& space = topo.space;
      for (size_t i = 0; i < space.dimension(); ++i) {
        os << format_double(cc.alphas[ai]) << "," << space.spec(i).name << ","
           << format_double(space.spec(i).min_value) << ","
           << format_double(space.spec(i).max_value) << ","
           << format_double(best->rounded_x[i]) << "\n";
      }
    }
    write_atomic(std::filesystem::path(out_dir) / "parameters.csv", os.str());
  }

  int failed = 0;
  for (const auto& r : campaign.runs)
    if (r.failed) {
      ++failed;
      std::cerr << "run " << r.run_id << " failed: " << r.error << "\n";
    }
  std::cout << "campaign: " << campaign.runs.size() - static_cast<size_t>(failed) << "/"
            << campaign.runs.size() << " runs succeeded, results in " << out_dir << "\n";
  return campaign.any_failed ? kExitCampaignFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergosim: randomized-interpolation simulator and optimizer"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  uint64_t seed = 1;

  auto add_common = [&](CLI::App* cmd, bool with_out) {
    cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
    cmd->add_option("--seed", seed, "master seed; all randomness derives from it");
    if (with_out) cmd->add_option("--out", out_dir, "output directory");
  };

  auto* sim = app.add_subcommand("simulate", "evaluate the objective at one design point");
  std::string y_text, trace_path;
  add_common(sim, false);
  sim->add_option("--y", y_text, "design point, comma-separated; default midpoint");
  sim->add_option("--trace", trace_path, "write a per-event trace to this file");

  auto* scan = app.add_subcommand("scan", "objective profiles along lines through the box");
  int n_lines = 10, n_points = 20, seeds_per_point = 5;
  std::string from_text, to_text;
  add_common(scan, true);
  scan->add_option("--random", n_lines, "number of random lines");
  scan->add_option("--points", n_points, "points per line");
  scan->add_option("--seeds-per-point", seeds_per_point, "evaluations per point");
  scan->add_option("--from", from_text, "explicit line start, comma-separated");
  scan->add_option("--to", to_text, "explicit line end, comma-separated");

  auto* opt = app.add_subcommand("optimize", "multi-start descent over the alpha sweep");
  std::vector<double> alphas;
  int starts = 8, budget = 300, parallel = 1;
  add_common(opt, true);
  opt->add_option("--alphas", alphas, "cost weights; default 0 1e4 1e5 1e6");
  opt->add_option("--starts", starts, "independent starts per alpha");
  opt->add_option("--budget", budget, "objective evaluations per start");
  opt->add_option("--parallel", parallel, "concurrent runs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(config_path, y_text, seed, trace_path);
    if (scan->parsed())
      return cmd_scan(config_path, out_dir, n_lines, n_points, seeds_per_point, seed,
                      from_text, to_text);
    return cmd_optimize(config_path, out_dir, alphas, starts, budget, seed, parallel);
  } catch (const ergosim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ergosim::SimAbort& e) {
    std::cerr << "simulation abort: " << e.what() << "\n";
    return kExitSimAbort;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

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

#ifndef ERGOSIM_OPTIMIZE_HPP
#define ERGOSIM_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ergosim/objective.hpp"
#include "ergosim/params.hpp"

namespace ergosim {

/// Axis-aligned box constraint.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box from_space(const ParameterSpace& space);
  size_t dimension() const { return lo.size(); }
  bool contains(const std::vector<double>& x) const;
  std::vector<double> clip(std::vector<double> x) const;
  double min_width() const;
};

using ObjectiveFn = std::function<double(const DesignPoint&)>;

struct OptimizerConfig {
  int max_evals = 300;
  /// Initial trust radius as a fraction of the smallest box width.
  double initial_radius_frac = 0.25;
  double final_radius = 1e-2;
};

struct EvalRecord {
  int index = 0;
  double objective = 0.0;
};

struct RunResult {
  int run_id = 0;
  double alpha = 0.0;
  DesignPoint start;
  double start_objective = 0.0;
  DesignPoint best_y;
  double best_objective = 0.0;
  std::vector<EvalRecord> history;
  /// Set when the budget ran out before the initial simplex was complete.
  bool budget_flag = false;
  bool failed = false;
  std::string error;

  DesignPoint rounded_x;
  double rounded_objective = 0.0;
  double rounded_cost = 0.0;
  double rounded_execution_time = 0.0;
};

/// Derivative-free local descent: keeps a simplex of n+1 evaluated points,
/// fits a linear model of the objective over it and steps the best vertex
/// against the model gradient within a shrinking trust region, clipped to the
/// box. Returns the best point seen; never evaluates outside the box and
/// never exceeds the evaluation budget.
RunResult local_minimize(const ObjectiveFn& f, const Box& box, const DesignPoint& x0,
                         const OptimizerConfig& config);

/// Snaps a continuous solution to the integer lattice by evaluating the
/// deterministic objective at the floor/ceil corners of its fractional
/// coordinates (all 2^k when k <= max_exhaustive, else nearest rounding plus
/// 24 random corners) and keeping the best.
std::pair<DesignPoint, double> round_to_discrete(const DesignPoint& y,
                                                 const ObjectiveFn& f_discrete,
                                                 const Box& box, uint64_t seed = 0,
                                                 int max_exhaustive = 12);

struct SAConfig {
  int max_evals = 1000;
  /// Initial temperature; negative requests an estimate from early samples,
  /// zero degenerates to a stochastic hill-climb.
  double initial_temp = -1.0;
  double cooling = 0.995;
  /// Probability that a move redraws one coordinate uniformly instead of
  /// stepping it by +-1.
  double jump_prob = 0.1;
  /// Restart from the incumbent best (with a reheated temperature) after this
  /// many evaluations without improvement.
  int restart_interval = 150;
};

/// Simulated annealing over the integer lattice of the box with geometric
/// cooling and re-anneal restarts. Deterministic given the seed; returns the
/// best point seen.
RunResult simulated_annealing(const ObjectiveFn& f_discrete, const Box& box,
                              const SAConfig& config, uint64_t seed);

struct AlphaSummary {
  double alpha = 0.0;
  double best = 0.0;
  double worst = 0.0;
  double mean = 0.0;
  double rel_std_dev = 0.0;
};

struct CampaignConfig {
  std::vector<double> alphas = {0.0, 1e4, 1e5, 1e6};
  int n_starts = 8;
  OptimizerConfig optimizer;
  uint64_t master_seed = 1;
  int parallel = 1;
};

struct CampaignResult {
  std::vector<RunResult> runs;  // alpha-major, run-minor order
  std::vector<AlphaSummary> summaries;
  bool any_failed = false;
};

/// Multi-start campaign: for each alpha, n_starts independent descents from
/// uniform random interior points, followed by rounding to the lattice using
/// the deterministic objective. Runs may execute concurrently; results are
/// deterministic given master_seed.
CampaignResult multi_start(const ObjectiveSpec& base, const CampaignConfig& config);

}  // namespace ergosim

#endif  // ERGOSIM_OPTIMIZE_HPP

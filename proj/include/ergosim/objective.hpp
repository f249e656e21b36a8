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

#ifndef ERGOSIM_OBJECTIVE_HPP
#define ERGOSIM_OBJECTIVE_HPP

#include <cstdint>
#include <vector>

#include "ergosim/params.hpp"
#include "ergosim/sim.hpp"
#include "ergosim/topology.hpp"
#include "ergosim/workload.hpp"

namespace ergosim {

/// Scalarized objective: summed execution time over a workload suite plus
/// alpha times the synthetic cost.
struct ObjectiveSpec {
  const Topology* topology = nullptr;
  std::vector<Workload> suite;
  double alpha = 0.0;
  /// Simulation seeds per evaluation; >1 averages execution times, useful for
  /// short workloads where single-run noise is not negligible.
  int seeds_per_eval = 1;
  uint64_t master_seed = 1;
  SimOptions sim_options;

  const ParameterSpace& space() const { return topology->space; }
};

struct Evaluation {
  DesignPoint y;
  double execution_time = 0.0;  // mean over seeds, summed over the suite
  double cost = 0.0;
  double objective = 0.0;
  uint64_t index = 0;
  std::vector<uint64_t> seeds;
};

/// Affine map of a parameter value onto [1, 100] over its spec range.
double normalize(double value, const ParameterSpec& spec);

/// Synthetic cost: sum of normalized non-delay parameters plus 100/d for each
/// normalized delay-direction parameter. Strictly increasing in capacity and
/// throughput coordinates, strictly decreasing in delay and latency ones.
double cost(const DesignPoint& y, const ParameterSpace& space);

/// One objective evaluation at y. Simulation seeds are derived from
/// (master_seed, eval_index, workload, repetition), so a given evaluation
/// index is reproducible and distinct indices use fresh randomness.
Evaluation evaluate(const DesignPoint& y, const ObjectiveSpec& spec, uint64_t eval_index);

}  // namespace ergosim

#endif  // ERGOSIM_OBJECTIVE_HPP

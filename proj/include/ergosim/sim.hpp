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

#ifndef ERGOSIM_SIM_HPP
#define ERGOSIM_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "ergosim/params.hpp"
#include "ergosim/topology.hpp"
#include "ergosim/workload.hpp"

namespace ergosim {

struct SimOptions {
  uint64_t cycle_cap = 100'000'000;
  /// Abort if nothing moves for this many cycles while work is outstanding.
  uint64_t quiescence_window = 10'000;
  /// Optional line-oriented event trace: "cycle<TAB>component<TAB>event<TAB>token".
  std::ostream* trace = nullptr;
  /// Per-cycle structural checks (occupancy bounds, token conservation).
  bool check_invariants = false;
};

struct SimAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimResult {
  uint64_t execution_time = 1;  // cycles until the last job completed
  uint64_t seed = 0;
  uint64_t tokens_created = 0;
  uint64_t tokens_consumed = 0;
  /// Busy job-cycles per module, topology order.
  std::vector<uint64_t> module_busy_cycles;
};

/// Runs the cycle-stepped simulation of `workload` on `topology` at design
/// point `y`. Fractional coordinates of `y` are realized by per-cycle
/// randomized parameter draws seeded from `seed`; at an all-integer point the
/// result is seed-independent and exactly the deterministic simulation.
SimResult simulate(const Topology& topology, const DesignPoint& y, const Workload& workload,
                   uint64_t seed, const SimOptions& options = {});

}  // namespace ergosim

#endif  // ERGOSIM_SIM_HPP

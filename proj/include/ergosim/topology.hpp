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

#ifndef ERGOSIM_TOPOLOGY_HPP
#define ERGOSIM_TOPOLOGY_HPP

#include <array>
#include <string>
#include <vector>

#include "ergosim/params.hpp"
#include "ergosim/workload.hpp"

namespace ergosim {

/// A component parameter is either bound to a spec of the parameter space
/// (spec >= 0, value taken from the design point) or fixed.
struct ParamBinding {
  int spec = -1;
  double fixed = 1.0;

  static ParamBinding bound(int spec_index) { return {spec_index, 0.0}; }
  static ParamBinding fixed_at(double v) { return {-1, v}; }
  bool is_bound() const { return spec >= 0; }
  bool operator==(const ParamBinding&) const = default;
};

struct QueueDesc {
  std::string id;
  ParamBinding capacity;
  bool operator==(const QueueDesc&) const = default;
};

/// Behavioral component with one input queue. The output queue of a job is
/// implied by the token's route (the next wire's source queue), which lets a
/// component such as a NUMA router own several output queues.
struct ModuleDesc {
  std::string id;
  ParamBinding throughput;  // N: max concurrently active jobs
  ParamBinding delay;       // D: job service time in cycles
  int in_queue = -1;
  bool operator==(const ModuleDesc&) const = default;
};

/// Pipelined link between two queues. Accepts at most one token per cycle,
/// after reserving a slot at the destination.
struct WireDesc {
  std::string id;
  ParamBinding latency;  // L: transit time in cycles
  int src_queue = -1;
  int dst_queue = -1;
  bool operator==(const WireDesc&) const = default;
};

/// Job source/sink. Issues workload jobs into its output queue in program
/// order and consumes response tokens from its input queue.
struct CoreDesc {
  std::string id;
  int out_queue = -1;
  int in_queue = -1;
  int issue_width = 1;
  bool operator==(const CoreDesc&) const = default;
};

enum class HopType { Wire, Module };

struct Hop {
  HopType type = HopType::Wire;
  int index = -1;
  bool operator==(const Hop&) const = default;
};

/// Alternating wire/module hops from a core's output queue back to its input
/// queue. Routes always start and end with a wire hop.
using Route = std::vector<Hop>;

/// One route per (instruction-vs-data, resolution level) access class.
constexpr int kNumAccessClasses = 2 * kNumMemLevels;

inline int access_class(JobKind kind, MemLevel level) {
  const int side = (kind == JobKind::Ifetch) ? 0 : 1;
  return side * kNumMemLevels + static_cast<int>(level);
}

struct Topology {
  std::string builder;  // "numa" or "chain", with its shape arguments below
  std::vector<int> builder_args;

  std::vector<QueueDesc> queues;
  std::vector<ModuleDesc> modules;
  std::vector<WireDesc> wires;
  std::vector<CoreDesc> cores;
  std::vector<std::array<Route, kNumAccessClasses>> routes;  // per core

  ParameterSpace space;

  int queue_index(const std::string& id) const;
  int module_index(const std::string& id) const;

  /// Structural checks: hop indices valid, every route alternates wire/module
  /// hops and connects queue to queue consistently, every bound spec index is
  /// inside the space.
  void validate() const;

  /// Spec indices bound by at least one component parameter.
  std::vector<int> bound_specs() const;

  bool operator==(const Topology&) const = default;
};

/// NUMA hierarchy: per-core split L1 and unified L2, one shared L3 per
/// processor, one memory module per processor, crossbar routers X1/X2/X3
/// between levels. X3 links to local and remote memory carry separate
/// latency and output-buffer parameters.
///
/// Expects the parameter space to carry specs named like "N(L1I)", "D(mem)",
/// "C_inQ(L2)", "L(X3 local)", "C_outQ(X3 remote)"; every spec in the space
/// must be bound by the builder.
Topology build_numa_system(int m_processors, int n_cores_per_proc,
                           const ParameterSpace& space);

/// Linear chain: core -> stage0 -> ... -> stage(k-1) -> core, for closed-form
/// oracle fixtures. Binds specs named "N(s0)", "D(s0)", "C_inQ(s0)",
/// "C_outQ(s0)", "L(w1)", ... when present; unbound fields get fixed
/// defaults (N=1, D=1, L=1, C=1024).
Topology build_chain(int k_stages, const ParameterSpace& space);

/// The 31-parameter space of the 2x4 NUMA study instance.
ParameterSpace numa_parameter_space();

}  // namespace ergosim

#endif  // ERGOSIM_TOPOLOGY_HPP

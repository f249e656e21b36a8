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

#ifndef ERGOSIM_WORKLOAD_HPP
#define ERGOSIM_WORKLOAD_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ergosim {

enum class JobKind { Ifetch, Load, Store };

/// Level of the memory hierarchy at which an access resolves. Cache contents
/// are not modeled; the resolution level is fixed at generation time.
enum class MemLevel { L1, L2, L3, LocalMem, RemoteMem };

constexpr int kNumMemLevels = 5;

const char* to_string(JobKind k);
const char* to_string(MemLevel l);
JobKind job_kind_from_string(const std::string& s);
MemLevel mem_level_from_string(const std::string& s);

struct MemJob {
  JobKind kind = JobKind::Load;
  MemLevel level = MemLevel::L1;
  /// Indices of earlier jobs on the same core that must complete before this
  /// one may issue. Always strictly smaller than this job's own index.
  std::vector<uint32_t> deps;

  bool operator==(const MemJob&) const = default;
};

struct Workload {
  std::string name;
  std::vector<std::vector<MemJob>> per_core;

  size_t total_jobs() const;
  bool operator==(const Workload&) const = default;
};

/// Fractions of accesses resolving at each hierarchy level. Must be
/// nonnegative and sum to 1.
struct MissProfile {
  double l1 = 1.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double local_mem = 0.0;
  double remote_mem = 0.0;

  void validate() const;
};

/// Synthetic memory-test generator: per-core streams of accesses with the
/// given resolution profile. `window` bounds the number of outstanding
/// accesses per core (job i depends on job i-window); window 1 gives a fully
/// serialized stream. Pure function of its arguments.
Workload memory_test_workload(int n_cores, int jobs_per_core, const MissProfile& profile,
                              uint64_t seed, int window = 4,
                              double ifetch_fraction = 2.0 / 3.0);

/// Four workloads with distinct profiles (compute-, bandwidth-, latency- and
/// contention-bound); an objective evaluation sums their execution times.
std::vector<Workload> mixed_kernel_suite(int scale, int n_cores = 8);

/// Line-oriented dump/load: "core seq kind level dep,dep,..." per job.
void dump_workload(std::ostream& os, const Workload& w);
Workload load_workload(std::istream& is, const std::string& name = "");

}  // namespace ergosim

#endif  // ERGOSIM_WORKLOAD_HPP

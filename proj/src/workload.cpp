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

#include "ergosim/workload.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ergosim/random.hpp"

namespace ergosim {

const char* to_string(JobKind k) {
  switch (k) {
    case JobKind::Ifetch: return "ifetch";
    case JobKind::Load: return "load";
    case JobKind::Store: return "store";
  }
  return "?";
}

const char* to_string(MemLevel l) {
  switch (l) {
    case MemLevel::L1: return "l1";
    case MemLevel::L2: return "l2";
    case MemLevel::L3: return "l3";
    case MemLevel::LocalMem: return "local_mem";
    case MemLevel::RemoteMem: return "remote_mem";
  }
  return "?";
}

JobKind job_kind_from_string(const std::string& s) {
  if (s == "ifetch") return JobKind::Ifetch;
  if (s == "load") return JobKind::Load;
  if (s == "store") return JobKind::Store;
  throw std::invalid_argument("unknown job kind: " + s);
}

MemLevel mem_level_from_string(const std::string& s) {
  if (s == "l1") return MemLevel::L1;
  if (s == "l2") return MemLevel::L2;
  if (s == "l3") return MemLevel::L3;
  if (s == "local_mem") return MemLevel::LocalMem;
  if (s == "remote_mem") return MemLevel::RemoteMem;
  throw std::invalid_argument("unknown memory level: " + s);
}

size_t Workload::total_jobs() const {
  size_t n = 0;
  for (const auto& jobs : per_core) n += jobs.size();
  return n;
}

void MissProfile::validate() const {
  const std::array<double, kNumMemLevels> f = {l1, l2, l3, local_mem, remote_mem};
  double sum = 0.0;
  for (double v : f) {
    if (v < 0.0) throw std::invalid_argument("miss profile fraction is negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("miss profile fractions must sum to 1");
}

Workload memory_test_workload(int n_cores, int jobs_per_core, const MissProfile& profile,
                              uint64_t seed, int window, double ifetch_fraction) {
  if (n_cores < 1) throw std::invalid_argument("memory_test_workload: n_cores < 1");
  if (jobs_per_core < 1) throw std::invalid_argument("memory_test_workload: jobs_per_core < 1");
  if (window < 1) throw std::invalid_argument("memory_test_workload: window < 1");
  if (ifetch_fraction < 0.0 || ifetch_fraction > 1.0)
    throw std::invalid_argument("memory_test_workload: ifetch_fraction outside [0,1]");
  profile.validate();

  const std::array<double, kNumMemLevels> cum = {
      profile.l1,
      profile.l1 + profile.l2,
      profile.l1 + profile.l2 + profile.l3,
      profile.l1 + profile.l2 + profile.l3 + profile.local_mem,
      1.0};

  Workload w;
  w.name = "memory_test";
  w.per_core.resize(static_cast<size_t>(n_cores));
  for (int c = 0; c < n_cores; ++c) {
    // One substream per core: interleaving across cores has no effect on the
    // per-core job sequence.
    ParamStream rng(seed, ParamStream::hash_id("workload.core" + std::to_string(c)));
    auto& jobs = w.per_core[static_cast<size_t>(c)];
    jobs.reserve(static_cast<size_t>(jobs_per_core));
    for (int j = 0; j < jobs_per_core; ++j) {
      MemJob job;
      const double uk = rng.next_unit();
      if (uk < ifetch_fraction) {
        job.kind = JobKind::Ifetch;
      } else {
        job.kind = (rng.next_u64() & 1) ? JobKind::Load : JobKind::Store;
      }
      const double ul = rng.next_unit();
      int level = 0;
      while (level < kNumMemLevels - 1 && ul >= cum[static_cast<size_t>(level)]) ++level;
      job.level = static_cast<MemLevel>(level);
      if (j >= window) job.deps.push_back(static_cast<uint32_t>(j - window));
      jobs.push_back(std::move(job));
    }
  }
  return w;
}

std::vector<Workload> mixed_kernel_suite(int scale, int n_cores) {
  if (scale < 1) throw std::invalid_argument("mixed_kernel_suite: scale < 1");

  std::vector<Workload> suite;

  // Compute-bound: almost everything resolves in L1, deep issue window.
  Workload ep = memory_test_workload(n_cores, 4800 * scale,
                                     {0.95, 0.04, 0.01, 0.0, 0.0}, 0xE9, 8, 0.7);
  ep.name = "kernel_compute";
  suite.push_back(std::move(ep));

  // Bandwidth-bound: heavy local-memory traffic, wide window keeps the
  // hierarchy saturated.
  Workload mg = memory_test_workload(n_cores, 1600 * scale,
                                     {0.40, 0.20, 0.15, 0.20, 0.05}, 0x36, 8, 0.4);
  mg.name = "kernel_bandwidth";
  suite.push_back(std::move(mg));

  // Latency-bound: serialized dependent accesses reaching into memory.
  Workload ft = memory_test_workload(n_cores, 640 * scale,
                                     {0.30, 0.20, 0.20, 0.15, 0.15}, 0xF7, 1, 0.3);
  ft.name = "kernel_latency";
  suite.push_back(std::move(ft));

  // Contention-bound: remote-heavy traffic funneling through the NUMA links.
  Workload is = memory_test_workload(n_cores, 1000 * scale,
                                     {0.30, 0.10, 0.10, 0.10, 0.40}, 0x15, 4, 0.3);
  is.name = "kernel_contention";
  suite.push_back(std::move(is));

  return suite;
}

void dump_workload(std::ostream& os, const Workload& w) {
  os << "# workload " << w.name << " cores=" << w.per_core.size() << "\n";
  for (size_t c = 0; c < w.per_core.size(); ++c) {
    const auto& jobs = w.per_core[c];
    for (size_t j = 0; j < jobs.size(); ++j) {
      os << c << " " << j << " " << to_string(jobs[j].kind) << " "
         << to_string(jobs[j].level);
      for (size_t d = 0; d < jobs[j].deps.size(); ++d)
        os << (d == 0 ? " " : ",") << jobs[j].deps[d];
      os << "\n";
    }
  }
}

Workload load_workload(std::istream& is, const std::string& name) {
  Workload w;
  w.name = name;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    size_t core, seq;
    std::string kind, level, deps;
    if (!(ls >> core >> seq >> kind >> level))
      throw std::runtime_error("malformed workload line: " + line);
    MemJob job;
    job.kind = job_kind_from_string(kind);
    job.level = mem_level_from_string(level);
    if (ls >> deps) {
      std::istringstream ds(deps);
      std::string tok;
      while (std::getline(ds, tok, ','))
        job.deps.push_back(static_cast<uint32_t>(std::stoul(tok)));
    }
    if (w.per_core.size() <= core) w.per_core.resize(core + 1);
    if (w.per_core[core].size() != seq)
      throw std::runtime_error("out-of-order workload line: " + line);
    w.per_core[core].push_back(std::move(job));
  }
  return w;
}

}  // namespace ergosim

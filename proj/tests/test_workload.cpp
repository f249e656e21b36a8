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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ergosim/params.hpp"
#include "ergosim/sim.hpp"
#include "ergosim/topology.hpp"
#include "ergosim/workload.hpp"

using namespace ergosim;

TEST_CASE("memory_test_workload is a pure function of its arguments") {
  MissProfile p{0.5, 0.2, 0.1, 0.1, 0.1};
  auto a = memory_test_workload(4, 100, p, 42);
  auto b = memory_test_workload(4, 100, p, 42);
  CHECK(a == b);
  auto c = memory_test_workload(4, 100, p, 43);
  CHECK(a != c);
}

TEST_CASE("generated job counts and dependency structure") {
  auto w = memory_test_workload(3, 50, {1, 0, 0, 0, 0}, 7, /*window=*/5);
  REQUIRE(w.per_core.size() == 3);
  CHECK(w.total_jobs() == 150);
  for (const auto& jobs : w.per_core) {
    REQUIRE(jobs.size() == 50);
    for (size_t i = 0; i < jobs.size(); ++i) {
      if (i < 5) {
        CHECK(jobs[i].deps.empty());
      } else {
        REQUIRE(jobs[i].deps.size() == 1);
        CHECK(jobs[i].deps[0] == i - 5);
      }
    }
  }
}

TEST_CASE("level mix tracks the profile") {
  MissProfile p{0.6, 0.2, 0.1, 0.05, 0.05};
  auto w = memory_test_workload(2, 20000, p, 11);
  int counts[kNumMemLevels] = {};
  int ifetch = 0, total = 0;
  for (const auto& jobs : w.per_core)
    for (const auto& j : jobs) {
      counts[static_cast<int>(j.level)]++;
      if (j.kind == JobKind::Ifetch) ++ifetch;
      ++total;
    }
  const double fracs[] = {0.6, 0.2, 0.1, 0.05, 0.05};
  for (int l = 0; l < kNumMemLevels; ++l) {
    const double f = static_cast<double>(counts[l]) / total;
    CHECK(std::abs(f - fracs[l]) < 0.02);
  }
  CHECK(std::abs(static_cast<double>(ifetch) / total - 2.0 / 3.0) < 0.02);
}

TEST_CASE("profile validation rejects bad sums and negative entries") {
  CHECK_THROWS_AS((MissProfile{0.5, 0.5, 0.5, 0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MissProfile{1.2, -0.2, 0, 0, 0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((MissProfile{0.25, 0.25, 0.25, 0.15, 0.10}.validate()));
}

TEST_CASE("generator rejects nonsense shapes") {
  CHECK_THROWS_AS(memory_test_workload(0, 10, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(memory_test_workload(1, -1, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(memory_test_workload(1, 10, {}, 1, /*window=*/0), std::invalid_argument);
}

TEST_CASE("kernel suite has four distinct profiles at any scale") {
  for (int scale : {1, 3}) {
    auto suite = mixed_kernel_suite(scale, 8);
    REQUIRE(suite.size() == 4);
    CHECK(suite[0].name == "kernel_compute");
    CHECK(suite[1].name == "kernel_bandwidth");
    CHECK(suite[2].name == "kernel_latency");
    CHECK(suite[3].name == "kernel_contention");
    for (const auto& w : suite) {
      CHECK(w.per_core.size() == 8);
      CHECK(w.total_jobs() > 0);
    }
  }
  // Scale multiplies job counts.
  CHECK(mixed_kernel_suite(3, 8)[0].total_jobs() ==
        3 * mixed_kernel_suite(1, 8)[0].total_jobs());
}

TEST_CASE("dump/load round-trips a workload exactly") {
  auto w = memory_test_workload(4, 200, {0.3, 0.3, 0.2, 0.1, 0.1}, 99, 3);
  w.name = "roundtrip";
  std::stringstream ss;
  dump_workload(ss, w);
  auto back = load_workload(ss, "roundtrip");
  CHECK(back == w);
}

TEST_CASE("kind and level string round-trips") {
  for (auto k : {JobKind::Ifetch, JobKind::Load, JobKind::Store})
    CHECK(job_kind_from_string(to_string(k)) == k);
  for (auto l : {MemLevel::L1, MemLevel::L2, MemLevel::L3, MemLevel::LocalMem,
                 MemLevel::RemoteMem})
    CHECK(mem_level_from_string(to_string(l)) == l);
}

TEST_CASE("kernel suite at scale 1 totals the calibrated cycle window") {
  // Pinned once: the four kernels together exercise between 1e5 and 1e6
  // cycles at the midpoint of the study space.
  auto space = numa_parameter_space();
  auto topo = build_numa_system(2, 4, space);
  uint64_t total = 0;
  for (const auto& w : mixed_kernel_suite(1, 8))
    total += simulate(topo, space.midpoint(), w, 1).execution_time;
  CHECK(total >= 100000);
  CHECK(total <= 1000000);
}

TEST_CASE("compute-bound kernel is flat along the memory delay axis") {
  auto space = numa_parameter_space();
  auto topo = build_numa_system(2, 4, space);
  auto compute = mixed_kernel_suite(1, 8)[0];
  auto y1 = space.midpoint();
  auto y2 = space.midpoint();
  const size_t dm = static_cast<size_t>(space.index_of("D(mem)"));
  y1[dm] = 64;
  y2[dm] = 128;
  CHECK(simulate(topo, y1, compute, 1).execution_time ==
        simulate(topo, y2, compute, 1).execution_time);
}

TEST_CASE("suite execution dominance: fast parts never lose to slow parts") {
  auto space = numa_parameter_space();
  auto topo = build_numa_system(2, 4, space);
  auto fast = space.midpoint();
  auto slow = space.midpoint();
  for (size_t i = 0; i < space.dimension(); ++i) {
    if (!is_delay_kind(space.spec(i).kind)) continue;
    fast[i] = space.spec(i).min_value;
    slow[i] = space.spec(i).max_value;
  }
  uint64_t tf = 0, ts = 0;
  for (const auto& w : mixed_kernel_suite(1, 8)) {
    tf += simulate(topo, fast, w, 1).execution_time;
    ts += simulate(topo, slow, w, 1).execution_time;
  }
  CHECK(tf <= ts);
}

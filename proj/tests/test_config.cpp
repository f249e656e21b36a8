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

#include <cstdio>
#include <fstream>
#include <string>

#include "ergosim/config.hpp"
#include "ergosim/topology.hpp"

using namespace ergosim;

namespace {

const char* kNumaConfig = R"json({
  "topology": {"builder": "numa", "processors": 2, "cores_per_processor": 4},
  "specs": [
    {"name": "N(L1I)", "kind": "throughput", "min": 1, "max": 4},
    {"name": "D(L1I)", "kind": "delay", "min": 1, "max": 4}
  ],
  "workload": {
    "type": "memory_test", "jobs_per_core": 500, "window": 4,
    "profile": {"l1": 0.7, "l2": 0.2, "l3": 0.1}
  },
  "objective": {"alpha": 10000.0, "seeds_per_eval": 2}
})json";

}  // namespace

TEST_CASE("parse reads topology, specs, workload and objective sections") {
  auto c = parse_config(kNumaConfig);
  CHECK(c.builder == "numa");
  CHECK(c.processors == 2);
  CHECK(c.cores_per_processor == 4);
  REQUIRE(c.space.dimension() == 2);
  CHECK(c.space.spec(0).name == "N(L1I)");
  CHECK(c.space.spec(0).kind == ParamKind::Throughput);
  CHECK(c.space.spec(1).kind == ParamKind::Delay);
  CHECK(c.workload.type == "memory_test");
  CHECK(c.workload.jobs_per_core == 500);
  CHECK(c.workload.profile.l1 == doctest::Approx(0.7));
  CHECK(c.alpha == doctest::Approx(10000.0));
  CHECK(c.seeds_per_eval == 2);
}

TEST_CASE("json round-trip is the identity") {
  auto c = parse_config(kNumaConfig);
  auto back = parse_config(config_to_json(c));
  CHECK(back.builder == c.builder);
  CHECK(back.space == c.space);
  CHECK(back.workload.jobs_per_core == c.workload.jobs_per_core);
  CHECK(back.workload.profile.l1 == c.workload.profile.l1);
  CHECK(back.alpha == c.alpha);
  CHECK(back.seeds_per_eval == c.seeds_per_eval);
  // And the rendering itself is a fixed point.
  CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("save/load round-trips through a file") {
  auto c = parse_config(kNumaConfig);
  const std::string path = "/tmp/ergosim_test_config.json";
  save_config(path, c);
  auto back = load_config(path);
  CHECK(config_to_json(back) == config_to_json(c));
  std::remove(path.c_str());
}

TEST_CASE("chain configs build a chain topology") {
  auto c = parse_config(R"json({
    "topology": {"builder": "chain", "stages": 2},
    "specs": [{"name": "D(s0)", "kind": "delay", "min": 1, "max": 8}],
    "workload": {"type": "memory_test", "jobs_per_core": 10,
                 "profile": {"l1": 1.0}}
  })json");
  auto topo = c.build_topology();
  CHECK(topo.builder == "chain");
  CHECK(topo.modules.size() == 2);
  CHECK(c.build_suite().size() == 1);
}

TEST_CASE("kernel suite workloads expand to four kernels") {
  auto c = parse_config(R"json({
    "topology": {"builder": "numa", "processors": 2, "cores_per_processor": 4},
    "specs": [{"name": "N(L1I)", "kind": "throughput", "min": 1, "max": 4}],
    "workload": {"type": "kernel_suite", "scale": 2}
  })json");
  auto suite = c.build_suite();
  REQUIRE(suite.size() == 4);
  for (const auto& w : suite) CHECK(w.per_core.size() == 8);
}

TEST_CASE("malformed configs raise ConfigError with context") {
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("{}"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"json({"topology": {"builder": "ring"},
      "specs": [], "workload": {"type": "kernel_suite"}})json"),
                  ConfigError);
  // Profile that does not sum to one.
  CHECK_THROWS_AS(parse_config(R"json({
    "topology": {"builder": "chain", "stages": 1},
    "specs": [],
    "workload": {"type": "memory_test", "jobs_per_core": 10,
                 "profile": {"l1": 0.5}}
  })json"),
                  ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("negative alpha and zero seeds are rejected") {
  CHECK_THROWS_AS(parse_config(R"json({
    "topology": {"builder": "chain", "stages": 1},
    "specs": [], "workload": {"type": "kernel_suite"},
    "objective": {"alpha": -1.0}
  })json"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"json({
    "topology": {"builder": "chain", "stages": 1},
    "specs": [], "workload": {"type": "kernel_suite"},
    "objective": {"alpha": 0.0, "seeds_per_eval": 0}
  })json"),
                  ConfigError);
}

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

#ifndef ERGOSIM_CONFIG_HPP
#define ERGOSIM_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "ergosim/params.hpp"
#include "ergosim/topology.hpp"
#include "ergosim/workload.hpp"

namespace ergosim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WorkloadConfig {
  std::string type = "memory_test";  // or "kernel_suite"
  // memory_test fields
  int jobs_per_core = 1000;
  int window = 4;
  double ifetch_fraction = 2.0 / 3.0;
  MissProfile profile;
  uint64_t seed = 1;
  // kernel_suite field
  int scale = 1;
};

/// Parsed experiment configuration: parameter space, topology shape, workload
/// and objective settings.
struct SimConfig {
  std::string builder = "numa";  // "numa" or "chain"
  int processors = 2;
  int cores_per_processor = 4;
  int stages = 1;

  ParameterSpace space;
  WorkloadConfig workload;
  double alpha = 0.0;
  int seeds_per_eval = 1;

  Topology build_topology() const;
  std::vector<Workload> build_suite() const;
  int core_count() const;
};

SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& json_text);

/// Canonical JSON rendering; load(parse(save(c))) is the identity on the
/// fields above.
std::string config_to_json(const SimConfig& c);
void save_config(const std::string& path, const SimConfig& c);

}  // namespace ergosim

#endif  // ERGOSIM_CONFIG_HPP

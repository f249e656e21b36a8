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

#include "ergosim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ergosim {

using nlohmann::json;

Topology SimConfig::build_topology() const {
  if (builder == "numa") return build_numa_system(processors, cores_per_processor, space);
  if (builder == "chain") return build_chain(stages, space);
  throw ConfigError("unknown topology builder: " + builder);
}

int SimConfig::core_count() const {
  return builder == "numa" ? processors * cores_per_processor : 1;
}

std::vector<Workload> SimConfig::build_suite() const {
  if (workload.type == "memory_test") {
    return {memory_test_workload(core_count(), workload.jobs_per_core, workload.profile,
                                 workload.seed, workload.window,
                                 workload.ifetch_fraction)};
  }
  if (workload.type == "kernel_suite")
    return mixed_kernel_suite(workload.scale, core_count());
  throw ConfigError("unknown workload type: " + workload.type);
}

SimConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  try {
    SimConfig c;
    const auto& topo = j.at("topology");
    c.builder = topo.at("builder").get<std::string>();
    if (c.builder == "numa") {
      c.processors = topo.at("processors").get<int>();
      c.cores_per_processor = topo.at("cores_per_processor").get<int>();
    } else if (c.builder == "chain") {
      c.stages = topo.at("stages").get<int>();
    } else {
      throw ConfigError("unknown topology builder: " + c.builder);
    }

    std::vector<ParameterSpec> specs;
    for (const auto& s : j.at("specs")) {
      ParameterSpec spec;
      spec.name = s.at("name").get<std::string>();
      spec.kind = param_kind_from_string(s.at("kind").get<std::string>());
      spec.min_value = s.at("min").get<double>();
      spec.max_value = s.at("max").get<double>();
      specs.push_back(std::move(spec));
    }
    c.space = ParameterSpace(std::move(specs));

    const auto& w = j.at("workload");
    c.workload.type = w.at("type").get<std::string>();
    if (c.workload.type == "memory_test") {
      c.workload.jobs_per_core = w.at("jobs_per_core").get<int>();
      c.workload.window = w.value("window", 4);
      c.workload.ifetch_fraction = w.value("ifetch_fraction", 2.0 / 3.0);
      c.workload.seed = w.value("seed", uint64_t{1});
      const auto& p = w.at("profile");
      c.workload.profile.l1 = p.value("l1", 0.0);
      c.workload.profile.l2 = p.value("l2", 0.0);
      c.workload.profile.l3 = p.value("l3", 0.0);
      c.workload.profile.local_mem = p.value("local_mem", 0.0);
      c.workload.profile.remote_mem = p.value("remote_mem", 0.0);
      c.workload.profile.validate();
    } else if (c.workload.type == "kernel_suite") {
      c.workload.scale = w.value("scale", 1);
    } else {
      throw ConfigError("unknown workload type: " + c.workload.type);
    }

    if (j.contains("objective")) {
      c.alpha = j["objective"].value("alpha", 0.0);
      c.seeds_per_eval = j["objective"].value("seeds_per_eval", 1);
    }
    if (c.alpha < 0.0) throw ConfigError("objective.alpha must be >= 0");
    if (c.seeds_per_eval < 1) throw ConfigError("objective.seeds_per_eval must be >= 1");
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config validation error: ") + e.what());
  }
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const SimConfig& c) {
  json j;
  j["topology"]["builder"] = c.builder;
  if (c.builder == "numa") {
    j["topology"]["processors"] = c.processors;
    j["topology"]["cores_per_processor"] = c.cores_per_processor;
  } else {
    j["topology"]["stages"] = c.stages;
  }
  j["specs"] = json::array();
  for (const auto& s : c.space.specs()) {
    j["specs"].push_back({{"name", s.name},
                          {"kind", to_string(s.kind)},
                          {"min", s.min_value},
                          {"max", s.max_value}});
  }
  j["workload"]["type"] = c.workload.type;
  if (c.workload.type == "memory_test") {
    j["workload"]["jobs_per_core"] = c.workload.jobs_per_core;
    j["workload"]["window"] = c.workload.window;
    j["workload"]["ifetch_fraction"] = c.workload.ifetch_fraction;
    j["workload"]["seed"] = c.workload.seed;
    j["workload"]["profile"] = {{"l1", c.workload.profile.l1},
                                {"l2", c.workload.profile.l2},
                                {"l3", c.workload.profile.l3},
                                {"local_mem", c.workload.profile.local_mem},
                                {"remote_mem", c.workload.profile.remote_mem}};
  } else {
    j["workload"]["scale"] = c.workload.scale;
  }
  j["objective"]["alpha"] = c.alpha;
  j["objective"]["seeds_per_eval"] = c.seeds_per_eval;
  return j.dump(2);
}

void save_config(const std::string& path, const SimConfig& c) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << config_to_json(c) << "\n";
}

}  // namespace ergosim

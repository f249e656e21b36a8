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

#include "ergosim/objective.hpp"

#include <stdexcept>
#include <string>

#include "ergosim/random.hpp"

namespace ergosim {

double normalize(double value, const ParameterSpec& spec) {
  if (value < spec.min_value || value > spec.max_value)
    throw std::invalid_argument("normalize: " + spec.name + " value out of range");
  if (spec.max_value == spec.min_value) return 1.0;
  return 1.0 + 99.0 * (value - spec.min_value) / (spec.max_value - spec.min_value);
}

double cost(const DesignPoint& y, const ParameterSpace& space) {
  if (y.size() != space.dimension())
    throw std::invalid_argument("cost: dimension mismatch");
  double total = 0.0;
  for (size_t i = 0; i < space.dimension(); ++i) {
    const double norm = normalize(y[i], space.spec(i));
    if (is_delay_kind(space.spec(i).kind))
      total += 100.0 / norm;
    else
      total += norm;
  }
  return total;
}

Evaluation evaluate(const DesignPoint& y, const ObjectiveSpec& spec, uint64_t eval_index) {
  if (spec.topology == nullptr) throw std::invalid_argument("evaluate: no topology");
  if (spec.alpha < 0.0) throw std::invalid_argument("evaluate: alpha < 0");
  if (spec.seeds_per_eval < 1) throw std::invalid_argument("evaluate: seeds_per_eval < 1");
  if (!spec.space().contains(y)) {
    std::string msg = "evaluate: point outside the parameter box:";
    for (size_t i = 0; i < y.size() && i < spec.space().dimension(); ++i) {
      const auto& s = spec.space().spec(i);
      if (y.size() != spec.space().dimension() || y[i] < s.min_value || y[i] > s.max_value)
        msg += " " + s.name;
    }
    throw std::invalid_argument(msg);
  }

  Evaluation ev;
  ev.y = y;
  ev.index = eval_index;

  double total_time = 0.0;
  for (size_t w = 0; w < spec.suite.size(); ++w) {
    double sum = 0.0;
    for (int rep = 0; rep < spec.seeds_per_eval; ++rep) {
      ParamStream seeder(spec.master_seed,
                         (eval_index << 16) ^ (static_cast<uint64_t>(w) << 8) ^
                             static_cast<uint64_t>(rep));
      const uint64_t seed = seeder.next_u64();
      ev.seeds.push_back(seed);
      try {
        sum += static_cast<double>(
            simulate(*spec.topology, y, spec.suite[w], seed, spec.sim_options)
                .execution_time);
      } catch (const SimAbort& e) {
        std::string msg = std::string(e.what()) + " at Y = [";
        for (size_t i = 0; i < y.size(); ++i)
          msg += (i ? "," : "") + std::to_string(y[i]);
        throw SimAbort(msg + "]");
      }
    }
    total_time += sum / spec.seeds_per_eval;
  }

  ev.execution_time = total_time;
  ev.cost = cost(y, spec.space());
  ev.objective = ev.execution_time + spec.alpha * ev.cost;
  return ev;
}

}  // namespace ergosim

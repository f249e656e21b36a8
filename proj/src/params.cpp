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

#include "ergosim/params.hpp"

#include <stdexcept>

namespace ergosim {

const char* to_string(ParamKind kind) {
  switch (kind) {
    case ParamKind::Capacity: return "capacity";
    case ParamKind::Throughput: return "throughput";
    case ParamKind::Delay: return "delay";
    case ParamKind::Latency: return "latency";
  }
  return "?";
}

ParamKind param_kind_from_string(const std::string& s) {
  if (s == "capacity") return ParamKind::Capacity;
  if (s == "throughput") return ParamKind::Throughput;
  if (s == "delay") return ParamKind::Delay;
  if (s == "latency") return ParamKind::Latency;
  throw std::invalid_argument("unknown parameter kind: " + s);
}

ParameterSpace::ParameterSpace(std::vector<ParameterSpec> specs) : specs_(std::move(specs)) {
  validate();
}

int ParameterSpace::index_of(const std::string& name) const {
  for (size_t i = 0; i < specs_.size(); ++i)
    if (specs_[i].name == name) return static_cast<int>(i);
  return -1;
}

void ParameterSpace::validate() const {
  for (const auto& s : specs_) {
    if (s.name.empty()) throw std::invalid_argument("parameter spec with empty name");
    if (s.min_value < 1.0)
      throw std::invalid_argument(s.name + ": parameter minimum must be >= 1");
    if (s.min_value > s.max_value)
      throw std::invalid_argument(s.name + ": min exceeds max");
    if (s.min_value != std::floor(s.min_value) || s.max_value != std::floor(s.max_value))
      throw std::invalid_argument(s.name + ": bounds must be integral");
    for (const auto& other : specs_) {
      if (&other != &s && other.name == s.name)
        throw std::invalid_argument("duplicate parameter spec: " + s.name);
    }
  }
}

bool ParameterSpace::contains(const DesignPoint& y) const {
  if (y.size() != specs_.size()) return false;
  for (size_t i = 0; i < specs_.size(); ++i)
    if (y[i] < specs_[i].min_value || y[i] > specs_[i].max_value) return false;
  return true;
}

bool ParameterSpace::is_integral(const DesignPoint& y) const {
  for (double v : y)
    if (v != std::floor(v)) return false;
  return true;
}

DesignPoint ParameterSpace::lower() const {
  DesignPoint y(specs_.size());
  for (size_t i = 0; i < specs_.size(); ++i) y[i] = specs_[i].min_value;
  return y;
}

DesignPoint ParameterSpace::upper() const {
  DesignPoint y(specs_.size());
  for (size_t i = 0; i < specs_.size(); ++i) y[i] = specs_[i].max_value;
  return y;
}

DesignPoint ParameterSpace::midpoint() const {
  DesignPoint y(specs_.size());
  for (size_t i = 0; i < specs_.size(); ++i)
    y[i] = 0.5 * (specs_[i].min_value + specs_[i].max_value);
  return y;
}

}  // namespace ergosim

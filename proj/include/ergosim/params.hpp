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

#ifndef ERGOSIM_PARAMS_HPP
#define ERGOSIM_PARAMS_HPP

#include <cmath>
#include <string>
#include <vector>

namespace ergosim {

/// Design point in the continuous box: one real value per parameter spec.
using DesignPoint = std::vector<double>;

enum class ParamKind { Capacity, Throughput, Delay, Latency };

const char* to_string(ParamKind kind);
ParamKind param_kind_from_string(const std::string& s);

/// Delay-direction parameters (D, L) improve performance when decreased;
/// the others (C, N) when increased. The cost function splits on this.
inline bool is_delay_kind(ParamKind k) {
  return k == ParamKind::Delay || k == ParamKind::Latency;
}

struct ParameterSpec {
  std::string name;
  ParamKind kind = ParamKind::Capacity;
  double min_value = 1.0;
  double max_value = 1.0;

  bool operator==(const ParameterSpec&) const = default;
};

/// Ordered list of parameter specs. The discrete lattice is the set of
/// integer points of the box spanned by the per-spec [min, max] ranges.
class ParameterSpace {
 public:
  ParameterSpace() = default;
  explicit ParameterSpace(std::vector<ParameterSpec> specs);

  const std::vector<ParameterSpec>& specs() const { return specs_; }
  const ParameterSpec& spec(size_t i) const { return specs_[i]; }
  size_t dimension() const { return specs_.size(); }

  /// Index of a spec by name, or -1.
  int index_of(const std::string& name) const;

  /// Bounds sanity: min <= max, min >= 1, both integral. Throws on violation.
  void validate() const;

  bool contains(const DesignPoint& y) const;
  bool is_integral(const DesignPoint& y) const;

  DesignPoint lower() const;
  DesignPoint upper() const;
  DesignPoint midpoint() const;

  bool operator==(const ParameterSpace&) const = default;

 private:
  std::vector<ParameterSpec> specs_;
};

}  // namespace ergosim

#endif  // ERGOSIM_PARAMS_HPP

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

#ifndef ERGOSIM_RANDOM_HPP
#define ERGOSIM_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace ergosim {

/// Deterministic per-parameter random stream (SplitMix64).
///
/// Each embedded parameter owns one stream, derived from the run seed and a
/// stable parameter identifier. Identical (seed, parameter_id) pairs yield
/// bit-identical sequences; distinct parameter ids give independent
/// substreams, so adding a parameter does not perturb the draws seen by any
/// other parameter.
class ParamStream {
 public:
  ParamStream() = default;

  ParamStream(uint64_t seed, uint64_t parameter_id)
      : state_(mix(seed ^ mix(parameter_id ^ 0x6a09e667f3bcc909ULL))) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform draw in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// FNV-1a hash of a stable textual id, for deriving parameter ids.
  static uint64_t hash_id(std::string_view name) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t state_ = 0;
};

/// Integer-valued sample: ceil(x) with probability p, floor(x) otherwise.
/// Consumes exactly one draw from the stream. For integral x the result is x
/// regardless of the draw.
inline int64_t gamma_sample(double p, double x, ParamStream& stream) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("gamma_sample: p outside [0,1]");
  const double u = stream.next_unit();
  const double lo = std::floor(x);
  const double hi = std::ceil(x);
  return static_cast<int64_t>(u < p ? hi : lo);
}

/// Per-cycle sample of a real-valued parameter: gamma with p = frac(value),
/// so the long-run mean of the samples equals value.
inline int64_t effective_value(double value, ParamStream& stream) {
  return gamma_sample(value - std::floor(value), value, stream);
}

}  // namespace ergosim

#endif  // ERGOSIM_RANDOM_HPP

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

#ifndef ERGOSIM_CHARACTERIZE_HPP
#define ERGOSIM_CHARACTERIZE_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "ergosim/objective.hpp"
#include "ergosim/params.hpp"
#include "ergosim/random.hpp"

namespace ergosim {

struct ErrorEstimate {
  double mean = 0.0;
  double std_dev = 0.0;
  double rel_std_dev = 0.0;  // std_dev / mean
};

/// Sample statistics of the objective at y over n_seeds independent
/// evaluations. At an all-integer point the spread is exactly zero.
ErrorEstimate estimate_error(const DesignPoint& y, int n_seeds, const ObjectiveSpec& spec);

struct LinePoint {
  double t = 0.0;
  DesignPoint y;
  double mean = 0.0;
  double std_dev = 0.0;
  double rel_stderr = 0.0;  // (std_dev / sqrt(n)) / mean
  int n_seeds = 0;
};

struct LineScan {
  DesignPoint a;
  DesignPoint b;
  std::vector<LinePoint> points;
};

/// Uniformly random segment inside the box, endpoints distinct.
std::pair<DesignPoint, DesignPoint> random_line(const ParameterSpace& space,
                                                ParamStream& rng);

/// Evaluates the objective at n_points uniformly spaced points of the segment
/// [a, b], seeds_per_point independent evaluations each.
LineScan scan_line(const DesignPoint& a, const DesignPoint& b, int n_points,
                   int seeds_per_point, const ObjectiveSpec& spec);

/// CSV columns: line_id, point_index, t, one column per parameter, mean,
/// std_dev, rel_stderr, n_seeds.
void write_scan_csv(std::ostream& os, int line_id, const LineScan& scan,
                    const ParameterSpace& space);

}  // namespace ergosim

#endif  // ERGOSIM_CHARACTERIZE_HPP

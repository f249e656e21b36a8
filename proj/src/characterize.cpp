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

#include "ergosim/characterize.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ergosim {
namespace {

void mean_and_std(const std::vector<double>& xs, double& mean, double& std_dev) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  std_dev = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
}

}  // namespace

ErrorEstimate estimate_error(const DesignPoint& y, int n_seeds, const ObjectiveSpec& spec) {
  if (n_seeds < 2) throw std::invalid_argument("estimate_error: n_seeds < 2");
  std::vector<double> obs;
  obs.reserve(static_cast<size_t>(n_seeds));
  for (int i = 0; i < n_seeds; ++i)
    obs.push_back(evaluate(y, spec, static_cast<uint64_t>(i)).objective);
  ErrorEstimate est;
  mean_and_std(obs, est.mean, est.std_dev);
  est.rel_std_dev = est.mean != 0.0 ? est.std_dev / est.mean : 0.0;
  return est;
}

std::pair<DesignPoint, DesignPoint> random_line(const ParameterSpace& space,
                                                ParamStream& rng) {
  const size_t n = space.dimension();
  DesignPoint a(n), b(n);
  do {
    for (size_t i = 0; i < n; ++i) {
      const auto& s = space.spec(i);
      a[i] = s.min_value + rng.next_unit() * (s.max_value - s.min_value);
      b[i] = s.min_value + rng.next_unit() * (s.max_value - s.min_value);
    }
  } while (a == b);
  return {a, b};
}

LineScan scan_line(const DesignPoint& a, const DesignPoint& b, int n_points,
                   int seeds_per_point, const ObjectiveSpec& spec) {
  if (n_points < 2) throw std::invalid_argument("scan_line: need at least 2 points");
  if (seeds_per_point < 1) throw std::invalid_argument("scan_line: seeds_per_point < 1");
  if (a == b) throw std::invalid_argument("scan_line: degenerate line (A == B)");
  if (!spec.space().contains(a) || !spec.space().contains(b))
    throw std::invalid_argument("scan_line: endpoint outside the parameter box");

  LineScan scan;
  scan.a = a;
  scan.b = b;
  scan.points.reserve(static_cast<size_t>(n_points));

  for (int k = 0; k < n_points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n_points - 1);
    DesignPoint y(a.size());
    for (size_t i = 0; i < a.size(); ++i) y[i] = a[i] + t * (b[i] - a[i]);

    std::vector<double> obs;
    obs.reserve(static_cast<size_t>(seeds_per_point));
    for (int s = 0; s < seeds_per_point; ++s) {
      const uint64_t idx = static_cast<uint64_t>(k) * 1000 + static_cast<uint64_t>(s);
      obs.push_back(evaluate(y, spec, idx).objective);
    }

    LinePoint pt;
    pt.t = t;
    pt.y = std::move(y);
    pt.n_seeds = seeds_per_point;
    mean_and_std(obs, pt.mean, pt.std_dev);
    const double stderr_ = pt.std_dev / std::sqrt(static_cast<double>(seeds_per_point));
    pt.rel_stderr = pt.mean != 0.0 ? stderr_ / pt.mean : 0.0;
    scan.points.push_back(std::move(pt));
  }
  return scan;
}

void write_scan_csv(std::ostream& os, int line_id, const LineScan& scan,
                    const ParameterSpace& space) {
  os << "line_id,point_index,t";
  for (const auto& s : space.specs()) os << "," << s.name;
  os << ",mean,std_dev,rel_stderr,n_seeds\n";
  os.precision(12);
  for (size_t k = 0; k < scan.points.size(); ++k) {
    const auto& pt = scan.points[k];
    os << line_id << "," << k << "," << pt.t;
    for (double v : pt.y) os << "," << v;
    os << "," << pt.mean << "," << pt.std_dev << "," << pt.rel_stderr << ","
       << pt.n_seeds << "\n";
  }
}

}  // namespace ergosim

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

// End-to-end acceptance gate. Each numbered check prints exactly one
// PASS/FAIL line; the process exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ergosim/objective.hpp"
#include "ergosim/optimize.hpp"
#include "ergosim/random.hpp"
#include "ergosim/sim.hpp"
#include "ergosim/topology.hpp"
#include "ergosim/workload.hpp"

using namespace ergosim;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail = "") {
  std::printf("%s %d %s%s%s\n", ok ? "PASS" : "FAIL", id, name,
              detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// 1. Sampler moments: mean of 1e5 draws of gamma(0.3, 10.3) within +-0.01;
//    integral targets have zero variance; runs in under a second.
void check_gamma_moments() {
  const auto t0 = Clock::now();
  ParamStream s(42, 1);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(gamma_sample(0.3, 10.3, s));
  const double mean = sum / n;

  bool degenerate = true;
  for (int i = 0; i < 1000; ++i)
    if (gamma_sample(0.3, 7.0, s) != 7) degenerate = false;

  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream d;
  d << "mean=" << mean << " t=" << elapsed << "s";
  report(1, "sampler moments", std::abs(mean - 10.3) < 0.01 && degenerate && elapsed < 1.0,
         d.str());
}

// 2. Lattice exactness: 50 random all-integer points on the 31-parameter
//    study topology give bit-identical execution times across seeds.
void check_lattice_exactness() {
  auto space = numa_parameter_space();
  auto topo = build_numa_system(2, 4, space);
  auto w = memory_test_workload(8, 500, {0.5, 0.2, 0.15, 0.1, 0.05}, 3, 8);
  ParamStream rng(7, ParamStream::hash_id("lattice"));

  bool ok = true;
  for (int p = 0; p < 50 && ok; ++p) {
    DesignPoint y;
    for (const auto& s : space.specs()) {
      const int64_t span = static_cast<int64_t>(s.max_value - s.min_value);
      y.push_back(s.min_value +
                  static_cast<double>(static_cast<int64_t>(rng.next_u64() % (span + 1))));
    }
    const auto a = simulate(topo, y, w, 1000 + static_cast<uint64_t>(p));
    const auto b = simulate(topo, y, w, 2000 + static_cast<uint64_t>(p));
    ok = a.execution_time == b.execution_time;
  }
  report(2, "lattice exactness (50 points, 2 seeds)", ok);
}

// 3. Analytic interpolation oracle: serialized chain, K=1000 jobs, D swept
//    over {2.0, 2.25, 2.5, 2.75, 3.0}. Execution time is K*D + 2K + 1 in
//    expectation; 20-seed means must sit within 4 sigma of the binomial
//    noise model, exactly at the integer endpoints.
void check_interpolation_oracle() {
  ParameterSpace space({{"D(s0)", ParamKind::Delay, 1, 8}});
  auto topo = build_chain(1, space);
  const int k = 1000;
  auto w = memory_test_workload(1, k, {1, 0, 0, 0, 0}, 7, 1);

  bool ok = true;
  std::ostringstream detail;
  for (double d : {2.0, 2.25, 2.5, 2.75, 3.0}) {
    const int n_seeds = 20;
    double sum = 0.0;
    for (int s = 0; s < n_seeds; ++s)
      sum += static_cast<double>(
          simulate(topo, {d}, w, 300 + static_cast<uint64_t>(s)).execution_time);
    const double mean = sum / n_seeds;
    const double expect = k * d + 2 * k + 1;
    const double p = d - std::floor(d);
    const double tol =
        p == 0.0 ? 1e-12 : 4.0 * std::sqrt(k * p * (1.0 - p) / n_seeds);
    if (std::abs(mean - expect) > tol) {
      ok = false;
      detail << "D=" << d << " mean=" << mean << " expect=" << expect << " tol=" << tol;
    }
  }
  report(3, "affine interpolation oracle (serialized chain)", ok, detail.str());
}

// 4. Statistical error: five random fractional points on a >=1e6-cycle
//    workload; relative std dev over 10 seeds below 1%.
void check_statistical_error() {
  auto space = numa_parameter_space();
  auto topo = build_numa_system(2, 4, space);
  auto w = memory_test_workload(8, 48000, {0.5, 0.2, 0.15, 0.1, 0.05}, 3, 8);

  // The workload must actually exercise >= 1e6 cycles at the midpoint.
  const auto mid = simulate(topo, space.midpoint(), w, 1);
  bool ok = mid.execution_time >= 1000000;
  std::ostringstream detail;
  detail << "midpoint_cycles=" << mid.execution_time;

  ParamStream rng(11, ParamStream::hash_id("fractional_points"));
  for (int p = 0; p < 5 && ok; ++p) {
    DesignPoint y;
    for (const auto& s : space.specs())
      y.push_back(s.min_value + rng.next_unit() * (s.max_value - s.min_value));
    const int n = 10;
    double sum = 0.0, ss = 0.0;
    for (int s = 0; s < n; ++s) {
      const double v = static_cast<double>(
          simulate(topo, y, w, 500 + static_cast<uint64_t>(10 * p + s)).execution_time);
      sum += v;
      ss += v * v;
    }
    const double mean = sum / n;
    const double sd = std::sqrt((ss - n * mean * mean) / (n - 1));
    const double rel = sd / mean;
    detail << " p" << p << "=" << 100 * rel << "%";
    ok = rel < 0.01;
  }
  report(4, "fractional-point spread < 1% (10 seeds)", ok, detail.str());
}

// 5. Optimizer on the box-constrained sphere at n = 2, 5, 12: within 1e-3 of
//    the optimum in at most 300 evaluations, exact budget accounting and a
//    monotone best-seen trace.
void check_optimizer_analytic() {
  bool ok = true;
  std::ostringstream detail;
  for (size_t n : {2ul, 5ul, 12ul}) {
    Box box;
    box.lo.assign(n, -5.0);
    box.hi.assign(n, 5.0);
    int calls = 0;
    ObjectiveFn f = [&calls](const DesignPoint& x) {
      ++calls;
      double s = 0.0;
      for (double v : x) s += (v - 1.2) * (v - 1.2);
      return s;
    };
    OptimizerConfig cfg;
    cfg.final_radius = 1e-4;
    const auto r = local_minimize(f, box, DesignPoint(n, 3.7), cfg);

    bool monotone = true;
    double best = r.history.front().objective;
    for (const auto& h : r.history) {
      best = std::min(best, h.objective);
      if (best > r.best_objective - 1e-15 && h.index == r.history.back().index)
        monotone = best == r.best_objective;
    }
    detail << "n=" << n << ":f=" << r.best_objective << ",evals=" << calls << " ";
    ok = ok && r.best_objective < 1e-3 && calls <= 300 &&
         static_cast<int>(r.history.size()) == calls && monotone;
  }
  report(5, "sphere optimum within 1e-3 in <=300 evals", ok, detail.str());
}

namespace c67 {

// Shared fixture for checks 6 and 7: the 4-parameter chain instance whose
// 256-point lattice is exhaustively evaluable.
struct SmallInstance {
  ParameterSpace space{{{"C_outQ(s0)", ParamKind::Capacity, 1, 4},
                        {"N(s0)", ParamKind::Throughput, 1, 4},
                        {"D(s0)", ParamKind::Delay, 1, 4},
                        {"L(w0)", ParamKind::Latency, 1, 4}}};
  Topology topo = build_chain(1, space);
  ObjectiveSpec spec;

  SmallInstance() {
    spec.topology = &topo;
    spec.suite = {memory_test_workload(1, 400, {1, 0, 0, 0, 0}, 7, 8)};
  }

  // Exhaustive deterministic optimum; ties broken toward lower cost.
  std::pair<DesignPoint, double> brute_force(double alpha) {
    spec.alpha = alpha;
    DesignPoint bx;
    double bf = std::numeric_limits<double>::infinity();
    double bc = std::numeric_limits<double>::infinity();
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b)
        for (int c = 1; c <= 4; ++c)
          for (int d = 1; d <= 4; ++d) {
            const DesignPoint y{double(a), double(b), double(c), double(d)};
            const auto ev = evaluate(y, spec, 0);
            if (ev.objective < bf || (ev.objective == bf && ev.cost < bc)) {
              bf = ev.objective;
              bc = ev.cost;
              bx = y;
            }
          }
    return {bx, bf};
  }
};

}  // namespace c67

// 6. End-to-end quality: on the 256-point instance, >= 6 of 8 rounded
//    100-eval descents land within 10% of the exhaustive optimum, and SA
//    with 1000 evals attains the optimum itself in >= 9 of 10 seeds.
void check_end_to_end_quality() {
  c67::SmallInstance inst;
  const double alpha = 10.0;
  const auto [bx, bf] = inst.brute_force(alpha);

  CampaignConfig cc;
  cc.alphas = {alpha};
  cc.n_starts = 8;
  cc.optimizer.max_evals = 100;
  cc.master_seed = 17;
  inst.spec.alpha = alpha;
  const auto camp = multi_start(inst.spec, cc);
  int within = 0;
  for (const auto& r : camp.runs)
    if (!r.failed && r.rounded_objective <= bf * 1.10) ++within;

  Box box = Box::from_space(inst.space);
  ObjectiveFn f = [&inst](const DesignPoint& y) {
    return evaluate(y, inst.spec, 0).objective;
  };
  int sa_hits = 0;
  for (uint64_t s = 1; s <= 10; ++s) {
    const auto r = simulated_annealing(f, box, SAConfig{}, s);
    if (std::abs(r.best_objective - bf) < 1e-9) ++sa_hits;
  }

  std::ostringstream detail;
  detail << "brute=" << bf << " within10=" << within << "/8 sa=" << sa_hits << "/10";
  report(6, "multi-start and SA vs exhaustive optimum", within >= 6 && sa_hits >= 9,
         detail.str());
}

// 7. Improvement and trade-off: every run improves on its start, and across
//    the alpha sweep the brute-force optima trade monotonically (cost
//    nonincreasing, execution time nondecreasing).
void check_improvement_and_tradeoff() {
  c67::SmallInstance inst;

  CampaignConfig cc;
  cc.alphas = {0.0, 1e4, 1e5, 1e6};
  cc.n_starts = 4;
  cc.optimizer.max_evals = 60;
  cc.master_seed = 23;
  const auto camp = multi_start(inst.spec, cc);
  bool improves = true;
  for (const auto& r : camp.runs)
    if (r.failed || r.best_objective > r.start_objective) improves = false;

  bool monotone = true;
  double prev_cost = std::numeric_limits<double>::infinity();
  double prev_time = 0.0;
  std::ostringstream detail;
  for (double alpha : cc.alphas) {
    const auto [bx, bf] = inst.brute_force(alpha);
    const auto ev = evaluate(bx, inst.spec, 0);
    detail << "a=" << alpha << ":(c=" << ev.cost << ",t=" << ev.execution_time << ") ";
    if (ev.cost > prev_cost + 1e-9 || ev.execution_time + 1e-9 < prev_time)
      monotone = false;
    prev_cost = ev.cost;
    prev_time = ev.execution_time;
  }
  report(7, "improvement ratios and trade-off ordering", improves && monotone,
         detail.str());
}

// 8. Reproducibility: the CLI rerun with identical arguments produces
//    byte-identical artifacts.
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_cli_reproducibility(const std::string& cli, const std::string& config) {
  const std::string base = "ergosim_accept8";
  const std::string cmd_tail = " --config " + config + " --seed 33 >/dev/null 2>&1";
  bool ok = true;
  std::ostringstream detail;

  const std::string scan_a = "/tmp/" + base + "_scan_a";
  const std::string scan_b = "/tmp/" + base + "_scan_b";
  const std::string opt_a = "/tmp/" + base + "_opt_a";
  const std::string opt_b = "/tmp/" + base + "_opt_b";
  ok = ok &&
       std::system((cli + " scan --random 2 --points 5 --seeds-per-point 3 --out " +
                    scan_a + cmd_tail).c_str()) == 0 &&
       std::system((cli + " scan --random 2 --points 5 --seeds-per-point 3 --out " +
                    scan_b + cmd_tail).c_str()) == 0 &&
       std::system((cli + " optimize --alphas 0 10 --starts 2 --budget 30 --out " +
                    opt_a + cmd_tail).c_str()) == 0 &&
       std::system((cli + " optimize --alphas 0 10 --starts 2 --budget 30 --out " +
                    opt_b + cmd_tail).c_str()) == 0;
  if (!ok) detail << "cli invocation failed";

  if (ok) {
    for (const char* f : {"line_000.csv", "line_001.csv"}) {
      const auto a = slurp(scan_a + "/" + f), b = slurp(scan_b + "/" + f);
      if (a.empty() || a != b) {
        ok = false;
        detail << "scan mismatch " << f;
      }
    }
    for (const char* f : {"campaign.json", "convergence.csv", "scatter.csv",
                          "parameters.csv"}) {
      const auto a = slurp(opt_a + "/" + f), b = slurp(opt_b + "/" + f);
      if (a.empty() || a != b) {
        ok = false;
        detail << "optimize mismatch " << f;
      }
    }
  }
  report(8, "CLI rerun is byte-identical", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "./build/tools/ergosim";
  const std::string config = argc > 2 ? argv[2] : "./configs/smoke.json";

  check_gamma_moments();
  check_lattice_exactness();
  check_interpolation_oracle();
  check_statistical_error();
  check_optimizer_analytic();
  check_end_to_end_quality();
  check_improvement_and_tradeoff();
  check_cli_reproducibility(cli, config);

  std::printf("%s: %d/8 criteria passed\n", failures == 0 ? "OK" : "FAILED",
              8 - failures);
  return failures == 0 ? 0 : 1;
}

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

#include "ergosim/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ergosim/random.hpp"

namespace ergosim {

Box Box::from_space(const ParameterSpace& space) {
  Box b;
  b.lo.reserve(space.dimension());
  b.hi.reserve(space.dimension());
  for (const auto& s : space.specs()) {
    b.lo.push_back(s.min_value);
    b.hi.push_back(s.max_value);
  }
  return b;
}

bool Box::contains(const std::vector<double>& x) const {
  if (x.size() != lo.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

std::vector<double> Box::clip(std::vector<double> x) const {
  for (size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
  return x;
}

double Box::min_width() const {
  double w = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < lo.size(); ++i) w = std::min(w, hi[i] - lo[i]);
  return w;
}

namespace {

struct BudgetExhausted {};

/// Counts evaluations, keeps history and the best-seen point, and refuses to
/// go past the budget.
class BudgetedObjective {
 public:
  BudgetedObjective(const ObjectiveFn& f, int max_evals, RunResult& out)
      : f_(f), max_evals_(max_evals), out_(out) {}

  double operator()(const DesignPoint& x) {
    if (count_ >= max_evals_) throw BudgetExhausted{};
    const double v = f_(x);
    out_.history.push_back({count_, v});
    if (out_.history.size() == 1 || v < out_.best_objective) {
      out_.best_objective = v;
      out_.best_y = x;
    }
    ++count_;
    return v;
  }

  int count() const { return count_; }

 private:
  const ObjectiveFn& f_;
  int max_evals_;
  RunResult& out_;
  int count_ = 0;
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Solves A g = b in place by Gaussian elimination with partial pivoting.
/// Returns false if a pivot falls below the threshold (degenerate simplex).
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& g) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = col + 1; r < n; ++r) {
      const double m = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  g.assign(n, 0.0);
  for (size_t i = n; i-- > 0;) {
    double s = b[i];
    for (size_t c = i + 1; c < n; ++c) s -= a[i][c] * g[c];
    g[i] = s / a[i][i];
  }
  return true;
}

}  // namespace

RunResult local_minimize(const ObjectiveFn& f, const Box& box, const DesignPoint& x0,
                         const OptimizerConfig& config) {
  const size_t n = box.dimension();
  if (x0.size() != n) throw std::invalid_argument("local_minimize: dimension mismatch");
  if (!box.contains(x0)) throw std::invalid_argument("local_minimize: start outside box");
  if (config.max_evals < static_cast<int>(n) + 2)
    throw std::invalid_argument("local_minimize: budget below n+2");
  if (config.final_radius <= 0.0 ||
      config.final_radius >= config.initial_radius_frac * box.min_width())
    throw std::invalid_argument("local_minimize: need 0 < final < initial trust radius");

  RunResult result;
  result.start = x0;
  BudgetedObjective eval(f, config.max_evals, result);

  double rho = config.initial_radius_frac * box.min_width();
  const double rho_end = config.final_radius;

  // Simplex vertices and their objective values; vertex 0 starts at x0.
  std::vector<DesignPoint> verts;
  std::vector<double> fvals;

  // Offsets a vertex from the anchor along +-e_i, flipping direction at a
  // box face so the vertex actually moves.
  auto offset_vertex = [&](const DesignPoint& anchor, size_t i, double r) {
    DesignPoint v = anchor;
    v[i] = anchor[i] + r <= box.hi[i] ? anchor[i] + r : anchor[i] - r;
    return box.clip(std::move(v));
  };

  // Anchor is taken by value: callers pass verts[best], which the clear below
  // would otherwise invalidate.
  auto build_simplex = [&](DesignPoint anchor, bool anchor_evaluated,
                           double anchor_f) {
    verts.clear();
    fvals.clear();
    verts.push_back(anchor);
    fvals.push_back(anchor_evaluated ? anchor_f : eval(anchor));
    for (size_t i = 0; i < n; ++i) {
      verts.push_back(offset_vertex(anchor, i, rho));
      fvals.push_back(eval(verts.back()));
    }
  };

  try {
    build_simplex(x0, false, 0.0);
    result.start_objective = result.history.front().objective;

    int stall_rebuilds = 0;
    while (rho > rho_end) {
      size_t best = 0, worst = 0;
      for (size_t i = 1; i <= n; ++i) {
        if (fvals[i] < fvals[best]) best = i;
        if (fvals[i] > fvals[worst]) worst = i;
      }

      // Linear model: rows are simplex edges from the best vertex.
      std::vector<std::vector<double>> rows;
      std::vector<double> rhs;
      for (size_t i = 0; i <= n; ++i) {
        if (i == best) continue;
        std::vector<double> row(n);
        for (size_t d = 0; d < n; ++d) row[d] = verts[i][d] - verts[best][d];
        rows.push_back(std::move(row));
        rhs.push_back(fvals[i] - fvals[best]);
      }
      std::vector<double> grad;
      if (!solve_linear(rows, rhs, grad) || norm2(grad) == 0.0) {
        // Degenerate geometry: rebuild around the best vertex.
        if (++stall_rebuilds > 1) rho *= 0.5;
        if (rho <= rho_end) break;
        build_simplex(verts[best], true, fvals[best]);
        continue;
      }
      stall_rebuilds = 0;

      const double gn = norm2(grad);
      DesignPoint trial = verts[best];
      for (size_t d = 0; d < n; ++d) trial[d] -= rho * grad[d] / gn;
      trial = box.clip(std::move(trial));

      double step = 0.0;
      for (size_t d = 0; d < n; ++d) step += (trial[d] - verts[best][d]) *
                                             (trial[d] - verts[best][d]);
      if (std::sqrt(step) < 1e-3 * rho) {
        // Model pushes against the box; shrink and re-anchor.
        rho *= 0.5;
        if (rho <= rho_end) break;
        build_simplex(verts[best], true, fvals[best]);
        continue;
      }

      double ft = eval(trial);
      if (ft < fvals[best]) {
        // Ride the descent direction while it keeps paying; each repeat costs
        // one evaluation and follows curved valleys much faster than a fresh
        // model fit would.
        while (true) {
          DesignPoint further = trial;
          for (size_t d = 0; d < n; ++d) further[d] -= rho * grad[d] / gn;
          further = box.clip(std::move(further));
          if (further == trial) break;
          const double ff = eval(further);
          if (ff >= ft) break;
          trial = std::move(further);
          ft = ff;
        }
        verts[worst] = std::move(trial);
        fvals[worst] = ft;
      } else {
        // No descent at this radius: tighten the trust region around the
        // incumbent and refresh the simplex at the new scale.
        rho *= 0.5;
        if (rho <= rho_end) break;
        build_simplex(verts[best], true, fvals[best]);
      }
    }
  } catch (const BudgetExhausted&) {
    result.budget_flag = result.history.size() < n + 1;
  }

  if (result.history.empty())
    throw std::invalid_argument("local_minimize: no evaluations performed");
  return result;
}

std::pair<DesignPoint, double> round_to_discrete(const DesignPoint& y,
                                                 const ObjectiveFn& f_discrete,
                                                 const Box& box, uint64_t seed,
                                                 int max_exhaustive) {
  if (!box.contains(y)) throw std::invalid_argument("round_to_discrete: point outside box");

  std::vector<size_t> frac;
  for (size_t i = 0; i < y.size(); ++i)
    if (y[i] != std::floor(y[i])) frac.push_back(i);

  DesignPoint base(y.size());
  for (size_t i = 0; i < y.size(); ++i) base[i] = std::floor(y[i]);

  auto corner = [&](uint64_t mask) {
    DesignPoint x = base;
    for (size_t b = 0; b < frac.size(); ++b)
      if (mask & (1ULL << b)) x[frac[b]] = std::ceil(y[frac[b]]);
    return box.clip(std::move(x));
  };

  DesignPoint best_x;
  double best_f = std::numeric_limits<double>::infinity();
  auto consider = [&](DesignPoint x) {
    const double v = f_discrete(x);
    if (v < best_f) {
      best_f = v;
      best_x = std::move(x);
    }
  };

  if (frac.empty()) {
    consider(y);
  } else if (static_cast<int>(frac.size()) <= max_exhaustive) {
    for (uint64_t mask = 0; mask < (1ULL << frac.size()); ++mask) consider(corner(mask));
  } else {
    DesignPoint nearest(y.size());
    for (size_t i = 0; i < y.size(); ++i) nearest[i] = std::round(y[i]);
    consider(box.clip(std::move(nearest)));
    ParamStream rng(seed, ParamStream::hash_id("round_to_discrete"));
    for (int s = 0; s < 24; ++s) {
      uint64_t mask = 0;
      for (size_t b = 0; b < frac.size(); ++b)
        if (rng.next_u64() & 1) mask |= 1ULL << b;
      consider(corner(mask));
    }
  }
  return {best_x, best_f};
}

RunResult simulated_annealing(const ObjectiveFn& f_discrete, const Box& box,
                              const SAConfig& config, uint64_t seed) {
  if (config.max_evals < 1) throw std::invalid_argument("simulated_annealing: empty budget");
  const size_t n = box.dimension();
  ParamStream rng(seed, ParamStream::hash_id("sa"));

  RunResult result;
  BudgetedObjective eval(f_discrete, config.max_evals, result);

  auto random_lattice_point = [&] {
    DesignPoint x(n);
    for (size_t i = 0; i < n; ++i) {
      const int64_t span = static_cast<int64_t>(box.hi[i] - box.lo[i]);
      x[i] = box.lo[i] + static_cast<double>(
                             static_cast<int64_t>(rng.next_u64() % (span + 1)));
    }
    return x;
  };

  try {
    DesignPoint x = random_lattice_point();
    double fx = eval(x);
    result.start = x;
    result.start_objective = fx;

    double temp = config.initial_temp;
    if (temp < 0.0) {
      // Estimate the objective scale from a handful of random probes.
      double lo = fx, hi = fx;
      for (int i = 0; i < 8; ++i) {
        const double v = eval(random_lattice_point());
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      temp = std::max(hi - lo, 1e-9);
    }
    const double reheat_temp = temp;

    int since_improvement = 0;
    while (true) {
      DesignPoint cand = x;
      const size_t i = static_cast<size_t>(rng.next_u64() % n);
      const int64_t span = static_cast<int64_t>(box.hi[i] - box.lo[i]);
      if (span > 0 && rng.next_unit() < config.jump_prob) {
        cand[i] = box.lo[i] +
                  static_cast<double>(static_cast<int64_t>(rng.next_u64() % (span + 1)));
      } else {
        const double step = (rng.next_u64() & 1) ? 1.0 : -1.0;
        cand[i] = cand[i] + step;
        if (cand[i] < box.lo[i] || cand[i] > box.hi[i]) cand[i] = cand[i] - 2 * step;
        cand[i] = std::clamp(cand[i], box.lo[i], box.hi[i]);
      }

      const double before_best = result.best_objective;
      const double fc = eval(cand);
      const double delta = fc - fx;
      const bool accept =
          delta <= 0.0 ||
          (temp > 0.0 && rng.next_unit() < std::exp(-delta / temp));
      if (accept) {
        x = std::move(cand);
        fx = fc;
      }
      temp *= config.cooling;

      if (result.best_objective < before_best) {
        since_improvement = 0;
      } else if (++since_improvement >= config.restart_interval) {
        // Re-anneal: jump back to the incumbent best (or a fresh random
        // point) with a reheated temperature.
        if (rng.next_u64() & 1) {
          x = result.best_y;
          fx = result.best_objective;
        } else {
          x = random_lattice_point();
          fx = eval(x);
        }
        temp = reheat_temp * 0.5;
        since_improvement = 0;
      }
    }
  } catch (const BudgetExhausted&) {
    // normal termination
  }
  return result;
}

namespace {

AlphaSummary summarize(double alpha, const std::vector<const RunResult*>& runs) {
  AlphaSummary s;
  s.alpha = alpha;
  double sum = 0.0;
  s.best = std::numeric_limits<double>::infinity();
  s.worst = -std::numeric_limits<double>::infinity();
  int count = 0;
  for (const auto* r : runs) {
    if (r->failed) continue;
    s.best = std::min(s.best, r->best_objective);
    s.worst = std::max(s.worst, r->best_objective);
    sum += r->best_objective;
    ++count;
  }
  if (count == 0) return s;
  s.mean = sum / count;
  double ss = 0.0;
  for (const auto* r : runs)
    if (!r->failed) ss += (r->best_objective - s.mean) * (r->best_objective - s.mean);
  s.rel_std_dev =
      count > 1 && s.mean != 0.0 ? std::sqrt(ss / (count - 1)) / s.mean : 0.0;
  return s;
}

}  // namespace

CampaignResult multi_start(const ObjectiveSpec& base, const CampaignConfig& config) {
  if (config.n_starts < 1) throw std::invalid_argument("multi_start: n_starts < 1");
  const Box box = Box::from_space(base.space());
  const size_t n = box.dimension();

  CampaignResult campaign;
  campaign.runs.resize(config.alphas.size() * static_cast<size_t>(config.n_starts));

  auto run_one = [&](size_t ai, int r) {
    RunResult& slot = campaign.runs[ai * static_cast<size_t>(config.n_starts) +
                                    static_cast<size_t>(r)];
    slot.run_id = static_cast<int>(ai) * config.n_starts + r;
    slot.alpha = config.alphas[ai];
    try {
      ObjectiveSpec spec = base;
      spec.alpha = config.alphas[ai];
      ParamStream seeder(config.master_seed,
                         ParamStream::hash_id("run") + (ai << 16) +
                             static_cast<uint64_t>(r));
      spec.master_seed = seeder.next_u64();

      DesignPoint x0(n);
      for (size_t i = 0; i < n; ++i)
        x0[i] = box.lo[i] + (0.01 + 0.98 * seeder.next_unit()) * (box.hi[i] - box.lo[i]);

      uint64_t eval_index = 0;
      ObjectiveFn f = [&spec, &eval_index](const DesignPoint& y) {
        return evaluate(y, spec, eval_index++).objective;
      };

      RunResult local = local_minimize(f, box, x0, config.optimizer);

      // Deterministic discrete objective for the final rounding step.
      ObjectiveFn f_int = [&spec](const DesignPoint& y) {
        return evaluate(y, spec, 0).objective;
      };
      auto [xstar, fstar] = round_to_discrete(local.best_y, f_int, box, spec.master_seed);
      local.rounded_x = xstar;
      local.rounded_objective = fstar;
      const Evaluation ev = evaluate(xstar, spec, 0);
      local.rounded_cost = ev.cost;
      local.rounded_execution_time = ev.execution_time;

      local.run_id = slot.run_id;
      local.alpha = slot.alpha;
      slot = std::move(local);
    } catch (const std::exception& e) {
      slot.failed = true;
      slot.error = e.what();
    }
  };

  const size_t total = campaign.runs.size();
  const int workers = std::max(1, config.parallel);
  if (workers == 1) {
    for (size_t ai = 0; ai < config.alphas.size(); ++ai)
      for (int r = 0; r < config.n_starts; ++r) run_one(ai, r);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1))
          run_one(i / static_cast<size_t>(config.n_starts),
                  static_cast<int>(i % static_cast<size_t>(config.n_starts)));
      });
    }
    for (auto& t : pool) t.join();
  }

  for (size_t ai = 0; ai < config.alphas.size(); ++ai) {
    std::vector<const RunResult*> group;
    for (int r = 0; r < config.n_starts; ++r) {
      const RunResult& rr =
          campaign.runs[ai * static_cast<size_t>(config.n_starts) + static_cast<size_t>(r)];
      group.push_back(&rr);
      campaign.any_failed |= rr.failed;
    }
    campaign.summaries.push_back(summarize(config.alphas[ai], group));
  }
  return campaign;
}

}  // namespace ergosim

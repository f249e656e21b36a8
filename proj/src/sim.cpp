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

#include "ergosim/sim.hpp"

#include <cassert>
#include <cmath>
#include <deque>
#include <ostream>

#include "ergosim/random.hpp"

namespace ergosim {
namespace {

/// Resolved component parameter: constant when the target value is integral,
/// otherwise one randomized draw per sample from the parameter's own stream.
struct SampledParam {
  double value = 1.0;
  bool fractional = false;
  ParamStream stream;

  void init(const ParamBinding& b, const DesignPoint& y, uint64_t seed,
            const std::string& component_id, const char* role) {
    value = b.is_bound() ? y[static_cast<size_t>(b.spec)] : b.fixed;
    fractional = value != std::floor(value);
    if (fractional)
      stream = ParamStream(seed, ParamStream::hash_id(component_id + "/" + role));
  }

  int64_t sample() {
    if (!fractional) return static_cast<int64_t>(value);
    return effective_value(value, stream);
  }
};

struct RtToken {
  const Route* route = nullptr;
  uint32_t hop = 0;  // route[hop] = next consumer of this token
  uint32_t core = 0;
  uint32_t job = 0;
};

struct RtQueue {
  SampledParam capacity;
  int64_t sampled_cap = 0;
  std::deque<uint32_t> tokens;  // visible, FIFO
  int64_t reserved = 0;
  std::vector<int> in_wires;
  size_t rr = 0;

  int64_t load() const { return static_cast<int64_t>(tokens.size()) + reserved; }
};

struct ActiveJob {
  uint32_t token = 0;
  int64_t remaining = 0;
  int out_queue = -1;
};

struct RtModule {
  SampledParam throughput;
  SampledParam delay;
  int64_t sampled_n = 0;
  int in_queue = -1;
  std::vector<ActiveJob> active;
  uint64_t busy_cycles = 0;
};

struct Flight {
  uint32_t token = 0;
  int64_t remaining = 0;
};

struct RtWire {
  SampledParam latency;
  int src_queue = -1;
  int dst_queue = -1;
  std::vector<Flight> flights;
  bool accepted_this_cycle = false;
};

struct RtCore {
  int out_queue = -1;
  int in_queue = -1;
  int issue_width = 1;
  const std::vector<MemJob>* jobs = nullptr;
  uint32_t next_issue = 0;
  std::vector<uint8_t> done;
  uint32_t completed = 0;
};

class Simulation {
 public:
  Simulation(const Topology& topo, const DesignPoint& y, const Workload& workload,
             uint64_t seed, const SimOptions& opt)
      : topo_(topo), opt_(opt), seed_(seed) {
    if (!topo.space.contains(y))
      throw std::invalid_argument("simulate: design point outside the parameter box");
    if (workload.per_core.size() > topo.cores.size())
      throw std::invalid_argument("simulate: workload has more cores than the topology");

    queues_.resize(topo.queues.size());
    for (size_t i = 0; i < topo.queues.size(); ++i)
      queues_[i].capacity.init(topo.queues[i].capacity, y, seed, topo.queues[i].id, "C");

    modules_.resize(topo.modules.size());
    for (size_t i = 0; i < topo.modules.size(); ++i) {
      modules_[i].throughput.init(topo.modules[i].throughput, y, seed, topo.modules[i].id, "N");
      modules_[i].delay.init(topo.modules[i].delay, y, seed, topo.modules[i].id, "D");
      modules_[i].in_queue = topo.modules[i].in_queue;
    }

    wires_.resize(topo.wires.size());
    for (size_t i = 0; i < topo.wires.size(); ++i) {
      wires_[i].latency.init(topo.wires[i].latency, y, seed, topo.wires[i].id, "L");
      wires_[i].src_queue = topo.wires[i].src_queue;
      wires_[i].dst_queue = topo.wires[i].dst_queue;
      queues_[static_cast<size_t>(wires_[i].dst_queue)].in_wires.push_back(
          static_cast<int>(i));
    }

    cores_.resize(topo.cores.size());
    for (size_t i = 0; i < topo.cores.size(); ++i) {
      cores_[i].out_queue = topo.cores[i].out_queue;
      cores_[i].in_queue = topo.cores[i].in_queue;
      cores_[i].issue_width = topo.cores[i].issue_width;
      if (i < workload.per_core.size()) {
        cores_[i].jobs = &workload.per_core[i];
        cores_[i].done.assign(workload.per_core[i].size(), 0);
        total_jobs_ += workload.per_core[i].size();
      }
    }
  }

  SimResult run() {
    SimResult result;
    result.seed = seed_;
    if (total_jobs_ == 0) {
      result.execution_time = 1;
      result.module_busy_cycles.assign(modules_.size(), 0);
      return result;
    }

    uint64_t idle_cycles = 0;
    for (uint64_t cycle = 1;; ++cycle) {
      if (cycle > opt_.cycle_cap)
        throw SimAbort("cycle budget exceeded (" + std::to_string(opt_.cycle_cap) + ")");
      progressed_ = false;
      cycle_ = cycle;

      deliver();
      if (completed_jobs_ == total_jobs_) {
        result.execution_time = cycle;
        break;
      }
      sample_cycle_params();
      admit();
      advance();
      if (opt_.check_invariants) check_invariants();

      if (progressed_) {
        idle_cycles = 0;
      } else if (++idle_cycles > opt_.quiescence_window) {
        throw SimAbort("deadlock: no activity for " + std::to_string(idle_cycles) +
                       " cycles at cycle " + std::to_string(cycle));
      }
    }

    result.tokens_created = tokens_created_;
    result.tokens_consumed = tokens_consumed_;
    result.module_busy_cycles.reserve(modules_.size());
    for (const auto& m : modules_) result.module_busy_cycles.push_back(m.busy_cycles);
    if (tokens_created_ != tokens_consumed_)
      throw SimAbort("token conservation violated at termination");
    return result;
  }

 private:
  void trace(const std::string& component, const char* event, uint32_t token) {
    if (opt_.trace)
      *opt_.trace << cycle_ << "\t" << component << "\t" << event << "\t" << token << "\n";
  }

  void deliver() {
    // Wires first, then module job completions, then core-side consumption.
    for (size_t w = 0; w < wires_.size(); ++w) {
      auto& wire = wires_[w];
      wire.accepted_this_cycle = false;
      if (wire.flights.empty()) continue;
      size_t kept = 0;
      for (size_t i = 0; i < wire.flights.size(); ++i) {
        if (wire.flights[i].remaining == 0) {
          auto& q = queues_[static_cast<size_t>(wire.dst_queue)];
          q.reserved--;
          q.tokens.push_back(wire.flights[i].token);
          progressed_ = true;
          trace(topo_.wires[w].id, "deliver", wire.flights[i].token);
        } else {
          wire.flights[kept++] = wire.flights[i];
        }
      }
      wire.flights.resize(kept);
    }

    for (size_t m = 0; m < modules_.size(); ++m) {
      auto& mod = modules_[m];
      if (mod.active.empty()) continue;
      size_t kept = 0;
      for (size_t i = 0; i < mod.active.size(); ++i) {
        if (mod.active[i].remaining == 0) {
          auto& q = queues_[static_cast<size_t>(mod.active[i].out_queue)];
          q.reserved--;
          q.tokens.push_back(mod.active[i].token);
          progressed_ = true;
          trace(topo_.modules[m].id, "finish", mod.active[i].token);
        } else {
          mod.active[kept++] = mod.active[i];
        }
      }
      mod.active.resize(kept);
    }

    for (size_t c = 0; c < cores_.size(); ++c) {
      auto& core = cores_[c];
      auto& inq = queues_[static_cast<size_t>(core.in_queue)];
      while (!inq.tokens.empty()) {
        const uint32_t t = inq.tokens.front();
        inq.tokens.pop_front();
        assert(tokens_[t].hop == tokens_[t].route->size());
        core.done[tokens_[t].job] = 1;
        core.completed++;
        completed_jobs_++;
        tokens_consumed_++;
        progressed_ = true;
        trace(topo_.cores[c].id, "consume", t);
      }
    }
  }

  void sample_cycle_params() {
    for (auto& q : queues_) q.sampled_cap = q.capacity.sample();
    for (auto& m : modules_) m.sampled_n = m.throughput.sample();
  }

  void admit() {
    // Fixed phase order: core issue, module starts, wire acceptances.
    for (size_t c = 0; c < cores_.size(); ++c) issue(static_cast<uint32_t>(c));

    for (size_t m = 0; m < modules_.size(); ++m) {
      auto& mod = modules_[m];
      auto& inq = queues_[static_cast<size_t>(mod.in_queue)];
      while (!inq.tokens.empty() &&
             static_cast<int64_t>(mod.active.size()) < mod.sampled_n) {
        const uint32_t t = inq.tokens.front();
        RtToken& tok = tokens_[t];
        assert((*tok.route)[tok.hop].type == HopType::Module &&
               (*tok.route)[tok.hop].index == static_cast<int>(m));
        // Output slot is the source queue of the next wire on the route;
        // the job starts only once that slot is reserved.
        const Hop& next = (*tok.route)[tok.hop + 1];
        assert(next.type == HopType::Wire);
        const int out_q = wires_[static_cast<size_t>(next.index)].src_queue;
        auto& oq = queues_[static_cast<size_t>(out_q)];
        if (oq.load() >= oq.sampled_cap) break;
        inq.tokens.pop_front();
        oq.reserved++;
        tok.hop++;
        const int64_t d = mod.delay.sample();  // frozen for this job
        assert(d >= 1);
        mod.active.push_back({t, d, out_q});
        progressed_ = true;
        trace(topo_.modules[m].id, "start", t);
      }
    }

    for (size_t qi = 0; qi < queues_.size(); ++qi) {
      auto& q = queues_[qi];
      const size_t nw = q.in_wires.size();
      if (nw == 0) continue;
      // Round-robin over the incoming wires; each wire moves at most one
      // token per cycle, the queue grants slots while capacity remains.
      size_t pos = q.rr % nw;
      size_t scanned = 0;
      while (scanned < nw) {
        if (q.load() >= q.sampled_cap) break;
        const int w = q.in_wires[pos];
        if (try_wire_accept(static_cast<size_t>(w))) {
          q.rr = (pos + 1) % nw;
          pos = q.rr;
          scanned = 0;
        } else {
          pos = (pos + 1) % nw;
          scanned++;
        }
      }
    }
  }

  bool try_wire_accept(size_t w) {
    auto& wire = wires_[w];
    if (wire.accepted_this_cycle) return false;
    auto& src = queues_[static_cast<size_t>(wire.src_queue)];
    if (src.tokens.empty()) return false;
    const uint32_t t = src.tokens.front();
    RtToken& tok = tokens_[t];
    const Hop& hop = (*tok.route)[tok.hop];
    if (hop.type != HopType::Wire || hop.index != static_cast<int>(w)) return false;
    src.tokens.pop_front();
    tok.hop++;
    // The accepted token holds its destination slot until delivery.
    queues_[static_cast<size_t>(wire.dst_queue)].reserved++;
    const int64_t l = wire.latency.sample();  // frozen for this token
    assert(l >= 1);
    wire.flights.push_back({t, l});
    wire.accepted_this_cycle = true;
    progressed_ = true;
    trace(topo_.wires[w].id, "accept", t);
    return true;
  }

  void issue(uint32_t c) {
    auto& core = cores_[c];
    if (!core.jobs) return;
    auto& outq = queues_[static_cast<size_t>(core.out_queue)];
    for (int k = 0; k < core.issue_width; ++k) {
      if (core.next_issue >= core.jobs->size()) return;
      const MemJob& job = (*core.jobs)[core.next_issue];
      for (uint32_t d : job.deps)
        if (!core.done[d]) return;  // in-order issue stalls on dependencies
      if (outq.load() >= outq.sampled_cap) return;
      const Route& route = topo_.routes[c][static_cast<size_t>(
          access_class(job.kind, job.level))];
      const uint32_t t = static_cast<uint32_t>(tokens_.size());
      tokens_.push_back({&route, 0, c, core.next_issue});
      tokens_created_++;
      outq.tokens.push_back(t);
      core.next_issue++;
      progressed_ = true;
      trace(topo_.cores[c].id, "issue", t);
    }
  }

  void advance() {
    for (auto& wire : wires_)
      for (auto& f : wire.flights)
        if (f.remaining > 0) f.remaining--;
    for (auto& mod : modules_) {
      mod.busy_cycles += mod.active.size();
      for (auto& a : mod.active)
        if (a.remaining > 0) a.remaining--;
    }
  }

  void check_invariants() const {
    uint64_t live = 0;
    for (size_t i = 0; i < queues_.size(); ++i) {
      const auto& q = queues_[i];
      // Occupancy may lag a shrinking capacity sample but can never exceed
      // the ceiling of the real-valued capacity.
      const int64_t cap_ceil = static_cast<int64_t>(std::ceil(q.capacity.value));
      if (q.load() > cap_ceil)
        throw SimAbort("queue over capacity ceiling: " + topo_.queues[i].id);
      if (q.reserved < 0) throw SimAbort("negative reservation: " + topo_.queues[i].id);
      live += q.tokens.size();
    }
    for (const auto& w : wires_) live += w.flights.size();
    for (const auto& m : modules_) live += m.active.size();
    if (tokens_created_ != tokens_consumed_ + live)
      throw SimAbort("token conservation violated mid-run");
  }

  const Topology& topo_;
  SimOptions opt_;
  uint64_t seed_ = 0;
  uint64_t cycle_ = 0;

  std::vector<RtQueue> queues_;
  std::vector<RtModule> modules_;
  std::vector<RtWire> wires_;
  std::vector<RtCore> cores_;
  std::vector<RtToken> tokens_;

  uint64_t total_jobs_ = 0;
  uint64_t completed_jobs_ = 0;
  uint64_t tokens_created_ = 0;
  uint64_t tokens_consumed_ = 0;
  bool progressed_ = false;
};

}  // namespace

SimResult simulate(const Topology& topology, const DesignPoint& y, const Workload& workload,
                   uint64_t seed, const SimOptions& options) {
  Simulation sim(topology, y, workload, seed, options);
  return sim.run();
}

}  // namespace ergosim

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

#include "ergosim/topology.hpp"

#include <set>
#include <stdexcept>

namespace ergosim {
namespace {

constexpr double kCoreOutCapacity = 8;
constexpr double kCoreInCapacity = 65536;
constexpr double kUnboundedCapacity = 1024;

/// Incremental graph assembly with id bookkeeping.
class Builder {
 public:
  explicit Builder(const ParameterSpace& space) { topo_.space = space; }

  int add_queue(const std::string& id, ParamBinding cap) {
    topo_.queues.push_back({id, cap});
    return static_cast<int>(topo_.queues.size()) - 1;
  }

  int add_module(const std::string& id, ParamBinding n, ParamBinding d, int in_queue) {
    topo_.modules.push_back({id, n, d, in_queue});
    return static_cast<int>(topo_.modules.size()) - 1;
  }

  int add_wire(const std::string& id, ParamBinding l, int src, int dst) {
    topo_.wires.push_back({id, l, src, dst});
    return static_cast<int>(topo_.wires.size()) - 1;
  }

  int add_core(const std::string& id, int out_q, int in_q, int width = 1) {
    topo_.cores.push_back({id, out_q, in_q, width});
    return static_cast<int>(topo_.cores.size()) - 1;
  }

  /// Binding for a named spec; throws if absent.
  ParamBinding bound(const std::string& spec_name) {
    const int idx = topo_.space.index_of(spec_name);
    if (idx < 0) throw std::invalid_argument("missing parameter spec: " + spec_name);
    return ParamBinding::bound(idx);
  }

  /// Binding for a named spec if present, otherwise the fixed fallback.
  ParamBinding bound_or(const std::string& spec_name, double fallback) {
    const int idx = topo_.space.index_of(spec_name);
    return idx >= 0 ? ParamBinding::bound(idx) : ParamBinding::fixed_at(fallback);
  }

  Topology&& finish(const std::string& builder, std::vector<int> args,
                    bool require_full_coverage) {
    topo_.builder = builder;
    topo_.builder_args = std::move(args);
    topo_.validate();
    if (require_full_coverage) {
      const auto used = topo_.bound_specs();
      if (used.size() != topo_.space.dimension())
        throw std::invalid_argument("parameter space has specs not bound by the topology");
    }
    return std::move(topo_);
  }

  Topology topo_;
};

}  // namespace

int Topology::queue_index(const std::string& id) const {
  for (size_t i = 0; i < queues.size(); ++i)
    if (queues[i].id == id) return static_cast<int>(i);
  return -1;
}

int Topology::module_index(const std::string& id) const {
  for (size_t i = 0; i < modules.size(); ++i)
    if (modules[i].id == id) return static_cast<int>(i);
  return -1;
}

void Topology::validate() const {
  const int nq = static_cast<int>(queues.size());
  const int nm = static_cast<int>(modules.size());
  const int nw = static_cast<int>(wires.size());
  const int nspec = static_cast<int>(space.dimension());

  auto check_binding = [&](const ParamBinding& b, const std::string& where) {
    if (b.is_bound() && b.spec >= nspec)
      throw std::invalid_argument(where + ": binding references unknown spec");
    if (!b.is_bound() && b.fixed < 1.0)
      throw std::invalid_argument(where + ": fixed parameter value below 1");
  };

  for (const auto& q : queues) check_binding(q.capacity, q.id);
  for (const auto& m : modules) {
    check_binding(m.throughput, m.id);
    check_binding(m.delay, m.id);
    if (m.in_queue < 0 || m.in_queue >= nq)
      throw std::invalid_argument(m.id + ": bad input queue");
  }
  for (const auto& w : wires) {
    check_binding(w.latency, w.id);
    if (w.src_queue < 0 || w.src_queue >= nq || w.dst_queue < 0 || w.dst_queue >= nq)
      throw std::invalid_argument(w.id + ": bad queue endpoint");
  }
  if (routes.size() != cores.size())
    throw std::invalid_argument("route table size does not match core count");

  for (size_t c = 0; c < cores.size(); ++c) {
    for (const auto& route : routes[c]) {
      if (route.empty()) throw std::invalid_argument("empty route");
      int at_queue = cores[c].out_queue;
      for (size_t h = 0; h < route.size(); ++h) {
        const Hop& hop = route[h];
        if (hop.type == HopType::Wire) {
          if (hop.index < 0 || hop.index >= nw) throw std::invalid_argument("bad wire hop");
          if (wires[hop.index].src_queue != at_queue)
            throw std::invalid_argument("route discontinuity at wire " + wires[hop.index].id);
          at_queue = wires[hop.index].dst_queue;
        } else {
          if (hop.index < 0 || hop.index >= nm) throw std::invalid_argument("bad module hop");
          if (modules[hop.index].in_queue != at_queue)
            throw std::invalid_argument("route discontinuity at module " +
                                        modules[hop.index].id);
          // A module hop must be followed by a wire out of one of its output
          // queues; the wire hop above re-anchors at_queue via its source.
          if (h + 1 >= route.size() || route[h + 1].type != HopType::Wire)
            throw std::invalid_argument("module hop not followed by a wire");
          at_queue = wires[route[h + 1].index].src_queue;
        }
      }
      if (route.back().type != HopType::Wire || at_queue != cores[c].in_queue)
        throw std::invalid_argument("route does not terminate at the core input queue");
    }
  }
}

std::vector<int> Topology::bound_specs() const {
  std::set<int> used;
  for (const auto& q : queues)
    if (q.capacity.is_bound()) used.insert(q.capacity.spec);
  for (const auto& m : modules) {
    if (m.throughput.is_bound()) used.insert(m.throughput.spec);
    if (m.delay.is_bound()) used.insert(m.delay.spec);
  }
  for (const auto& w : wires)
    if (w.latency.is_bound()) used.insert(w.latency.spec);
  return {used.begin(), used.end()};
}

ParameterSpace numa_parameter_space() {
  using K = ParamKind;
  std::vector<ParameterSpec> s = {
      {"N(L1I)", K::Throughput, 1, 4},   {"N(L1D)", K::Throughput, 1, 4},
      {"N(L2)", K::Throughput, 1, 4},    {"N(L3)", K::Throughput, 1, 4},
      {"N(mem)", K::Throughput, 1, 4},

      {"D(L1I)", K::Delay, 1, 4},        {"D(L1D)", K::Delay, 1, 4},
      {"D(L2)", K::Delay, 8, 16},        {"D(L3)", K::Delay, 16, 32},
      {"D(mem)", K::Delay, 64, 128},

      {"C_inQ(L1I)", K::Capacity, 1, 4}, {"C_inQ(L1D)", K::Capacity, 1, 4},
      {"C_inQ(L2)", K::Capacity, 1, 16}, {"C_inQ(L3)", K::Capacity, 1, 16},
      {"C_inQ(mem)", K::Capacity, 1, 32},

      {"C_outQ(L1I)", K::Capacity, 1, 4}, {"C_outQ(L1D)", K::Capacity, 1, 4},
      {"C_outQ(L2)", K::Capacity, 2, 16}, {"C_outQ(L3)", K::Capacity, 4, 16},
      {"C_outQ(mem)", K::Capacity, 4, 32},

      {"L(X1)", K::Latency, 1, 4},
      {"C_inQ(X1)", K::Capacity, 1, 4},  {"C_outQ(X1)", K::Capacity, 1, 4},
      {"L(X2)", K::Latency, 4, 8},
      {"C_inQ(X2)", K::Capacity, 1, 4},  {"C_outQ(X2)", K::Capacity, 1, 4},

      {"C_inQ(X3)", K::Capacity, 1, 8},
      {"L(X3 local)", K::Latency, 16, 64},
      {"L(X3 remote)", K::Latency, 32, 64},
      {"C_outQ(X3 local)", K::Capacity, 1, 16},
      {"C_outQ(X3 remote)", K::Capacity, 1, 16},
  };
  return ParameterSpace(std::move(s));
}

Topology build_numa_system(int m_processors, int n_cores_per_proc,
                           const ParameterSpace& space) {
  if (m_processors < 1 || n_cores_per_proc < 1)
    throw std::invalid_argument("build_numa_system: need at least one processor and core");

  Builder b(space);
  const int m = m_processors;
  const int n = n_cores_per_proc;

  struct PerCore {
    int out_q, in_q;
    int l1i, l1d, l2;          // module indices
    int l1i_out, l1d_out, l2_out;  // output queue indices
  };
  struct PerProc {
    int x1, x2, x3, l3, mem;
    int x1_out, x2_out, l3_out, x3_out_local, x3_out_remote, mem_out;
  };

  std::vector<PerCore> core_parts(static_cast<size_t>(m * n));
  std::vector<PerProc> proc_parts(static_cast<size_t>(m));

  auto cid = [&](const char* what, int g) { return std::string(what) + std::to_string(g); };
  auto pid = [&](const char* what, int p) { return std::string(what) + std::to_string(p); };

  // Cores and per-core cache modules.
  for (int g = 0; g < m * n; ++g) {
    PerCore& pc = core_parts[static_cast<size_t>(g)];
    pc.out_q = b.add_queue(cid("core", g) + ".outQ", ParamBinding::fixed_at(kCoreOutCapacity));
    pc.in_q = b.add_queue(cid("core", g) + ".inQ", ParamBinding::fixed_at(kCoreInCapacity));
    b.add_core(cid("core", g), pc.out_q, pc.in_q);

    const int l1i_in = b.add_queue(cid("L1I", g) + ".inQ", b.bound("C_inQ(L1I)"));
    pc.l1i_out = b.add_queue(cid("L1I", g) + ".outQ", b.bound("C_outQ(L1I)"));
    pc.l1i = b.add_module(cid("L1I", g), b.bound("N(L1I)"), b.bound("D(L1I)"), l1i_in);

    const int l1d_in = b.add_queue(cid("L1D", g) + ".inQ", b.bound("C_inQ(L1D)"));
    pc.l1d_out = b.add_queue(cid("L1D", g) + ".outQ", b.bound("C_outQ(L1D)"));
    pc.l1d = b.add_module(cid("L1D", g), b.bound("N(L1D)"), b.bound("D(L1D)"), l1d_in);

    const int l2_in = b.add_queue(cid("L2", g) + ".inQ", b.bound("C_inQ(L2)"));
    pc.l2_out = b.add_queue(cid("L2", g) + ".outQ", b.bound("C_outQ(L2)"));
    pc.l2 = b.add_module(cid("L2", g), b.bound("N(L2)"), b.bound("D(L2)"), l2_in);
  }

  // Per-processor routers, shared L3 and local memory module.
  for (int p = 0; p < m; ++p) {
    PerProc& pp = proc_parts[static_cast<size_t>(p)];
    const auto nfix = ParamBinding::fixed_at(n);
    const auto one = ParamBinding::fixed_at(1);

    const int x1_in = b.add_queue(pid("X1_", p) + ".inQ", b.bound("C_inQ(X1)"));
    pp.x1_out = b.add_queue(pid("X1_", p) + ".outQ", b.bound("C_outQ(X1)"));
    pp.x1 = b.add_module(pid("X1_", p), nfix, one, x1_in);

    const int x2_in = b.add_queue(pid("X2_", p) + ".inQ", b.bound("C_inQ(X2)"));
    pp.x2_out = b.add_queue(pid("X2_", p) + ".outQ", b.bound("C_outQ(X2)"));
    pp.x2 = b.add_module(pid("X2_", p), nfix, one, x2_in);

    const int l3_in = b.add_queue(pid("L3_", p) + ".inQ", b.bound("C_inQ(L3)"));
    pp.l3_out = b.add_queue(pid("L3_", p) + ".outQ", b.bound("C_outQ(L3)"));
    pp.l3 = b.add_module(pid("L3_", p), b.bound("N(L3)"), b.bound("D(L3)"), l3_in);

    const int x3_in = b.add_queue(pid("X3_", p) + ".inQ", b.bound("C_inQ(X3)"));
    pp.x3_out_local = b.add_queue(pid("X3_", p) + ".outQ.local", b.bound("C_outQ(X3 local)"));
    pp.x3_out_remote =
        b.add_queue(pid("X3_", p) + ".outQ.remote", b.bound("C_outQ(X3 remote)"));
    pp.x3 = b.add_module(pid("X3_", p), ParamBinding::fixed_at(2), one, x3_in);

    const int mem_in = b.add_queue(pid("mem", p) + ".inQ", b.bound("C_inQ(mem)"));
    pp.mem_out = b.add_queue(pid("mem", p) + ".outQ", b.bound("C_outQ(mem)"));
    pp.mem = b.add_module(pid("mem", p), b.bound("N(mem)"), b.bound("D(mem)"), mem_in);
  }

  // Wires. Request path runs core -> L1 -> X1 -> L2 -> X2 -> L3 -> X3 -> mem;
  // responses return on dedicated unit-latency wires from the resolving
  // component's output queue back to the core.
  struct CoreWires {
    int to_l1i, to_l1d;
    int l1i_resp, l1d_resp, l2_resp, l3_resp;
    int l1i_x1, l1d_x1, x1_l2, l2_x2;
    std::vector<int> mem_resp;  // indexed by memory module
  };
  std::vector<CoreWires> core_wires(static_cast<size_t>(m * n));
  std::vector<int> x2_l3(static_cast<size_t>(m));
  std::vector<int> l3_x3(static_cast<size_t>(m));
  std::vector<int> x3_mem_local(static_cast<size_t>(m));
  std::vector<int> x3_mem_remote(static_cast<size_t>(m));  // to processor (p+1)%m

  const auto one = ParamBinding::fixed_at(1);
  for (int p = 0; p < m; ++p) {
    const PerProc& pp = proc_parts[static_cast<size_t>(p)];
    for (int c = 0; c < n; ++c) {
      const int g = p * n + c;
      const PerCore& pc = core_parts[static_cast<size_t>(g)];
      CoreWires& cw = core_wires[static_cast<size_t>(g)];
      const int l1i_in = b.topo_.modules[pc.l1i].in_queue;
      const int l1d_in = b.topo_.modules[pc.l1d].in_queue;
      const int l2_in = b.topo_.modules[pc.l2].in_queue;

      cw.to_l1i = b.add_wire(cid("w.core", g) + ".L1I", one, pc.out_q, l1i_in);
      cw.to_l1d = b.add_wire(cid("w.core", g) + ".L1D", one, pc.out_q, l1d_in);
      cw.l1i_resp = b.add_wire(cid("w.L1I", g) + ".resp", one, pc.l1i_out, pc.in_q);
      cw.l1d_resp = b.add_wire(cid("w.L1D", g) + ".resp", one, pc.l1d_out, pc.in_q);
      cw.l1i_x1 = b.add_wire(cid("w.L1I", g) + ".X1", b.bound("L(X1)"), pc.l1i_out,
                             b.topo_.modules[pp.x1].in_queue);
      cw.l1d_x1 = b.add_wire(cid("w.L1D", g) + ".X1", b.bound("L(X1)"), pc.l1d_out,
                             b.topo_.modules[pp.x1].in_queue);
      cw.x1_l2 = b.add_wire(cid("w.X1.L2_", g), one, pp.x1_out, l2_in);
      cw.l2_resp = b.add_wire(cid("w.L2_", g) + ".resp", one, pc.l2_out, pc.in_q);
      cw.l2_x2 = b.add_wire(cid("w.L2_", g) + ".X2", b.bound("L(X2)"), pc.l2_out,
                            b.topo_.modules[pp.x2].in_queue);
      cw.l3_resp = b.add_wire(cid("w.L3.resp_core", g), one, pp.l3_out, pc.in_q);
    }
    x2_l3[static_cast<size_t>(p)] = b.add_wire(pid("w.X2.L3_", p), one, pp.x2_out,
                                               b.topo_.modules[pp.l3].in_queue);
    l3_x3[static_cast<size_t>(p)] = b.add_wire(pid("w.L3.X3_", p), one, pp.l3_out,
                                               b.topo_.modules[pp.x3].in_queue);
    x3_mem_local[static_cast<size_t>(p)] =
        b.add_wire(pid("w.X3.mem.local_", p), b.bound("L(X3 local)"), pp.x3_out_local,
                   b.topo_.modules[pp.mem].in_queue);
    if (m > 1) {
      const int r = (p + 1) % m;
      x3_mem_remote[static_cast<size_t>(p)] =
          b.add_wire(pid("w.X3.mem.remote_", p), b.bound("L(X3 remote)"), pp.x3_out_remote,
                     b.topo_.modules[proc_parts[static_cast<size_t>(r)].mem].in_queue);
    } else {
      // Degenerate single-processor system: the remote link parameters are
      // still bound so the spec coverage holds, pointing back at local memory.
      x3_mem_remote[static_cast<size_t>(p)] =
          b.add_wire(pid("w.X3.mem.remote_", p), b.bound("L(X3 remote)"), pp.x3_out_remote,
                     b.topo_.modules[pp.mem].in_queue);
    }
  }
  // Memory response wires, one per (memory module, core).
  for (int g = 0; g < m * n; ++g) {
    CoreWires& cw = core_wires[static_cast<size_t>(g)];
    cw.mem_resp.resize(static_cast<size_t>(m));
    for (int q = 0; q < m; ++q) {
      cw.mem_resp[static_cast<size_t>(q)] =
          b.add_wire("w.mem" + std::to_string(q) + ".resp_core" + std::to_string(g), one,
                     proc_parts[static_cast<size_t>(q)].mem_out,
                     core_parts[static_cast<size_t>(g)].in_q);
    }
  }

  // Routes.
  b.topo_.routes.resize(static_cast<size_t>(m * n));
  for (int p = 0; p < m; ++p) {
    const PerProc& pp = proc_parts[static_cast<size_t>(p)];
    for (int c = 0; c < n; ++c) {
      const int g = p * n + c;
      const PerCore& pc = core_parts[static_cast<size_t>(g)];
      const CoreWires& cw = core_wires[static_cast<size_t>(g)];
      auto& table = b.topo_.routes[static_cast<size_t>(g)];

      for (int side = 0; side < 2; ++side) {
        const bool ifetch = (side == 0);
        const int l1 = ifetch ? pc.l1i : pc.l1d;
        const int to_l1 = ifetch ? cw.to_l1i : cw.to_l1d;
        const int l1_resp = ifetch ? cw.l1i_resp : cw.l1d_resp;
        const int l1_x1 = ifetch ? cw.l1i_x1 : cw.l1d_x1;

        Route to_l2 = {{HopType::Wire, to_l1},   {HopType::Module, l1},
                       {HopType::Wire, l1_x1},   {HopType::Module, pp.x1},
                       {HopType::Wire, cw.x1_l2}, {HopType::Module, pc.l2}};
        Route to_l3 = to_l2;
        to_l3.insert(to_l3.end(), {{HopType::Wire, cw.l2_x2},
                                   {HopType::Module, pp.x2},
                                   {HopType::Wire, x2_l3[static_cast<size_t>(p)]},
                                   {HopType::Module, pp.l3}});
        Route to_x3 = to_l3;
        to_x3.insert(to_x3.end(), {{HopType::Wire, l3_x3[static_cast<size_t>(p)]},
                                   {HopType::Module, pp.x3}});

        auto finish = [&](Route r, Hop tail_wire) {
          r.push_back(tail_wire);
          return r;
        };

        const int kind_base = side * kNumMemLevels;
        table[kind_base + static_cast<int>(MemLevel::L1)] =
            Route{{HopType::Wire, to_l1}, {HopType::Module, l1}, {HopType::Wire, l1_resp}};
        table[kind_base + static_cast<int>(MemLevel::L2)] =
            finish(to_l2, {HopType::Wire, cw.l2_resp});
        table[kind_base + static_cast<int>(MemLevel::L3)] =
            finish(to_l3, {HopType::Wire, cw.l3_resp});

        Route local = to_x3;
        local.insert(local.end(),
                     {{HopType::Wire, x3_mem_local[static_cast<size_t>(p)]},
                      {HopType::Module, pp.mem},
                      {HopType::Wire, cw.mem_resp[static_cast<size_t>(p)]}});
        table[kind_base + static_cast<int>(MemLevel::LocalMem)] = std::move(local);

        const int r = (m > 1) ? (p + 1) % m : p;
        Route remote = to_x3;
        remote.insert(remote.end(),
                      {{HopType::Wire, x3_mem_remote[static_cast<size_t>(p)]},
                       {HopType::Module, proc_parts[static_cast<size_t>(r)].mem},
                       {HopType::Wire, cw.mem_resp[static_cast<size_t>(r)]}});
        table[kind_base + static_cast<int>(MemLevel::RemoteMem)] = std::move(remote);
      }
    }
  }

  return b.finish("numa", {m, n}, /*require_full_coverage=*/true);
}

Topology build_chain(int k_stages, const ParameterSpace& space) {
  if (k_stages < 1) throw std::invalid_argument("build_chain: k_stages < 1");

  Builder b(space);
  const int out_q = b.add_queue("core0.outQ", ParamBinding::fixed_at(kCoreOutCapacity));
  const int in_q = b.add_queue("core0.inQ", ParamBinding::fixed_at(kCoreInCapacity));
  b.add_core("core0", out_q, in_q);

  Route route;
  int prev_out = out_q;
  for (int s = 0; s < k_stages; ++s) {
    const std::string sn = "s" + std::to_string(s);
    const int sin =
        b.add_queue(sn + ".inQ", b.bound_or("C_inQ(" + sn + ")", kUnboundedCapacity));
    const int sout =
        b.add_queue(sn + ".outQ", b.bound_or("C_outQ(" + sn + ")", kUnboundedCapacity));
    const int mod = b.add_module(sn, b.bound_or("N(" + sn + ")", 1),
                                 b.bound_or("D(" + sn + ")", 1), sin);
    const int wire = b.add_wire("w" + std::to_string(s),
                                b.bound_or("L(w" + std::to_string(s) + ")", 1), prev_out, sin);
    route.push_back({HopType::Wire, wire});
    route.push_back({HopType::Module, mod});
    prev_out = sout;
  }
  const int resp = b.add_wire("w.resp", ParamBinding::fixed_at(1), prev_out, in_q);
  route.push_back({HopType::Wire, resp});

  b.topo_.routes.resize(1);
  for (auto& r : b.topo_.routes[0]) r = route;

  return b.finish("chain", {k_stages}, /*require_full_coverage=*/false);
}

}  // namespace ergosim

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/reach.hpp"
#include "tempsym/symmetry.hpp"
#include "tempsym/temporal_graph.hpp"
#include "tempsym/walk.hpp"

namespace tempsym {

// Constant of the instance-level budget check in reach_h_in_orbit.
inline constexpr Time kReachBudgetConstant = 3;

struct Lane {
  VertexSet source;
  Time t = 1, t_end = 1;
  VertexSet members;
};

namespace detail {

inline int orbit_of_set(const OrbitPartition& p, const VertexSet& x) {
  int id = -1;
  bool ok = true;
  for_each_member(x, [&](Vertex v) {
    if (id < 0) id = p.orbit_of[v];
    else if (p.orbit_of[v] != id) ok = false;
  });
  if (!ok) throw DomainError("lane source spans several orbits");
  if (id < 0) throw DomainError("empty lane source");
  return id;
}

struct BoundaryOnly {
  const OrbitPartition* p;
  bool operator()(Vertex a, Vertex b) const { return p->orbit_of[a] != p->orbit_of[b]; }
};

}  // namespace detail

// L_{t,t'}(X): reachable from X with moves at steps t..t'-1 over orbit
// boundary edges only.
inline Lane lane(const TemporalGraph& g, const OrbitPartition& p, const VertexSet& x, Time t, Time t_end) {
  detail::orbit_of_set(p, x);
  if (t < 1 || t_end < t || t_end > g.lifetime() + 1) throw DomainError("time window out of range");
  Trail trail;
  Sweep sweep(g, trail, t);
  for_each_member(x, [&](Vertex v) { sweep.seed_root(v); });
  while (sweep.time() < t_end && !sweep.complete()) sweep.step(detail::BoundaryOnly{&p});
  return Lane{x, t, t_end, sweep.reached()};
}

// |L_{t,t+r}(X) ∩ S'| >= ceil(|X| |S'| / |S|).
inline bool reachability_between_orbits_check(const TemporalGraph& g, const OrbitPartition& p, const VertexSet& x,
                                               int target_orbit, Time t) {
  const int s = detail::orbit_of_set(p, x);
  const Time t_end = t + p.r();
  if (t_end > g.lifetime() + 1) throw DomainError("window past the lifetime");
  Lane l = lane(g, p, x, t, t_end);
  std::size_t hit = 0;
  for (Vertex v : p.orbit(target_orbit)) hit += l.members.test(v);
  const std::size_t need = (x.count() * p.orbit(target_orbit).size() + p.orbit(s).size() - 1) / p.orbit(s).size();
  return hit >= need;
}

struct ReachTarget {
  int orbit = 0;
  Vertex start = 0;
  Time t = 1;
  std::vector<Vertex> targets;
  std::vector<TemporalWalk> witnesses;  // witnesses[i] ends at targets[i]
  Time budget = 0;
  Time bound = 0;     // kReachBudgetConstant * (min(ceil(h n/|S|), h r) + r)
  char strategy = 'a';
};

namespace detail {

// Collects vertices of S as they are first reached, with their trail nodes.
struct Collector {
  const OrbitPartition* p;
  int orbit;
  std::size_t h;
  std::vector<char> have;
  std::vector<Vertex> verts;
  std::vector<int> nodes;

  Collector(const OrbitPartition& part, int s, std::size_t want)
      : p(&part), orbit(s), h(want), have(part.orbit_of.size(), 0) {}

  void add(Vertex v, int node) {
    if (verts.size() >= h || have[v] || p->orbit_of[v] != orbit) return;
    have[v] = 1;
    verts.push_back(v);
    nodes.push_back(node);
  }
  void add_fresh(const Sweep& sw, const std::vector<Vertex>& fresh) {
    for (Vertex v : fresh) add(v, sw.node_of(v));
  }
  bool done() const { return verts.size() >= h; }
};

struct StrategyResult {
  std::vector<Vertex> verts;
  std::vector<int> nodes;
  Time end = 0;
};

// Full sweep until an orbit overflows, then a lane from the overflowing part.
inline StrategyResult reach_overflow(const TemporalGraph& g, const OrbitPartition& p, int s, Vertex u, Time t,
                                     std::size_t h, Trail& trail) {
  const std::size_t size_s = p.orbit(s).size();
  std::vector<std::size_t> threshold(static_cast<std::size_t>(p.r())), count(static_cast<std::size_t>(p.r()), 0);
  for (int o = 0; o < p.r(); ++o) {
    const std::size_t so = p.orbit(o).size();
    threshold[o] = std::min(so, (h * so + size_s - 1) / size_s + 1);
  }
  Collector col(p, s, h);
  Sweep sweep(g, trail, t);
  sweep.seed_root(u);
  col.add(u, sweep.node_of(u));
  count[p.orbit_of[u]] = 1;
  int overflow = count[p.orbit_of[u]] >= threshold[p.orbit_of[u]] ? p.orbit_of[u] : -1;
  while (!col.done() && overflow < 0) {
    const auto& fresh = sweep.step();
    col.add_fresh(sweep, fresh);
    for (Vertex v : fresh) {
      const int o = p.orbit_of[v];
      if (++count[o] >= threshold[o] && overflow < 0) overflow = o;
    }
    if (fresh.empty() && sweep.complete()) break;
  }
  if (!col.done()) {
    Sweep lane_sweep(g, trail, sweep.time());
    for (Vertex v : p.orbit(overflow)) {
      if (sweep.reached().test(v)) lane_sweep.seed(v, sweep.node_of(v));
    }
    for (Time j = 0; j < p.r() && !col.done(); ++j) col.add_fresh(lane_sweep, lane_sweep.step(BoundaryOnly{&p}));
    if (!col.done()) throw std::logic_error("overflow lane reached fewer than h orbit vertices");
    return {col.verts, col.nodes, lane_sweep.time()};
  }
  return {col.verts, col.nodes, sweep.time()};
}

// Rounds of lane, one free step, lane back; each round gains a vertex of S.
inline StrategyResult reach_pumping(const TemporalGraph& g, const OrbitPartition& p, int s, Vertex u, Time t,
                                    std::size_t h, Trail& trail) {
  Collector col(p, s, h);
  const int root = trail.add(u, t, -1);
  col.add(u, root);
  std::vector<std::pair<Vertex, int>> x{{u, root}};
  Time tau = t;
  const Time r = p.r();
  for (std::size_t round = 0; !col.done(); ++round) {
    if (round > h + 1) throw std::logic_error("lane pumping stalled");
    Sweep a(g, trail, tau);
    for (auto [v, node] : x) a.seed(v, node);
    for (Time j = 0; j < r && !col.done(); ++j) col.add_fresh(a, a.step(BoundaryOnly{&p}));
    if (col.done()) return {col.verts, col.nodes, a.time()};

    Sweep b(g, trail, a.time());
    for_each_member(a.reached(), [&](Vertex v) { b.seed(v, a.node_of(v)); });
    const auto& fresh = b.step();
    if (fresh.empty()) throw std::logic_error("reach set stopped growing");
    col.add_fresh(b, fresh);
    if (col.done()) return {col.verts, col.nodes, b.time()};
    Vertex v = fresh.front();
    for (Vertex w : fresh) {
      if (p.orbit_of[w] < p.orbit_of[v]) v = w;
    }
    const int target = p.orbit_of[v];

    Sweep c(g, trail, b.time());
    for (Vertex w : p.orbit(target)) {
      if (a.reached().test(w)) c.seed(w, a.node_of(w));
    }
    c.seed(v, b.node_of(v));
    for (Time j = 0; j < r && !col.done(); ++j) col.add_fresh(c, c.step(BoundaryOnly{&p}));
    if (col.done()) return {col.verts, col.nodes, c.time()};
    x.clear();
    for (Vertex w : p.orbit(s)) {
      if (c.reached().test(w)) x.emplace_back(w, c.node_of(w));
    }
    tau = c.time();
  }
  return {col.verts, col.nodes, tau};
}

}  // namespace detail

inline Time reach_budget_bound(const OrbitPartition& p, int s, std::size_t h) {
  const auto n = static_cast<Time>(p.n()), size = static_cast<Time>(p.orbit(s).size()), r = static_cast<Time>(p.r());
  const Time hh = static_cast<Time>(h);
  return kReachBudgetConstant * (std::min((hh * n + size - 1) / size, hh * r) + r);
}

// h vertices of the orbit of u reachable from u at step t, with witnesses.
inline ReachTarget reach_h_in_orbit(const TemporalGraph& g, const OrbitPartition& p, int s, Vertex u, Time t,
                                    std::size_t h) {
  if (s < 0 || s >= p.r()) throw DomainError("orbit id out of range");
  if (u < 0 || u >= g.n() || p.orbit_of[u] != s) throw DomainError("start vertex is not in the orbit");
  if (h == 0 || h > p.orbit(s).size()) throw DomainError("h must be in 1..|S|");
  if (t < 1 || t > g.lifetime() + 1) throw DomainError("start time out of range");
  ReachTarget out;
  out.orbit = s;
  out.start = u;
  out.t = t;
  out.bound = reach_budget_bound(p, s, h);
  Trail trail_a, trail_b;
  detail::StrategyResult res;
  const Trail* trail = &trail_a;
  if (h == 1) {
    res.verts = {u};
    res.nodes = {trail_a.add(u, t, -1)};
    res.end = t;
  } else {
    std::optional<detail::StrategyResult> ra, rb;
    try {
      ra = detail::reach_overflow(g, p, s, u, t, h, trail_a);
    } catch (const LifetimeExhausted&) {
    }
    try {
      rb = detail::reach_pumping(g, p, s, u, t, h, trail_b);
    } catch (const LifetimeExhausted&) {
    }
    if (!ra && !rb) throw LifetimeExhausted("lifetime too short to reach h orbit vertices");
    if (ra && (!rb || ra->end <= rb->end)) {
      res = std::move(*ra);
      out.strategy = 'a';
    } else {
      res = std::move(*rb);
      trail = &trail_b;
      out.strategy = 'b';
    }
  }
  out.budget = res.end - t;
  out.targets = res.verts;
  for (int node : res.nodes) out.witnesses.push_back(trail->walk_to(node));
  if (out.budget > out.bound && is_connected(g)) throw std::logic_error("reach budget above the checked bound");
  return out;
}

}  // namespace tempsym

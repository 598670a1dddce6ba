#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/perm_group.hpp"
#include "tempsym/permutation.hpp"
#include "tempsym/temporal_graph.hpp"

// Brute-force reference implementations for tiny instances. They share no
// code with the search and walk construction beyond the graph container.
namespace tempsym::oracle {

struct OracleBudget {
  int max_n_perms = 8;
  int max_n_explore = 10;
  std::size_t max_states = std::size_t{1} << 24;
};

// Every permutation that maps each step's edge set onto itself.
inline PermGroup brute_automorphisms(const TemporalGraph& g, const OracleBudget& budget = {}) {
  if (g.n() > budget.max_n_perms) throw BudgetExceeded("too many vertices for permutation enumeration");
  const int n = g.n();
  std::vector<Vertex> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  std::vector<Permutation> found;
  do {
    bool ok = true;
    for (const auto& s : g.snapshots()) {
      for (const auto& [a, b] : s.edges()) {
        if (!s.has_edge(image[a], image[b])) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) found.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  PermGroup out;
  out.n = n;
  for (const auto& p : found) {
    if (!p.is_identity()) out.generators.push_back(p);
  }
  out.order = found.size();
  out.log10_order = std::log10(static_cast<double>(found.size()));
  out.elements = std::move(found);
  return out;
}

// Smallest end time (the walk stands on v at the beginning of that step)
// of a walk from u starting at the beginning of step t0.
inline Time foremost_oracle(const TemporalGraph& g, Vertex u, Vertex v, Time t0) {
  if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) throw DomainError("vertex out of range");
  if (t0 < 1 || t0 > g.lifetime() + 1) throw DomainError("start time out of range");
  std::vector<char> layer(static_cast<std::size_t>(g.n()), 0);
  layer[u] = 1;
  for (Time t = t0;; ++t) {
    if (layer[v]) return t;
    if (t > g.lifetime()) throw LifetimeExhausted("unreachable within the lifetime");
    std::vector<char> next = layer;
    for (const auto& [a, b] : g.at(t).edges()) {
      if (layer[a]) next[b] = 1;
      if (layer[b]) next[a] = 1;
    }
    layer.swap(next);
  }
}

// Minimal span of a walk from `start` at step t0 that visits every vertex.
// States (vertex, visited set) keep their earliest time; waiting preserves
// them, so every reached state stays active.
inline Time optimal_exploration_span(const TemporalGraph& g, Vertex start, Time t0,
                                     const OracleBudget& budget = {}) {
  const int n = g.n();
  if (n > budget.max_n_explore) throw BudgetExceeded("too many vertices for exhaustive exploration");
  if (start < 0 || start >= n) throw DomainError("vertex out of range");
  if (t0 < 1 || t0 > g.lifetime() + 1) throw DomainError("start time out of range");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  const std::size_t states = static_cast<std::size_t>(n) << n;
  if (states > budget.max_states) throw BudgetExceeded("state space too large");
  auto id = [n](Vertex v, std::uint32_t mask) { return (static_cast<std::size_t>(mask) * n) + v; };
  std::vector<char> seen(states, 0);
  std::vector<std::pair<Vertex, std::uint32_t>> active{{start, std::uint32_t{1} << start}};
  seen[id(start, active[0].second)] = 1;
  for (Time t = t0;; ++t) {
    for (const auto& [v, mask] : active) {
      if (mask == full) return t - t0;
    }
    if (t > g.lifetime()) throw LifetimeExhausted("no exploring walk within the lifetime");
    const Snapshot& s = g.at(t);
    const std::size_t before = active.size();
    for (std::size_t i = 0; i < before; ++i) {
      const auto [v, mask] = active[i];
      for (Vertex w : s.neighbors(v)) {
        std::uint32_t m2 = mask | (std::uint32_t{1} << w);
        if (!seen[id(w, m2)]) {
          seen[id(w, m2)] = 1;
          active.emplace_back(w, m2);
        }
      }
    }
  }
}

}  // namespace tempsym::oracle

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/temporal_graph.hpp"
#include "tempsym/vertex_set.hpp"
#include "tempsym/walk.hpp"

namespace tempsym {

// Parent-pointer record of how each vertex was first reached. A node with
// parent -1 is a root: the walk starts there at `arrival`.
struct TrailNode {
  Vertex vertex;
  Time arrival;  // beginning of this step the walk stands on `vertex`
  std::int32_t parent;
};

class Trail {
 public:
  int add(Vertex v, Time arrival, int parent) {
    nodes_.push_back(TrailNode{v, arrival, parent});
    return static_cast<int>(nodes_.size()) - 1;
  }

  const TrailNode& operator[](int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return nodes_.size(); }

  // Rebuilds the walk from the root of `node` to `node`, waiting at each
  // vertex until the step in which the next edge is crossed.
  TemporalWalk walk_to(int node) const {
    std::vector<int> chain;
    for (int i = node; i >= 0; i = nodes_[i].parent) chain.push_back(i);
    TemporalWalk w = TemporalWalk::at(nodes_[chain.back()].vertex, nodes_[chain.back()].arrival);
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
      const TrailNode& nd = nodes_[*it];
      if (nd.vertex == w.back()) {
        wait_until(w, nd.arrival);
        continue;
      }
      wait_until(w, nd.arrival - 1);
      w.positions.push_back(nd.vertex);
    }
    return w;
  }

 private:
  std::vector<TrailNode> nodes_;
};

// Forward reachability sweep over time steps. Each call to step() performs the
// moves of the current step and records first arrivals in the trail.
class Sweep {
 public:
  Sweep(const TemporalGraph& g, Trail& trail, Time start)
      : g_(g),
        trail_(trail),
        time_(start),
        reached_(static_cast<std::size_t>(g.n())),
        node_of_(static_cast<std::size_t>(g.n()), -1) {}

  void seed(Vertex v, int node) {
    if (!reached_.test(v)) {
      reached_.set(v);
      node_of_[v] = node;
      ++count_;
    }
  }

  void seed_root(Vertex v) { seed(v, trail_.add(v, time_, -1)); }

  // Moves across edges of G_time accepted by `allow(from, to)`; returns the
  // vertices first reached at the beginning of step time+1.
  template <typename Allow>
  const std::vector<Vertex>& step(Allow&& allow) {
    if (time_ > g_.lifetime()) throw LifetimeExhausted("sweep ran past the last time step");
    const Snapshot& s = g_.at(time_);
    fresh_.clear();
    parents_.clear();
    const int n = g_.n();
    if (count_ * 2 <= n) {
      pending_.assign(static_cast<std::size_t>(n), -1);
      for_each_member(reached_, [&](Vertex x) {
        for (Vertex w : s.neighbors(x)) {
          if (!reached_.test(w) && pending_[w] < 0 && allow(x, w)) {
            pending_[w] = x;
            fresh_.push_back(w);
          }
        }
      });
      std::sort(fresh_.begin(), fresh_.end());
      for (Vertex w : fresh_) parents_.push_back(pending_[w]);
    } else {
      for (Vertex w = 0; w < n; ++w) {
        if (reached_.test(w)) continue;
        for (Vertex x : s.neighbors(w)) {
          if (reached_.test(x) && allow(x, w)) {
            fresh_.push_back(w);
            parents_.push_back(x);
            break;
          }
        }
      }
    }
    ++time_;
    for (std::size_t i = 0; i < fresh_.size(); ++i) {
      Vertex w = fresh_[i];
      reached_.set(w);
      node_of_[w] = trail_.add(w, time_, node_of_[parents_[i]]);
      ++count_;
    }
    return fresh_;
  }

  const std::vector<Vertex>& step() {
    return step([](Vertex, Vertex) { return true; });
  }

  Time time() const { return time_; }
  const VertexSet& reached() const { return reached_; }
  int count() const { return count_; }
  int node_of(Vertex v) const { return node_of_[v]; }
  bool complete() const { return count_ == g_.n(); }

 private:
  const TemporalGraph& g_;
  Trail& trail_;
  Time time_;
  VertexSet reached_;
  std::vector<int> node_of_;
  int count_ = 0;
  std::vector<Vertex> fresh_;
  std::vector<Vertex> parents_;
  std::vector<Vertex> pending_;
};

// R_{t,t'}(u): vertices reachable from u with moves in steps t..t'-1.
inline VertexSet reach_set(const TemporalGraph& g, Vertex u, Time t, Time t_end) {
  if (u < 0 || u >= g.n()) throw DomainError("vertex out of range");
  if (t < 1 || t_end < t || t_end > g.lifetime() + 1) throw DomainError("time window out of range");
  Trail trail;
  Sweep sweep(g, trail, t);
  sweep.seed_root(u);
  while (sweep.time() < t_end && !sweep.complete()) sweep.step();
  return sweep.reached();
}

// Earliest-arrival walk from u (at the beginning of step t0) to any vertex of
// `targets`. Simultaneous arrivals are broken by `priority` (lower wins), or by
// vertex id when no priority is given.
inline std::pair<TemporalWalk, Vertex> foremost_to_any(const TemporalGraph& g, Vertex u, Time t0,
                                                       const VertexSet& targets,
                                                       std::span<const int> priority = {}) {
  if (u < 0 || u >= g.n()) throw DomainError("vertex out of range");
  if (targets.none()) throw DomainError("empty target set");
  if (t0 < 1 || t0 > g.lifetime() + 1) throw DomainError("start time out of range");
  if (targets.test(u)) return {TemporalWalk::at(u, t0), u};
  Trail trail;
  Sweep sweep(g, trail, t0);
  sweep.seed_root(u);
  while (true) {
    if (sweep.time() > g.lifetime() || sweep.complete()) {
      throw LifetimeExhausted("target unreachable within the lifetime");
    }
    Vertex best = -1;
    for (Vertex w : sweep.step()) {
      if (!targets.test(w)) continue;
      if (best < 0 || (!priority.empty() && priority[w] < priority[best])) best = w;
    }
    if (best >= 0) return {trail.walk_to(sweep.node_of(best)), best};
  }
}

inline TemporalWalk foremost_walk(const TemporalGraph& g, Vertex u, Vertex v, Time t0) {
  if (v < 0 || v >= g.n()) throw DomainError("vertex out of range");
  return foremost_to_any(g, u, t0, make_set(g.n(), {v})).first;
}

}  // namespace tempsym

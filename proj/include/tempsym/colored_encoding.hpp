#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tempsym/permutation.hpp"
#include "tempsym/temporal_graph.hpp"

namespace tempsym {

// The temporal graph folded into one static edge-colored graph: the color of a
// vertex pair is the set of time steps at which it is an edge. Internally a
// color is the set of snapshot ids carrying the pair; since distinct snapshots
// own disjoint nonempty step sets this is a bijection with step sets. Color
// ids rank the snapshot sets lexicographically, so they do not depend on
// vertex labels.
class ColoredEncoding {
 public:
  struct Arc {
    Vertex to;
    int color;
  };

  ColoredEncoding() = default;

  explicit ColoredEncoding(const TemporalGraph& g) : n_(g.n()), graph_(&g) {
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> pair_sets;
    for (std::uint32_t s = 0; s < g.snapshots().size(); ++s) {
      for (const auto& [a, b] : g.snapshots()[s].edges()) pair_sets[key(a, b)].push_back(s);
    }
    std::map<std::vector<std::uint32_t>, int> rank;
    for (auto& [k, sets] : pair_sets) rank.emplace(sets, 0);
    for (auto& [sets, id] : rank) {
      id = static_cast<int>(colors_.size());
      colors_.push_back(sets);
    }
    adj_.assign(static_cast<std::size_t>(n_), {});
    for (auto& [k, sets] : pair_sets) {
      auto a = static_cast<Vertex>(k >> 32), b = static_cast<Vertex>(k & 0xffffffffULL);
      int c = rank.at(sets);
      adj_[a].push_back(Arc{b, c});
      adj_[b].push_back(Arc{a, c});
    }
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end(), [](const Arc& x, const Arc& y) { return x.to < y.to; });
    }
    for (const auto& list : adj_) arc_count_ += list.size();
  }

  int n() const { return n_; }
  int color_count() const { return static_cast<int>(colors_.size()); }
  std::size_t arc_count() const { return arc_count_; }
  std::span<const Arc> arcs(Vertex v) const { return adj_[v]; }

  // Color id of the pair, or -1 when the pair never is an edge.
  int color(Vertex a, Vertex b) const {
    const auto& list = adj_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Arc& x, Vertex v) { return x.to < v; });
    return it != list.end() && it->to == b ? it->color : -1;
  }

  const std::vector<std::uint32_t>& snapshots_of(int color) const { return colors_[color]; }

  // The time steps (ascending) of a color; expands the run schedule.
  std::vector<Time> steps_of(int color) const {
    std::vector<Time> out;
    const auto& snaps = colors_[color];
    for (std::size_t i = 0; i < graph_->runs().size(); ++i) {
      if (std::binary_search(snaps.begin(), snaps.end(), graph_->runs()[i].snapshot)) {
        for (Time t = graph_->runs()[i].first; t <= graph_->run_last(i); ++t) out.push_back(t);
      }
    }
    return out;
  }

  std::vector<Time> steps(Vertex a, Vertex b) const {
    int c = color(a, b);
    return c < 0 ? std::vector<Time>{} : steps_of(c);
  }

  // sigma preserves every color class iff it is an automorphism of every step.
  bool preserved_by(const Permutation& sigma) const {
    for (Vertex a = 0; a < n_; ++a) {
      const Vertex sa = sigma(a);
      if (adj_[a].size() != adj_[sa].size()) return false;
      for (const Arc& arc : adj_[a]) {
        if (color(sa, sigma(arc.to)) != arc.color) return false;
      }
    }
    return true;
  }

 private:
  static std::uint64_t key(Vertex a, Vertex b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }

  int n_ = 0;
  const TemporalGraph* graph_ = nullptr;
  std::vector<std::vector<Arc>> adj_;
  std::vector<std::vector<std::uint32_t>> colors_;
  std::size_t arc_count_ = 0;
};

inline ColoredEncoding encode(const TemporalGraph& g) { return ColoredEncoding(g); }

}  // namespace tempsym

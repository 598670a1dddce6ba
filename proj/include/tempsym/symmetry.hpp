#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tempsym/colored_encoding.hpp"
#include "tempsym/perm_group.hpp"
#include "tempsym/permutation.hpp"
#include "tempsym/refinement.hpp"
#include "tempsym/temporal_graph.hpp"

namespace tempsym {

namespace detail {

// Individualization-refinement search tree over a colored encoding.
class SymmetrySearch {
 public:
  explicit SymmetrySearch(const ColoredEncoding& enc) : enc_(enc), refiner_(enc), root_(enc.n()) {
    root_trace_ = refiner_.refine_all(root_);
  }

  PermGroup automorphisms() {
    PermGroup group;
    group.n = enc_.n();
    build_first_path();
    DisjointSets orbits(enc_.n());
    long double log_order = 0.0L;
    unsigned __int128 exact = 1;
    bool fits = true;
    const int depth = static_cast<int>(base_.size());
    for (int level = depth - 1; level >= 0; --level) {
      const Vertex fixed = base_[level];
      for (Vertex w : target_cells_[level]) {
        if (w == fixed || orbits.find(w) == orbits.find(fixed)) continue;
        std::optional<Permutation> gamma = search_equivalent(level, w);
        if (gamma) {
          group.generators.push_back(*gamma);
          group.gen_level.push_back(level);
          orbits.unite_generator(*gamma);
        }
      }
      int size = 0;
      const Vertex root = orbits.find(fixed);
      for (Vertex v : target_cells_[level]) {
        if (orbits.find(v) == root) ++size;
      }
      log_order += std::log10(static_cast<long double>(size));
      if (fits) {
        exact *= static_cast<unsigned>(size);
        if (exact > std::numeric_limits<std::uint64_t>::max()) fits = false;
      }
    }
    if (fits) group.order = static_cast<std::uint64_t>(exact);
    group.base = base_;
    group.log10_order = static_cast<double>(log_order);
    return group;
  }

  // lambda(v) = position of v in the best leaf; equal for isomorphic inputs.
  Permutation canonical_labeling(std::vector<Permutation> generators) {
    gens_ = std::move(generators);
    best_traces_.clear();
    best_cert_.clear();
    have_best_ = false;
    std::vector<std::uint64_t> traces{root_trace_};
    std::vector<Vertex> prefix;
    canon_dfs(root_, traces, prefix);
    std::vector<Vertex> lambda(static_cast<std::size_t>(enc_.n()));
    for (int i = 0; i < enc_.n(); ++i) lambda[best_leaf_.elems[i]] = i;
    return Permutation(std::move(lambda));
  }

 private:
  void build_first_path() {
    parts_.assign(1, root_);
    traces_.assign(1, root_trace_);
    base_.clear();
    target_cells_.clear();
    while (true) {
      const OrderedPartition& cur = parts_.back();
      int tc = cur.target_cell();
      if (tc < 0) break;
      std::vector<Vertex> cell(cur.cell(tc).begin(), cur.cell(tc).end());
      std::sort(cell.begin(), cell.end());
      OrderedPartition next = cur;
      std::uint64_t tr = refiner_.individualize_and_refine(next, cell.front());
      base_.push_back(cell.front());
      target_cells_.push_back(std::move(cell));
      target_starts_.push_back(tc);
      parts_.push_back(std::move(next));
      traces_.push_back(tr);
    }
  }

  std::optional<Permutation> search_equivalent(int level, Vertex w) {
    Permutation out;
    if (equiv_dfs(parts_[level], w, level + 1, out)) return out;
    return std::nullopt;
  }

  bool equiv_dfs(const OrderedPartition& parent, Vertex x, int depth, Permutation& out) {
    OrderedPartition child = parent;
    std::uint64_t tr = refiner_.individualize_and_refine(child, x);
    if (tr != traces_[depth] || child.cells != parts_[depth].cells) return false;
    if (child.discrete()) {
      std::vector<Vertex> image(static_cast<std::size_t>(enc_.n()));
      const auto& first = parts_[depth].elems;
      for (int p = 0; p < enc_.n(); ++p) image[first[p]] = child.elems[p];
      Permutation gamma(std::move(image));
      if (!enc_.preserved_by(gamma)) return false;
      out = std::move(gamma);
      return true;
    }
    int tc = child.target_cell();
    if (tc != target_starts_[depth] || child.size_of(tc) != parts_[depth].size_of(tc)) return false;
    std::vector<Vertex> cell(child.cell(tc).begin(), child.cell(tc).end());
    std::sort(cell.begin(), cell.end());
    for (Vertex y : cell) {
      if (equiv_dfs(child, y, depth + 1, out)) return true;
    }
    return false;
  }

  std::vector<std::uint64_t> certificate(const OrderedPartition& leaf) const {
    std::vector<std::uint64_t> cert;
    cert.reserve(enc_.arc_count() / 2);
    for (Vertex a = 0; a < enc_.n(); ++a) {
      const std::uint64_t la = static_cast<std::uint64_t>(leaf.pos[a]);
      for (const auto& arc : enc_.arcs(a)) {
        const std::uint64_t lb = static_cast<std::uint64_t>(leaf.pos[arc.to]);
        if (la < lb) cert.push_back(la << 42 | lb << 21 | static_cast<std::uint64_t>(arc.color));
      }
    }
    std::sort(cert.begin(), cert.end());
    return cert;
  }

  // Sign of the comparison between the path traces and the best path's prefix.
  int compare_prefix(const std::vector<std::uint64_t>& traces) const {
    if (!have_best_) return -1;
    const std::size_t m = std::min(traces.size(), best_traces_.size());
    for (std::size_t i = 0; i < m; ++i) {
      if (traces[i] != best_traces_[i]) return traces[i] < best_traces_[i] ? -1 : 1;
    }
    return traces.size() > best_traces_.size() ? 1 : 0;
  }

  void canon_dfs(const OrderedPartition& node, std::vector<std::uint64_t>& traces,
                 std::vector<Vertex>& prefix) {
    if (compare_prefix(traces) > 0) return;
    if (node.discrete()) {
      std::vector<std::uint64_t> cert = certificate(node);
      if (have_best_ && traces == best_traces_) {
        if (cert > best_cert_) return;
        if (cert == best_cert_) {
          std::vector<Vertex> image(static_cast<std::size_t>(enc_.n()));
          for (int p = 0; p < enc_.n(); ++p) image[best_leaf_.elems[p]] = node.elems[p];
          Permutation gamma(std::move(image));
          if (!gamma.is_identity() && enc_.preserved_by(gamma)) gens_.push_back(std::move(gamma));
          return;
        }
      }
      have_best_ = true;
      best_traces_ = traces;
      best_cert_ = std::move(cert);
      best_leaf_ = node;
      return;
    }
    const int tc = node.target_cell();
    std::vector<Vertex> cell(node.cell(tc).begin(), node.cell(tc).end());
    std::sort(cell.begin(), cell.end());
    DisjointSets orbits(enc_.n());
    std::size_t used = 0;
    std::vector<Vertex> done;
    for (Vertex y : cell) {
      for (; used < gens_.size(); ++used) {
        if (fixes_prefix(gens_[used], prefix)) orbits.unite_generator(gens_[used]);
      }
      const Vertex r = orbits.find(y);
      bool skip = false;
      for (Vertex z : done) {
        if (orbits.find(z) == r) {
          skip = true;
          break;
        }
      }
      if (skip) continue;
      done.push_back(y);
      OrderedPartition child = node;
      traces.push_back(refiner_.individualize_and_refine(child, y));
      prefix.push_back(y);
      canon_dfs(child, traces, prefix);
      prefix.pop_back();
      traces.pop_back();
      if (compare_prefix(traces) > 0) return;
    }
  }

  static bool fixes_prefix(const Permutation& g, const std::vector<Vertex>& prefix) {
    for (Vertex v : prefix) {
      if (g(v) != v) return false;
    }
    return true;
  }

  const ColoredEncoding& enc_;
  Refiner refiner_;
  OrderedPartition root_;
  std::uint64_t root_trace_ = 0;

  std::vector<OrderedPartition> parts_;
  std::vector<std::uint64_t> traces_;
  std::vector<Vertex> base_;
  std::vector<std::vector<Vertex>> target_cells_;
  std::vector<int> target_starts_;

  std::vector<Permutation> gens_;
  bool have_best_ = false;
  std::vector<std::uint64_t> best_traces_;
  std::vector<std::uint64_t> best_cert_;
  OrderedPartition best_leaf_;
};

}  // namespace detail

// Orbits of Aut(G) numbered by canonical color: orbits[c] is the orbit with
// color c, members ascending.
struct OrbitPartition {
  std::vector<int> orbit_of;
  std::vector<std::vector<Vertex>> orbits;

  int n() const { return static_cast<int>(orbit_of.size()); }
  int r() const { return static_cast<int>(orbits.size()); }
  int color(Vertex v) const { return orbit_of[v]; }
  const std::vector<Vertex>& orbit(int id) const { return orbits[id]; }
  const std::vector<Vertex>& orbit_containing(Vertex v) const { return orbits[orbit_of[v]]; }
  VertexSet orbit_set(int id) const { return make_set(n(), orbits[id]); }
};

// Everything the walk algorithms need to know about the symmetries of G.
struct Symmetry {
  PermGroup group;
  Permutation canonical;  // vertex -> canonical position
  OrbitPartition partition;
};

inline PermGroup automorphism_generators(const TemporalGraph& g) {
  ColoredEncoding enc(g);
  return detail::SymmetrySearch(enc).automorphisms();
}

inline Symmetry analyze_symmetry(const TemporalGraph& g) {
  ColoredEncoding enc(g);
  detail::SymmetrySearch search(enc);
  Symmetry out;
  out.group = search.automorphisms();
  out.canonical = search.canonical_labeling(out.group.generators);
  std::vector<Vertex> roots = out.group.orbit_roots();
  // orbit color: rank of the smallest canonical position in the orbit
  std::vector<int> min_pos(static_cast<std::size_t>(g.n()), g.n());
  for (Vertex v = 0; v < g.n(); ++v) min_pos[roots[v]] = std::min(min_pos[roots[v]], out.canonical(v));
  std::vector<std::pair<int, Vertex>> keyed;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (roots[v] == v) keyed.emplace_back(min_pos[v], v);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> id_of_root(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < keyed.size(); ++i) id_of_root[keyed[i].second] = static_cast<int>(i);
  out.partition.orbit_of.resize(static_cast<std::size_t>(g.n()));
  out.partition.orbits.assign(keyed.size(), {});
  for (Vertex v = 0; v < g.n(); ++v) {
    int id = id_of_root[roots[v]];
    out.partition.orbit_of[v] = id;
    out.partition.orbits[id].push_back(v);
  }
  return out;
}

inline OrbitPartition orbit_partition(const TemporalGraph& g) { return analyze_symmetry(g).partition; }

inline OrbitPartition canonical_coloring(const TemporalGraph& g) { return orbit_partition(g); }

// Edges of G_t whose endpoints lie in different orbits.
inline EdgeList orbit_boundary_edges(const TemporalGraph& g, const OrbitPartition& p, Time t) {
  EdgeList out;
  for (const auto& [a, b] : g.at(t).edges()) {
    if (p.orbit_of[a] != p.orbit_of[b]) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace tempsym

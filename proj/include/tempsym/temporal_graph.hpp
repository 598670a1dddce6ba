#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/permutation.hpp"
#include "tempsym/vertex_set.hpp"

namespace tempsym {

using Edge = std::pair<Vertex, Vertex>;  // always first < second
using EdgeList = std::vector<Edge>;

inline Edge normalized(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// One static simple undirected graph on 0..n-1. Neighbor lists are sorted; the
// bit rows mirror them for word-parallel set sweeps.
class Snapshot {
 public:
  Snapshot() = default;

  Snapshot(int n, EdgeList edges) : n_(n), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (const auto& [a, b] : edges_) {
      ++degree[a];
      ++degree[b];
    }
    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    neighbors_.resize(static_cast<std::size_t>(offsets_[n]));
    std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges_) {
      neighbors_[fill[a]++] = b;
      neighbors_[fill[b]++] = a;
    }
    rows_.assign(static_cast<std::size_t>(n), VertexSet(static_cast<std::size_t>(n)));
    for (int v = 0; v < n; ++v) {
      std::sort(neighbors_.begin() + offsets_[v], neighbors_.begin() + offsets_[v + 1]);
      for (int i = offsets_[v]; i < offsets_[v + 1]; ++i) rows_[v].set(neighbors_[i]);
    }
  }

  int n() const { return n_; }
  const EdgeList& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  const VertexSet& row(Vertex v) const { return rows_[v]; }
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) return false;
    return rows_[a].test(static_cast<std::size_t>(b));
  }

  bool connected() const {
    if (n_ <= 1) return true;
    VertexSet seen(static_cast<std::size_t>(n_));
    std::vector<Vertex> stack{0};
    seen.set(0);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : neighbors(v)) {
        if (!seen.test(w)) {
          seen.set(w);
          stack.push_back(w);
        }
      }
    }
    return seen.all();
  }

  Snapshot relabeled(const Permutation& pi) const {
    EdgeList mapped;
    mapped.reserve(edges_.size());
    for (const auto& [a, b] : edges_) mapped.push_back(normalized(pi(a), pi(b)));
    return Snapshot(n_, std::move(mapped));
  }

 private:
  int n_ = 0;
  EdgeList edges_;
  std::vector<int> offsets_;
  std::vector<Vertex> neighbors_;
  std::vector<VertexSet> rows_;
};

// A temporal graph G_1..G_l over a fixed vertex set. Steps are stored as a
// run-length schedule over a pool of distinct snapshots, so instances with
// lifetime n^2 but few distinct graphs stay small.
class TemporalGraph {
 public:
  struct Run {
    Time first;  // first step of the run (1-based)
    std::uint32_t snapshot;
  };

  class Builder {
   public:
    explicit Builder(int n) : n_(n) {
      if (n < 1) throw DomainError("vertex count must be positive");
    }

    // Validates and interns an edge set; identical sets share one id.
    std::uint32_t add_snapshot(EdgeList edges) {
      for (auto& e : edges) {
        if (e.first < 0 || e.second < 0 || e.first >= n_ || e.second >= n_) {
          throw DomainError("vertex out of range");
        }
        if (e.first == e.second) throw DomainError("self-loop");
        e = normalized(e.first, e.second);
      }
      std::sort(edges.begin(), edges.end());
      if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw DomainError("duplicate edge");
      }
      auto [it, inserted] = index_.try_emplace(edges, static_cast<std::uint32_t>(pool_.size()));
      if (inserted) pool_.push_back(std::move(edges));
      return it->second;
    }

    Builder& append(std::uint32_t snapshot, Time count = 1) {
      if (snapshot >= pool_.size()) throw DomainError("unknown snapshot id");
      if (count <= 0) return *this;
      if (runs_.empty() || runs_.back().snapshot != snapshot) {
        runs_.push_back(Run{lifetime_ + 1, snapshot});
      }
      lifetime_ += count;
      return *this;
    }

    Builder& append_edges(EdgeList edges, Time count = 1) {
      return append(add_snapshot(std::move(edges)), count);
    }

    Time lifetime() const { return lifetime_; }

    // Snapshots are renumbered by first appearance in time, which keeps the
    // numbering independent of vertex labels.
    TemporalGraph build() && {
      if (lifetime_ < 1) throw DomainError("lifetime must be positive");
      std::vector<std::int64_t> remap(pool_.size(), -1);
      TemporalGraph g;
      g.n_ = n_;
      g.lifetime_ = lifetime_;
      for (auto& run : runs_) {
        if (remap[run.snapshot] < 0) {
          remap[run.snapshot] = static_cast<std::int64_t>(g.snapshots_.size());
          g.snapshots_.emplace_back(n_, std::move(pool_[run.snapshot]));
        }
        g.runs_.push_back(Run{run.first, static_cast<std::uint32_t>(remap[run.snapshot])});
      }
      return g;
    }

   private:
    int n_;
    Time lifetime_ = 0;
    std::vector<EdgeList> pool_;
    std::map<EdgeList, std::uint32_t> index_;
    std::vector<Run> runs_;
  };

  int n() const { return n_; }
  Time lifetime() const { return lifetime_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  const std::vector<Run>& runs() const { return runs_; }

  std::uint32_t snapshot_index(Time t) const {
    if (t < 1 || t > lifetime_) throw DomainError("time step out of range");
    auto it = std::upper_bound(runs_.begin(), runs_.end(), t,
                               [](Time x, const Run& r) { return x < r.first; });
    return std::prev(it)->snapshot;
  }

  const Snapshot& at(Time t) const { return snapshots_[snapshot_index(t)]; }

  // Steps covered by the run at index i: [first, last].
  Time run_last(std::size_t i) const {
    return i + 1 < runs_.size() ? runs_[i + 1].first - 1 : lifetime_;
  }

  // The underlying static graph (union over all steps).
  EdgeList underlying_edges() const {
    EdgeList all;
    for (const auto& s : snapshots_) all.insert(all.end(), s.edges().begin(), s.edges().end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
  }

  TemporalGraph relabeled(const Permutation& pi) const {
    if (pi.size() != n_) throw DomainError("relabeling has wrong degree");
    TemporalGraph g;
    g.n_ = n_;
    g.lifetime_ = lifetime_;
    g.runs_ = runs_;
    g.snapshots_.reserve(snapshots_.size());
    for (const auto& s : snapshots_) g.snapshots_.push_back(s.relabeled(pi));
    return g;
  }

  // True iff pi maps every step graph onto itself.
  bool preserved_by(const Permutation& pi) const {
    for (const auto& s : snapshots_) {
      for (const auto& [a, b] : s.edges()) {
        if (!s.has_edge(pi(a), pi(b))) return false;
      }
    }
    return true;
  }

 private:
  int n_ = 0;
  Time lifetime_ = 0;
  std::vector<Snapshot> snapshots_;
  std::vector<Run> runs_;
};

struct ConnectivityReport {
  std::vector<bool> per_step;  // index t-1
  bool all = true;
};

inline ConnectivityReport validate_connected(const TemporalGraph& g) {
  std::vector<bool> per_snapshot;
  per_snapshot.reserve(g.snapshots().size());
  for (const auto& s : g.snapshots()) per_snapshot.push_back(s.connected());
  ConnectivityReport report;
  report.per_step.resize(static_cast<std::size_t>(g.lifetime()));
  for (std::size_t i = 0; i < g.runs().size(); ++i) {
    bool ok = per_snapshot[g.runs()[i].snapshot];
    for (Time t = g.runs()[i].first; t <= g.run_last(i); ++t) report.per_step[t - 1] = ok;
    report.all = report.all && ok;
  }
  return report;
}

inline bool is_connected(const TemporalGraph& g) {
  for (const auto& s : g.snapshots()) {
    if (!s.connected()) return false;
  }
  return true;
}

// Canonical text format:
//   n l
//   t m_t         (for t = 1..l)
//   u v           (m_t lines, u < v)
// Blank lines and lines starting with '#' are ignored by the parser.
inline TemporalGraph parse_temporal_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](std::istringstream& fields) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      fields.clear();
      fields.str(line);
      return true;
    }
    return false;
  };
  auto expect_end = [&](std::istringstream& fields) {
    std::string rest;
    if (fields >> rest) throw ParseError(line_no, "unexpected trailing token '" + rest + "'");
  };

  std::istringstream fields;
  if (!next_line(fields)) throw ParseError(line_no, "missing header");
  long long n = 0, lifetime = 0;
  if (!(fields >> n >> lifetime) || n < 1 || lifetime < 1) {
    throw ParseError(line_no, "malformed header, expected 'n l' with positive values");
  }
  expect_end(fields);

  TemporalGraph::Builder builder(static_cast<int>(n));
  for (Time t = 1; t <= lifetime; ++t) {
    if (!next_line(fields)) throw ParseError(line_no, "missing step " + std::to_string(t));
    long long step = 0, m = -1;
    if (!(fields >> step >> m) || m < 0) throw ParseError(line_no, "malformed step header");
    expect_end(fields);
    if (step != t) {
      throw ParseError(line_no, "step index gap: expected " + std::to_string(t) + ", got " +
                                    std::to_string(step));
    }
    EdgeList edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::vector<std::size_t> edge_lines;
    for (long long i = 0; i < m; ++i) {
      if (!next_line(fields)) throw ParseError(line_no, "missing edge line");
      long long a = 0, b = 0;
      if (!(fields >> a >> b)) throw ParseError(line_no, "malformed edge line");
      expect_end(fields);
      if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError(line_no, "vertex out of range");
      if (a == b) throw ParseError(line_no, "self-loop");
      edges.push_back(normalized(static_cast<Vertex>(a), static_cast<Vertex>(b)));
      edge_lines.push_back(line_no);
    }
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return edges[x] != edges[y] ? edges[x] < edges[y] : edge_lines[x] < edge_lines[y];
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (edges[order[i]] == edges[order[i - 1]]) {
        throw ParseError(edge_lines[order[i]], "duplicate edge");
      }
    }
    builder.append_edges(std::move(edges));
  }
  std::istringstream extra;
  if (next_line(extra)) throw ParseError(line_no, "content after the last step");
  return std::move(builder).build();
}

inline TemporalGraph parse_temporal_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_temporal_graph(in);
}

inline void write_temporal_graph(std::ostream& out, const TemporalGraph& g) {
  out << g.n() << ' ' << g.lifetime() << '\n';
  for (std::size_t i = 0; i < g.runs().size(); ++i) {
    const Snapshot& s = g.snapshots()[g.runs()[i].snapshot];
    for (Time t = g.runs()[i].first; t <= g.run_last(i); ++t) {
      out << t << ' ' << s.edge_count() << '\n';
      for (const auto& [a, b] : s.edges()) out << a << ' ' << b << '\n';
    }
  }
}

inline std::string to_text(const TemporalGraph& g) {
  std::ostringstream os;
  write_temporal_graph(os, g);
  return os.str();
}

}  // namespace tempsym

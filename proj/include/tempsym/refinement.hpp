#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "tempsym/colored_encoding.hpp"

namespace tempsym {

// Ordered partition of 0..n-1. Cells are contiguous ranges of `elems` and are
// named by their start index.
struct OrderedPartition {
  std::vector<Vertex> elems;
  std::vector<int> pos;         // vertex -> index in elems
  std::vector<int> cell_of;     // vertex -> start of its cell
  std::vector<int> cell_end;    // start -> one past the end (valid at starts)
  int cells = 1;

  explicit OrderedPartition(int n = 0)
      : elems(static_cast<std::size_t>(n)),
        pos(static_cast<std::size_t>(n)),
        cell_of(static_cast<std::size_t>(n), 0),
        cell_end(static_cast<std::size_t>(n), n) {
    std::iota(elems.begin(), elems.end(), 0);
    std::iota(pos.begin(), pos.end(), 0);
    cells = n > 0 ? 1 : 0;
  }

  int n() const { return static_cast<int>(elems.size()); }
  bool discrete() const { return cells == n(); }
  int size_of(int start) const { return cell_end[start] - start; }

  std::span<const Vertex> cell(int start) const {
    return {elems.data() + start, static_cast<std::size_t>(cell_end[start] - start)};
  }

  // First smallest non-singleton cell, or -1.
  int target_cell() const {
    int best = -1, best_size = 0;
    for (int s = 0; s < n(); s = cell_end[s]) {
      int sz = cell_end[s] - s;
      if (sz > 1 && (best < 0 || sz < best_size)) {
        best = s;
        best_size = sz;
      }
    }
    return best;
  }

  // Splits v off the front of its cell; returns the start of the singleton.
  int individualize(Vertex v) {
    const int s = cell_of[v], e = cell_end[s];
    const int p = pos[v];
    std::swap(elems[p], elems[s]);
    pos[elems[p]] = p;
    pos[v] = s;
    if (e - s > 1) {
      cell_end[s] = s + 1;
      cell_end[s + 1] = e;
      for (int i = s + 1; i < e; ++i) cell_of[elems[i]] = s + 1;
      ++cells;
    }
    return s;
  }
};

// Equitable refinement against a colored encoding. Splits every cell by the
// multiset of colors joining each vertex to a splitter cell. The returned
// trace hash depends only on label-invariant data.
class Refiner {
 public:
  explicit Refiner(const ColoredEncoding& enc)
      : enc_(enc), acc_(static_cast<std::size_t>(enc.n())), in_queue_(static_cast<std::size_t>(enc.n()), 0) {}

  std::uint64_t refine(OrderedPartition& p, std::span<const int> initial) {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    std::deque<int> queue;
    for (int s : initial) {
      if (!in_queue_[s]) {
        in_queue_[s] = 1;
        queue.push_back(s);
      }
    }
    while (!queue.empty() && !p.discrete()) {
      const int s = queue.front();
      queue.pop_front();
      in_queue_[s] = 0;
      const int e = p.cell_end[s];
      touched_.clear();
      for (int i = s; i < e; ++i) {
        for (const auto& arc : enc_.arcs(p.elems[i])) {
          if (acc_[arc.to].empty()) touched_.push_back(arc.to);
          acc_[arc.to].push_back(arc.color);
        }
      }
      affected_.clear();
      for (Vertex y : touched_) {
        std::sort(acc_[y].begin(), acc_[y].end());
        int c = p.cell_of[y];
        if (p.size_of(c) > 1) affected_.push_back(c);
      }
      std::sort(affected_.begin(), affected_.end());
      affected_.erase(std::unique(affected_.begin(), affected_.end()), affected_.end());
      h = mix(h, static_cast<std::uint64_t>(s));
      for (int c : affected_) split(p, c, queue, h);
      for (Vertex y : touched_) acc_[y].clear();
    }
    for (int s : queue) in_queue_[s] = 0;
    return mix(h, static_cast<std::uint64_t>(p.cells));
  }

  // Individualizes v and refines; returns the trace hash.
  std::uint64_t individualize_and_refine(OrderedPartition& p, Vertex v) {
    int s = p.individualize(v);
    const int one[1] = {s};
    return refine(p, one);
  }

  std::uint64_t refine_all(OrderedPartition& p) {
    std::vector<int> starts;
    for (int s = 0; s < p.n(); s = p.cell_end[s]) starts.push_back(s);
    return refine(p, starts);
  }

  static std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0x100000001b3ULL;
  }

 private:
  void split(OrderedPartition& p, int c, std::deque<int>& queue, std::uint64_t& h) {
    const int e = p.cell_end[c];
    order_.assign(p.elems.begin() + c, p.elems.begin() + e);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return acc_[a] < acc_[b]; });
    if (acc_[order_.front()] == acc_[order_.back()]) return;
    std::vector<std::pair<int, int>> pieces;
    int start = c;
    for (int i = c; i < e; ++i) {
      Vertex v = order_[i - c];
      p.elems[i] = v;
      p.pos[v] = i;
      if (i > c && acc_[v] != acc_[order_[i - c - 1]]) {
        pieces.emplace_back(start, i);
        start = i;
      }
    }
    pieces.emplace_back(start, e);
    const bool was_queued = in_queue_[c];
    int largest = 0;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      auto [a, b] = pieces[k];
      p.cell_end[a] = b;
      for (int i = a; i < b; ++i) p.cell_of[p.elems[i]] = a;
      if (b - a > pieces[largest].second - pieces[largest].first) largest = static_cast<int>(k);
      h = mix(h, static_cast<std::uint64_t>(a) << 20 | static_cast<std::uint64_t>(b - a));
      std::uint64_t kh = acc_[p.elems[a]].size();
      for (int col : acc_[p.elems[a]]) kh = mix(kh, static_cast<std::uint64_t>(col));
      h = mix(h, kh);
    }
    p.cells += static_cast<int>(pieces.size()) - 1;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      int a = pieces[k].first;
      if (in_queue_[a]) continue;
      if (!was_queued && static_cast<int>(k) == largest) continue;
      in_queue_[a] = 1;
      queue.push_back(a);
    }
  }

  const ColoredEncoding& enc_;
  std::vector<std::vector<int>> acc_;
  std::vector<char> in_queue_;
  std::vector<Vertex> touched_;
  std::vector<int> affected_;
  std::vector<Vertex> order_;
};

}  // namespace tempsym

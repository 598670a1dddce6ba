#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/permutation.hpp"
#include "tempsym/temporal_graph.hpp"
#include "tempsym/vertex_set.hpp"

namespace tempsym {

// positions[j] is the vertex at the beginning of step start_time + j. Between
// consecutive positions the walk either waits or crosses one edge of
// G_{start_time + j}.
struct TemporalWalk {
  Time start_time = 1;
  std::vector<Vertex> positions;

  static TemporalWalk at(Vertex v, Time t) { return TemporalWalk{t, {v}}; }

  Time span() const { return static_cast<Time>(positions.size()) - 1; }
  Time end_time() const { return start_time + span(); }
  Vertex front() const { return positions.front(); }
  Vertex back() const { return positions.back(); }
  bool empty() const { return positions.empty(); }

  // Position at the beginning of step t, clamped to the walk's ends.
  Vertex position_at(Time t) const {
    if (t <= start_time) return positions.front();
    if (t >= end_time()) return positions.back();
    return positions[static_cast<std::size_t>(t - start_time)];
  }

  VertexSet visited(int n) const { return make_set(n, positions); }

  friend bool operator==(const TemporalWalk&, const TemporalWalk&) = default;
};

inline bool validate_walk(const TemporalGraph& g, const TemporalWalk& w) {
  if (w.positions.empty() || w.start_time < 1) return false;
  if (w.end_time() > g.lifetime() + 1) return false;
  for (Vertex v : w.positions) {
    if (v < 0 || v >= g.n()) return false;
  }
  for (std::size_t j = 0; j + 1 < w.positions.size(); ++j) {
    Vertex a = w.positions[j], b = w.positions[j + 1];
    if (a != b && !g.at(w.start_time + static_cast<Time>(j)).has_edge(a, b)) return false;
  }
  return true;
}

// Pointwise image of the walk; a valid walk whenever sigma is an automorphism.
inline TemporalWalk apply_automorphism_to_walk(const Permutation& sigma, const TemporalWalk& w) {
  TemporalWalk out{w.start_time, {}};
  out.positions.reserve(w.positions.size());
  for (Vertex v : w.positions) out.positions.push_back(sigma(v));
  return out;
}

// Extends the walk by waiting at its last vertex until the beginning of step t.
inline void wait_until(TemporalWalk& w, Time t) {
  if (t < w.end_time()) throw DomainError("cannot wait backwards in time");
  w.positions.insert(w.positions.end(), static_cast<std::size_t>(t - w.end_time()), w.back());
}

inline TemporalWalk concat_walks(const TemporalGraph& g, const TemporalWalk& first,
                                 const TemporalWalk& second) {
  if (first.empty()) return second;
  if (second.empty()) return first;
  if (second.start_time != first.end_time() || second.front() != first.back()) {
    throw DomainError("walk junction mismatch");
  }
  TemporalWalk out = first;
  out.positions.insert(out.positions.end(), second.positions.begin() + 1, second.positions.end());
  if (out.end_time() > g.lifetime() + 1) throw LifetimeExhausted("concatenated walk exceeds lifetime");
  return out;
}

// In-place variant used by the phase builders.
inline void append_walk(TemporalWalk& into, const TemporalWalk& tail) {
  if (into.empty()) {
    into = tail;
    return;
  }
  if (tail.start_time != into.end_time() || tail.front() != into.back()) {
    throw std::logic_error("walk junction mismatch");
  }
  into.positions.insert(into.positions.end(), tail.positions.begin() + 1, tail.positions.end());
}

// "start_time v0 v1 ... vx"
inline std::string to_text(const TemporalWalk& w) {
  std::ostringstream os;
  os << w.start_time;
  for (Vertex v : w.positions) os << ' ' << v;
  return os.str();
}

inline TemporalWalk parse_walk(const std::string& text) {
  std::istringstream is(text);
  TemporalWalk w;
  if (!(is >> w.start_time)) throw DomainError("walk is missing its start time");
  Vertex v;
  while (is >> v) w.positions.push_back(v);
  if (w.positions.empty()) throw DomainError("walk has no positions");
  return w;
}

}  // namespace tempsym

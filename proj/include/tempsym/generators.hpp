#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/permutation.hpp"
#include "tempsym/temporal_graph.hpp"

namespace tempsym {

namespace detail {

inline EdgeList star_edges(int n, Vertex center) {
  EdgeList edges;
  for (Vertex v = 0; v < n; ++v) {
    if (v != center) edges.push_back(normalized(center, v));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

inline EdgeList circulant_edges(int n, const std::vector<int>& strides) {
  EdgeList edges;
  for (int s : strides) {
    for (Vertex u = 0; u < n; ++u) edges.push_back(normalized(u, static_cast<Vertex>((u + s) % n)));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace detail

// A = {0..r-2} take turns as the star center; the other vertices form B.
inline TemporalGraph gen_star(int n, int r) {
  if (n < 4 || n % 2 != 0) throw DomainError("gen_star needs an even n >= 4");
  if (r < 2 || r > n / 2) throw DomainError("gen_star needs 2 <= r <= n/2");
  TemporalGraph::Builder b(n);
  std::vector<std::uint32_t> ids;
  for (Vertex c = 0; c < r - 1; ++c) ids.push_back(b.add_snapshot(detail::star_edges(n, c)));
  const Time lifetime = static_cast<Time>(n) * n;
  if (r == 2) {
    b.append(ids[0], lifetime);
  } else {
    for (Time t = 1; t <= lifetime; ++t) b.append(ids[static_cast<std::size_t>((t - 1) % (r - 1))]);
  }
  return std::move(b).build();
}

// gen_star(n, n/2) followed by one step that splits B: a path over all of A
// and k = r - n/2 vertices of B, the remaining B vertices hanging off its end.
inline TemporalGraph gen_star_extended(int n, int r) {
  if (n < 4 || n % 2 != 0) throw DomainError("gen_star_extended needs an even n >= 4");
  if (r < n / 2 || r > n) throw DomainError("gen_star_extended needs n/2 <= r <= n");
  if (r == n / 2) return gen_star(n, r);
  const int half = n / 2, k = r - half;
  TemporalGraph::Builder b(n);
  std::vector<std::uint32_t> ids;
  for (Vertex c = 0; c < half - 1; ++c) ids.push_back(b.add_snapshot(detail::star_edges(n, c)));
  const Time lifetime = static_cast<Time>(n) * n;
  for (Time t = 1; t <= lifetime; ++t) b.append(ids[static_cast<std::size_t>((t - 1) % (half - 1))]);
  const int path_len = half - 1 + k;
  EdgeList last;
  for (Vertex v = 0; v + 1 < path_len; ++v) last.push_back({v, v + 1});
  for (Vertex v = path_len; v < n; ++v) last.push_back(normalized(path_len - 1, v));
  std::sort(last.begin(), last.end());
  b.append_edges(last);
  return std::move(b).build();
}

// strides_per_step[t-1] holds the strides of step t; a single entry is
// repeated over the whole lifetime.
inline TemporalGraph gen_circulant(int n, Time lifetime, const std::vector<std::vector<int>>& strides_per_step) {
  if (n < 3) throw DomainError("circulants need n >= 3");
  if (lifetime < 1) throw DomainError("lifetime must be positive");
  if (strides_per_step.size() != 1 && static_cast<Time>(strides_per_step.size()) != lifetime) {
    throw DomainError("need one stride set per step or a single shared set");
  }
  TemporalGraph::Builder b(n);
  std::vector<std::uint32_t> ids;
  for (const auto& strides : strides_per_step) {
    int g = n;
    for (int s : strides) {
      if (s <= 0 || s >= n) throw DomainError("stride out of range");
      g = std::gcd(g, s);
    }
    if (g != 1) throw DomainError("stride set leaves the circulant disconnected (gcd " + std::to_string(g) + ")");
    ids.push_back(b.add_snapshot(detail::circulant_edges(n, strides)));
  }
  if (ids.size() == 1) {
    b.append(ids[0], lifetime);
  } else {
    for (std::uint32_t id : ids) b.append(id);
  }
  return std::move(b).build();
}

// Single-orbit scaling family: each step is the cycle with a random unit
// stride, lifetime n^2.
inline TemporalGraph gen_random_circulant(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> units;
  for (int s = 1; s <= n / 2; ++s) {
    if (std::gcd(s, n) == 1) units.push_back(s);
  }
  if (units.empty()) throw DomainError("no unit stride");
  const Time lifetime = static_cast<Time>(n) * n;
  std::vector<std::vector<int>> strides(static_cast<std::size_t>(lifetime));
  std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
  for (auto& s : strides) s = {units[pick(rng)]};
  return gen_circulant(n, lifetime, strides);
}

struct CyclePhaseInstance {
  int m = 0;
  int n = 0;
  int K = 0;
  std::vector<int> phase_cycles;   // cycle index i per phase (stride 4^i)
  std::vector<int> phase_strides;  // 4^i per phase
  TemporalGraph graph;

  int phases() const { return static_cast<int>(phase_cycles.size()); }
  Time phase_start(int phase) const { return 1 + static_cast<Time>(phase) * K; }  // 0-based phase
};

// Rotations are automorphisms of every circulant step.
inline bool rotation_preserves(const TemporalGraph& g, int shift) {
  std::vector<Vertex> image(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) image[v] = static_cast<Vertex>((v + shift) % g.n());
  return g.preserved_by(Permutation(image));
}

inline CyclePhaseInstance gen_cycle_phase(int m) {
  if (m <= 10 || m % 2 == 0 || m > 29) throw DomainError("cycle-phase instances need an odd m in 11..29");
  CyclePhaseInstance inst;
  inst.m = m;
  inst.n = (1 << m) - 1;
  inst.K = inst.n / 16;
  inst.phase_cycles.push_back(0);
  for (int i = 2; i <= (m - 7) / 2; ++i) inst.phase_cycles.push_back(i);
  for (int i : inst.phase_cycles) inst.phase_strides.push_back(1 << (2 * i));
  TemporalGraph::Builder b(inst.n);
  std::vector<std::uint32_t> ids;
  for (int s : inst.phase_strides) ids.push_back(b.add_snapshot(detail::circulant_edges(inst.n, {s})));
  for (std::uint32_t id : ids) b.append(id, inst.K);
  const Time used = static_cast<Time>(ids.size()) * inst.K;
  const Time lifetime = std::max<Time>(static_cast<Time>(inst.n) * inst.n, used);
  if (lifetime > used) b.append(ids[0], lifetime - used);
  inst.graph = std::move(b).build();
  if (!rotation_preserves(inst.graph, 1)) throw std::logic_error("cycle-phase instance lost its rotation symmetry");
  return inst;
}

enum class Move : int { counter = -1, wait = 0, clockwise = 1 };

struct PhaseRecord {
  int phase = 0;       // 1-based
  int cycle = 0;       // i of C_i
  Vertex pos1 = 0, pos2 = 0;  // positions at the beginning of the phase
  int section1 = 0, section2 = 0;  // S_{i,k} indices at the beginning of the phase
  int gap = 0;         // cycle distance in C_i between the agents
  int choice1 = -1, choice2 = -1;  // bits fixed at the end of this phase (offset / 4^i or Delta)
  int z1 = 0, z2 = 0;  // low bits of the end position before fixing
  bool wrapped = false;  // the agents did not start this phase in their target sections
};

struct AdversaryTranscript {
  int n = 0;
  Vertex start1 = 0, start2 = 0;
  int fixed_bits = 0;
  std::vector<PhaseRecord> phases;
  Time steps_checked = 0;
  Time first_meeting = -1;  // -1: no co-location through all phases
};

namespace detail {

inline Vertex mod_add(Vertex p, std::int64_t d, int n) {
  std::int64_t x = (static_cast<std::int64_t>(p) + d) % n;
  if (x < 0) x += n;
  return static_cast<Vertex>(x);
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t t = 0, nt = 1, r = n, nr = a % n;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return t < 0 ? t + n : t;
}

// Position after the first `phases` phases from `start`.
inline Vertex run_phases(const CyclePhaseInstance& inst, const std::vector<Move>& prog, Vertex start, int phases) {
  Vertex p = start;
  for (int ph = 0; ph < phases; ++ph) {
    const int stride = inst.phase_strides[ph];
    for (int j = 0; j < inst.K; ++j) {
      p = mod_add(p, static_cast<int>(prog[static_cast<std::size_t>(ph) * inst.K + j]) * stride, inst.n);
    }
  }
  return p;
}

}  // namespace detail

// Chooses start vertices bit by bit so that two position-independent
// programs stay apart through every phase, then checks this by simulation.
inline AdversaryTranscript adversary_fix_starts(const CyclePhaseInstance& inst, const std::vector<Move>& prog1,
                                                const std::vector<Move>& prog2) {
  const Time total = static_cast<Time>(inst.phases()) * inst.K;
  if (static_cast<Time>(prog1.size()) < total || static_cast<Time>(prog2.size()) < total) {
    throw DomainError("programs shorter than the phase schedule");
  }
  const int n = inst.n;
  AdversaryTranscript tr;
  tr.n = n;
  Vertex s1 = static_cast<Vertex>((n + 1) / 4), s2 = static_cast<Vertex>(3 * (n + 1) / 4);

  // phase 1: low four bits, end positions = 4 and 12 mod 16
  {
    Vertex e1 = detail::run_phases(inst, prog1, s1, 1);
    Vertex e2 = detail::run_phases(inst, prog2, s2, 1);
    PhaseRecord rec;
    rec.phase = 1;
    rec.z1 = e1 % 16;
    rec.z2 = e2 % 16;
    for (int d = 0; d < 16; ++d) {
      if (rec.choice1 < 0 && detail::mod_add(e1, d, n) % 16 == 4) rec.choice1 = d;
      if (rec.choice2 < 0 && detail::mod_add(e2, d, n) % 16 == 12) rec.choice2 = d;
    }
    if (rec.choice1 < 0 || rec.choice2 < 0) throw std::logic_error("no offset reaches the phase-one target");
    s1 = detail::mod_add(s1, rec.choice1, n);
    s2 = detail::mod_add(s2, rec.choice2, n);
    tr.phases.push_back(rec);
    tr.fixed_bits = 4;
  }
  for (int ph = 2; ph <= inst.phases(); ++ph) {
    PhaseRecord rec;
    rec.phase = ph;
    rec.cycle = inst.phase_cycles[ph - 1];
    if (ph < inst.phases()) {
      const int i = rec.cycle;
      const std::int64_t unit = std::int64_t{1} << (2 * i);
      Vertex e1 = detail::run_phases(inst, prog1, s1, ph);
      Vertex e2 = detail::run_phases(inst, prog2, s2, ph);
      rec.z1 = static_cast<int>(e1 % unit);
      rec.z2 = static_cast<int>(e2 % unit);
      for (int j = 0; j < 4; ++j) {
        Vertex f1 = detail::mod_add(e1, j * unit, n), f2 = detail::mod_add(e2, j * unit, n);
        if (rec.choice1 < 0 && (f1 / unit) % 4 == 0) rec.choice1 = j;
        if (rec.choice2 < 0 && (f2 / unit) % 4 == 2) rec.choice2 = j;
      }
      if (rec.choice1 < 0 || rec.choice2 < 0) throw std::logic_error("no bit choice reaches the section target");
      s1 = detail::mod_add(s1, rec.choice1 * unit, n);
      s2 = detail::mod_add(s2, rec.choice2 * unit, n);
      tr.fixed_bits += 2;
    }
    tr.phases.push_back(rec);
  }
  tr.start1 = s1;
  tr.start2 = s2;

  // final simulation with the fixed starts
  Vertex p1 = s1, p2 = s2;
  for (int ph = 0; ph < inst.phases(); ++ph) {
    PhaseRecord& rec = tr.phases[ph];
    const int stride = inst.phase_strides[ph];
    const std::int64_t unit = stride;
    rec.pos1 = p1;
    rec.pos2 = p2;
    rec.section1 = static_cast<int>(p1 % unit);
    rec.section2 = static_cast<int>(p2 % unit);
    const std::int64_t inv = detail::mod_inverse(stride, n);
    std::int64_t d = ((static_cast<std::int64_t>(p2) - p1) % n + n) % n * inv % n;
    rec.gap = static_cast<int>(std::min<std::int64_t>(d, n - d));
    // a later fix that crossed the n-1 -> 0 seam can move the agents off the
    // sections chosen for them
    if (ph == 1) {
      rec.wrapped = p1 % 16 != 4 || p2 % 16 != 12;
    } else if (ph > 1) {
      const std::int64_t prev = unit / 4;
      rec.wrapped = (p1 / prev) % 4 != 0 || (p2 / prev) % 4 != 2;
    }
    for (int j = 0; j < inst.K; ++j) {
      const std::size_t step = static_cast<std::size_t>(ph) * inst.K + j;
      if (p1 == p2 && tr.first_meeting < 0) tr.first_meeting = static_cast<Time>(step) + 1;
      p1 = detail::mod_add(p1, static_cast<int>(prog1[step]) * stride, n);
      p2 = detail::mod_add(p2, static_cast<int>(prog2[step]) * stride, n);
    }
  }
  if (p1 == p2 && tr.first_meeting < 0) tr.first_meeting = total + 1;
  tr.steps_checked = total;
  return tr;
}

}  // namespace tempsym

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/lanes.hpp"
#include "tempsym/perm_group.hpp"
#include "tempsym/reach.hpp"
#include "tempsym/symmetry.hpp"
#include "tempsym/temporal_graph.hpp"
#include "tempsym/walk.hpp"
#include "tempsym/walk_transform.hpp"

namespace tempsym {

struct ExplorationParams {
  double epsilon = 1.0;
  int c = 2;
  double f = 1.5;
  double phi = 0.0;
  double alpha = 0.5;
};

inline double phi_of(int c) { return 1.0 / std::log2(2.0 - 1.0 / c); }

// Smallest c >= 2 with phi(c) <= 1 + 0.9 epsilon.
inline ExplorationParams choose_c(double epsilon) {
  if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
  int c = 2;
  while (phi_of(c) > 1.0 + 0.9 * epsilon) {
    if (c >= (1 << 24)) throw DomainError("epsilon too small");
    ++c;
  }
  return ExplorationParams{epsilon, c, 2.0 - 1.0 / c, phi_of(c), 1.0 / c};
}

struct ExplorePhase {
  std::string kind;
  int level = 0;
  int progress = 0;
  Time start = 0;
  Time span = 0;
  bool sampled = false;
};

struct ExplorationReport {
  TemporalWalk walk;
  VertexSet visited;
  Time span = 0;
  std::vector<ExplorePhase> phases;
  ExplorationParams params;
  bool fallback = false;
};

// The graph plus its symmetry data, shared by the orbit explorers.
struct ExploreContext {
  const TemporalGraph* g = nullptr;
  Symmetry sym;
  TransformOptions transform;

  const OrbitPartition& partition() const { return sym.partition; }
};

inline ExploreContext make_context(const TemporalGraph& g, const TransformOptions& opt = {}) {
  ExploreContext ctx{&g, analyze_symmetry(g), opt};
  cache_elements(ctx.sym.group, opt.cap);
  return ctx;
}

namespace detail {

inline ExplorationReport finish(const TemporalGraph& g, TemporalWalk walk, std::vector<ExplorePhase> phases) {
  if (!validate_walk(g, walk)) throw std::logic_error("explorer produced an invalid walk");
  ExplorationReport rep;
  rep.visited = walk.visited(g.n());
  rep.span = walk.span();
  rep.walk = std::move(walk);
  rep.phases = std::move(phases);
  return rep;
}

inline int count_in(const TemporalWalk& w, const VertexSet& s) {
  VertexSet seen(s.size());
  for (Vertex v : w.positions) {
    if (s.test(v)) seen.set(v);
  }
  return static_cast<int>(seen.count());
}

// Foremost walk from the end of w to `target`, waiting there until step `at`.
inline void connect_at(const TemporalGraph& g, TemporalWalk& w, Vertex target, Time at) {
  if (at > g.lifetime() + 1) throw LifetimeExhausted("connector runs past the lifetime");
  TemporalWalk hop = foremost_walk(g, w.back(), target, w.end_time());
  if (hop.end_time() > at) throw std::logic_error("connector longer than its buffer");
  wait_until(hop, at);
  append_walk(w, hop);
}

inline void require_time(const TemporalGraph& g, Time t) {
  if (t > g.lifetime() + 1) throw LifetimeExhausted("walk would start past the lifetime");
}

}  // namespace detail

// Greedy: foremost walk to the nearest unvisited target, repeated.
inline ExplorationReport explore_baseline_on(const TemporalGraph& g, Vertex start, Time t0, const VertexSet& targets) {
  if (start < 0 || start >= g.n()) throw DomainError("vertex out of range");
  if (t0 < 1 || t0 > g.lifetime() + 1) throw DomainError("start time out of range");
  TemporalWalk w = TemporalWalk::at(start, t0);
  VertexSet left = targets;
  left.reset(static_cast<std::size_t>(start));
  std::vector<ExplorePhase> log;
  while (left.any()) {
    auto [hop, v] = foremost_to_any(g, w.back(), w.end_time(), left);
    log.push_back({"greedy", 0, 1, w.end_time(), hop.span(), false});
    append_walk(w, hop);
    left.reset(static_cast<std::size_t>(v));
  }
  return detail::finish(g, std::move(w), std::move(log));
}

inline ExplorationReport explore_baseline(const TemporalGraph& g, Vertex start, Time t0 = 1) {
  VertexSet all(static_cast<std::size_t>(g.n()));
  all.set();
  return explore_baseline_on(g, start, t0, all);
}

// Phases of ceil(n^{1/3}) orbit vertices gathered with reach_h_in_orbit,
// transformed onto unvisited vertices and started after an n-step buffer.
inline ExplorationReport explore_orbit_basic(const ExploreContext& ctx, int s, Vertex start, Time t0) {
  const TemporalGraph& g = *ctx.g;
  const OrbitPartition& p = ctx.partition();
  if (s < 0 || s >= p.r()) throw DomainError("orbit id out of range");
  if (start < 0 || start >= g.n() || p.orbit_of[start] != s) throw DomainError("start vertex is not in the orbit");
  const VertexSet orbit = p.orbit_set(s);
  const auto size = static_cast<int>(orbit.count());
  const int n = g.n();
  if (size < std::pow(static_cast<double>(n), 2.0 / 3.0)) {
    auto rep = explore_baseline_on(g, start, t0, orbit);
    for (auto& ph : rep.phases) ph.kind = "small-orbit";
    return rep;
  }
  const int k = std::min(size, static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n)) - 1e-9)));
  TemporalWalk w = TemporalWalk::at(start, t0);
  VertexSet seen = make_set(n, {start});
  std::vector<ExplorePhase> log;
  const Vertex u = p.orbit(s).front();
  while (static_cast<int>(seen.count()) < size) {
    const Time ts = w.end_time() + n;
    detail::require_time(g, ts);
    TemporalWalk part = TemporalWalk::at(u, ts);
    VertexSet xs = make_set(n, {u});
    while (static_cast<int>(xs.count()) < k) {
      auto hit = reach_h_in_orbit(g, p, s, part.back(), part.end_time(), xs.count() + 1);
      int pick = -1;
      for (std::size_t i = 0; i < hit.targets.size(); ++i) {
        if (xs.test(hit.targets[i])) continue;
        if (pick < 0 || hit.witnesses[i].end_time() < hit.witnesses[pick].end_time()) pick = static_cast<int>(i);
      }
      append_walk(part, hit.witnesses[pick]);
      xs.set(hit.targets[pick]);
    }
    auto tr = best_transform(TransformRequest{part, orbit, seen, orbit}, ctx.sym.group, ctx.transform);
    TemporalWalk moved = apply_automorphism_to_walk(tr.sigma, part);
    const Time phase_start = w.end_time();
    detail::connect_at(g, w, moved.front(), ts);
    append_walk(w, moved);
    const auto before = static_cast<int>(seen.count());
    seen |= moved.visited(n) & orbit;
    const int progress = static_cast<int>(seen.count()) - before;
    if (progress <= 0) throw std::logic_error("phase made no progress");
    log.push_back({"phase", 0, progress, phase_start, w.end_time() - phase_start, tr.sampled});
  }
  return detail::finish(g, std::move(w), std::move(log));
}

namespace detail {

struct FractionBuilder {
  const ExploreContext& ctx;
  const OrbitPartition& p;
  int s;
  VertexSet orbit;
  ExplorationParams params;
  int goal;
  std::vector<int> quota;  // quota[L] = min(goal, ceil(f^L))
  std::vector<ExplorePhase> levels;

  FractionBuilder(const ExploreContext& c, int orbit_id, const ExplorationParams& prm)
      : ctx(c), p(c.partition()), s(orbit_id), orbit(c.partition().orbit_set(orbit_id)), params(prm) {
    goal = std::max(1, static_cast<int>(orbit.count()) / params.c);
    quota.push_back(1);
    double fl = 1.0;
    while (quota.back() < goal) {
      fl *= params.f;
      quota.push_back(std::min(goal, static_cast<int>(std::ceil(fl - 1e-9))));
    }
    levels.resize(quota.size());
    for (std::size_t l = 0; l < levels.size(); ++l) {
      levels[l].kind = "level";
      levels[l].level = static_cast<int>(l);
      levels[l].progress = goal;
    }
  }

  int depth() const { return static_cast<int>(quota.size()) - 1; }

  void note(int level, const TemporalWalk& w, int count, bool sampled) {
    auto& rec = levels[level];
    rec.progress = std::min(rec.progress, count);
    rec.span = std::max(rec.span, w.span());
    rec.sampled = rec.sampled || sampled;
  }

  TemporalWalk build(int level, Vertex u, Time t) {
    const TemporalGraph& g = *ctx.g;
    if (level == 0) {
      require_time(g, t);
      TemporalWalk w = TemporalWalk::at(u, t);
      note(0, w, 1, false);
      return w;
    }
    TemporalWalk w1 = build(level - 1, u, t);
    const int k1 = count_in(w1, orbit);
    if (k1 >= quota[level]) {
      note(level, w1, k1, false);
      return w1;
    }
    const std::size_t h = std::min<std::size_t>(static_cast<std::size_t>(params.c) * k1, orbit.count());
    require_time(g, w1.end_time());
    auto hit = reach_h_in_orbit(g, p, s, w1.back(), w1.end_time(), h);
    const Time t2 = w1.end_time() + hit.budget;
    const Vertex x0 = hit.targets.back();
    TemporalWalk w2 = build(level - 1, x0, t2);

    VertexSet starts = make_set(g.n(), hit.targets);
    VertexSet seen = w1.visited(g.n()) & orbit;
    auto tr = best_transform(TransformRequest{w2, orbit, seen, starts}, ctx.sym.group, ctx.transform);
    TemporalWalk moved = apply_automorphism_to_walk(tr.sigma, w2);
    const Vertex entry = moved.front();
    std::size_t idx = 0;
    while (hit.targets[idx] != entry) ++idx;
    TemporalWalk hop = hit.witnesses[idx];
    wait_until(hop, t2);
    append_walk(w1, hop);
    append_walk(w1, moved);
    const int k = count_in(w1, orbit);
    if (k < quota[level]) throw std::logic_error("fraction level below its quota");
    note(level, w1, k, tr.sampled);
    return w1;
  }
};

}  // namespace detail

// Visits at least floor(|S|/c) vertices of S by doubling walks recursively.
inline ExplorationReport explore_fraction(const ExploreContext& ctx, int s, Vertex u, Time t,
                                          const ExplorationParams& params) {
  const OrbitPartition& p = ctx.partition();
  if (s < 0 || s >= p.r()) throw DomainError("orbit id out of range");
  if (u < 0 || u >= ctx.g->n() || p.orbit_of[u] != s) throw DomainError("start vertex is not in the orbit");
  if (params.c < 2) throw DomainError("c must be at least 2");
  detail::FractionBuilder b(ctx, s, params);
  TemporalWalk w = b.build(b.depth(), u, t);
  auto rep = detail::finish(*ctx.g, std::move(w), std::move(b.levels));
  rep.params = params;
  return rep;
}

// Whole-orbit explorer: fraction walks transformed onto unvisited vertices,
// each phase preceded by an n-step buffer. `already` seeds the visited set.
inline ExplorationReport explore_orbit(const ExploreContext& ctx, int s, Vertex u, Time t, double epsilon,
                                       const VertexSet* already = nullptr) {
  const TemporalGraph& g = *ctx.g;
  const OrbitPartition& p = ctx.partition();
  if (s < 0 || s >= p.r()) throw DomainError("orbit id out of range");
  if (u < 0 || u >= g.n()) throw DomainError("vertex out of range");
  if (t < 1 || t > g.lifetime() + 1) throw DomainError("start time out of range");
  const ExplorationParams params = choose_c(0.9 * epsilon);
  const VertexSet orbit = p.orbit_set(s);
  const int n = g.n();
  std::vector<ExplorePhase> log;

  TemporalWalk w = TemporalWalk::at(u, t);
  VertexSet seen = w.visited(n) & orbit;
  if (already) seen |= *already & orbit;
  if (seen.none()) {
    auto [hop, v] = foremost_to_any(g, u, t, orbit);
    log.push_back({"connector", 0, 1, t, hop.span(), false});
    w = hop;
    seen.set(static_cast<std::size_t>(v));
  }
  if (static_cast<int>(orbit.count()) / params.c <= 1) {
    // fraction walks would be single vertices: greedy steps instead
    auto rest = explore_baseline_on(g, w.back(), w.end_time(), orbit - seen);
    for (auto& ph : rest.phases) ph.kind = "small-orbit";
    log.insert(log.end(), rest.phases.begin(), rest.phases.end());
    append_walk(w, rest.walk);
    seen |= rest.visited & orbit;
  }
  const Vertex x0 = p.orbit(s).front();
  while (seen != orbit) {
    const Time ts = w.end_time() + n;
    detail::require_time(g, ts);
    TemporalWalk part = explore_fraction(ctx, s, x0, ts, params).walk;
    auto tr = best_transform(TransformRequest{part, orbit, seen, orbit}, ctx.sym.group, ctx.transform);
    TemporalWalk moved = apply_automorphism_to_walk(tr.sigma, part);
    const Time phase_start = w.end_time();
    detail::connect_at(g, w, moved.front(), ts);
    append_walk(w, moved);
    const auto before = static_cast<int>(seen.count());
    seen |= moved.visited(n) & orbit;
    const int progress = static_cast<int>(seen.count()) - before;
    if (progress <= 0) throw std::logic_error("phase made no progress");
    log.push_back({"phase", 0, progress, phase_start, w.end_time() - phase_start, tr.sampled});
  }
  auto rep = detail::finish(g, std::move(w), std::move(log));
  rep.params = params;
  return rep;
}

inline Time safety_net_bound(int n, int r) {
  return static_cast<Time>(n) * (n - 1) + static_cast<Time>(n) * r;
}

enum class OrbitAlgo { basic, epsilon };

// Orbits one after another: the start's orbit first, then by color. Falls
// back to the greedy baseline when the orbit walk runs out of lifetime or
// exceeds n(n-1) + n r.
inline ExplorationReport explore_all(const ExploreContext& ctx, Vertex start, double epsilon, Time t0 = 1,
                                     OrbitAlgo algo = OrbitAlgo::epsilon) {
  const TemporalGraph& g = *ctx.g;
  const OrbitPartition& p = ctx.partition();
  if (start < 0 || start >= g.n()) throw DomainError("vertex out of range");
  if (t0 < 1 || t0 > g.lifetime() + 1) throw DomainError("start time out of range");
  const ExplorationParams params = choose_c(0.9 * epsilon);
  const int n = g.n();
  const Time cap = safety_net_bound(n, p.r());
  auto one_orbit = [&](int s, const TemporalWalk& w, const VertexSet& seen) {
    if (algo == OrbitAlgo::epsilon) return explore_orbit(ctx, s, w.back(), w.end_time(), epsilon, &seen);
    auto [hop, v] = foremost_to_any(g, w.back(), w.end_time(), p.orbit_set(s));
    auto rep = explore_orbit_basic(ctx, s, v, hop.end_time());
    append_walk(hop, rep.walk);
    rep.walk = std::move(hop);
    return rep;
  };
  try {
    TemporalWalk w = TemporalWalk::at(start, t0);
    std::vector<ExplorePhase> log;
    std::vector<int> order{p.orbit_of[start]};
    for (int s = 0; s < p.r(); ++s) {
      if (s != order[0]) order.push_back(s);
    }
    for (int s : order) {
      VertexSet seen = w.visited(n);
      if ((p.orbit_set(s) - seen).none()) continue;
      auto part = one_orbit(s, w, seen);
      for (auto& ph : part.phases) {
        ph.level = s;
        log.push_back(ph);
      }
      append_walk(w, part.walk);
      if (w.span() > cap) break;
    }
    if (w.span() <= cap) {
      auto rep = detail::finish(g, std::move(w), std::move(log));
      rep.params = params;
      return rep;
    }
  } catch (const LifetimeExhausted&) {
  } catch (const GuaranteeUnmet&) {
  }
  auto rep = explore_baseline(g, start, t0);
  rep.fallback = true;
  rep.params = params;
  if (rep.span > cap) throw std::logic_error("baseline above the safety net");
  return rep;
}

}  // namespace tempsym

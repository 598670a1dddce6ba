#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/explorer.hpp"
#include "tempsym/permutation.hpp"
#include "tempsym/reach.hpp"
#include "tempsym/symmetry.hpp"
#include "tempsym/temporal_graph.hpp"
#include "tempsym/walk.hpp"

namespace tempsym {

// G as one agent sees it: private label of global v is relabeling(v). Agent
// programs only get `graph`; the simulator keeps the relabeling.
struct AgentView {
  TemporalGraph graph;
  Permutation relabeling;
};

inline AgentView make_view(const TemporalGraph& g, const Permutation& pi) {
  if (pi.size() != g.n()) throw DomainError("relabeling has wrong degree");
  return AgentView{g.relabeled(pi), pi};
}

struct MeetReport {
  bool met = false;
  std::optional<Time> meet_time;
  std::optional<Vertex> meet_vertex;
  std::array<std::vector<Vertex>, 2> traces;  // global labels, times 1.. up to the meeting
  std::array<std::vector<Vertex>, 2> chosen;  // each agent's meeting orbit, global labels
  Time mover_arrival = 0;
  Time search_start = 0;
  bool searcher_fallback = false;
};

// Smallest orbit, ties to the smaller color.
inline int choose_meeting_orbit(const OrbitPartition& p) {
  int best = 0;
  for (int s = 1; s < p.r(); ++s) {
    if (p.orbit(s).size() < p.orbit(best).size()) best = s;
  }
  if (p.orbit(best).size() * static_cast<std::size_t>(p.r()) > static_cast<std::size_t>(p.n())) {
    throw std::logic_error("smallest orbit larger than n/r");
  }
  return best;
}

inline int choose_meeting_orbit(const ExploreContext& ctx) { return choose_meeting_orbit(ctx.partition()); }

// Foremost walk into the meeting orbit, then wait to the end of the lifetime.
// Simultaneous arrivals go to the smallest canonical position.
inline TemporalWalk program_mover(const ExploreContext& ctx, Vertex start) {
  const TemporalGraph& g = *ctx.g;
  if (start < 0 || start >= g.n()) throw DomainError("vertex out of range");
  const int s = choose_meeting_orbit(ctx);
  std::vector<int> priority(ctx.sym.canonical.image().begin(), ctx.sym.canonical.image().end());
  TemporalWalk w = foremost_to_any(g, start, 1, ctx.partition().orbit_set(s), priority).first;
  wait_until(w, g.lifetime() + 1);
  return w;
}

struct SearchPlan {
  TemporalWalk walk;
  bool fallback = false;
};

// Wait n steps, then walk the whole meeting orbit.
inline SearchPlan plan_searcher(const ExploreContext& ctx, Vertex start, double epsilon) {
  const TemporalGraph& g = *ctx.g;
  if (start < 0 || start >= g.n()) throw DomainError("vertex out of range");
  const int s = choose_meeting_orbit(ctx);
  const Time t = 1 + g.n();
  if (t > g.lifetime() + 1) throw LifetimeExhausted("lifetime shorter than the searcher's wait");
  TemporalWalk w = TemporalWalk::at(start, 1);
  wait_until(w, t);
  SearchPlan plan;
  try {
    append_walk(w, explore_orbit(ctx, s, start, t, epsilon).walk);
  } catch (const GuaranteeUnmet&) {
    plan.fallback = true;
  } catch (const LifetimeExhausted&) {
    plan.fallback = true;
  }
  if (plan.fallback) {
    w = TemporalWalk::at(start, 1);
    wait_until(w, t);
    append_walk(w, explore_baseline_on(g, start, t, ctx.partition().orbit_set(s)).walk);
  }
  plan.walk = std::move(w);
  return plan;
}

inline TemporalWalk program_searcher(const ExploreContext& ctx, Vertex start, double epsilon) {
  return plan_searcher(ctx, start, epsilon).walk;
}

namespace detail {

inline std::vector<Vertex> to_global(const Permutation& pi_inv, const std::vector<Vertex>& xs) {
  std::vector<Vertex> out;
  out.reserve(xs.size());
  for (Vertex v : xs) out.push_back(pi_inv(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Mover under view pi1, searcher under view pi2; reports the first step at
// which both stand on the same vertex.
inline MeetReport simulate(const TemporalGraph& g, Vertex u1, Vertex u2, const Permutation& pi1,
                           const Permutation& pi2, double epsilon) {
  if (u1 < 0 || u1 >= g.n() || u2 < 0 || u2 >= g.n()) throw DomainError("vertex out of range");
  const AgentView v1 = make_view(g, pi1), v2 = make_view(g, pi2);
  const Permutation inv1 = pi1.inverse(), inv2 = pi2.inverse();

  MeetReport rep;
  TemporalWalk w1, w2;
  {
    const ExploreContext ctx = make_context(v1.graph);
    w1 = program_mover(ctx, pi1(u1));
    rep.chosen[0] = detail::to_global(inv1, ctx.partition().orbit(choose_meeting_orbit(ctx)));
  }
  {
    const ExploreContext ctx = make_context(v2.graph);
    SearchPlan plan = plan_searcher(ctx, pi2(u2), epsilon);
    w2 = std::move(plan.walk);
    rep.searcher_fallback = plan.fallback;
    rep.chosen[1] = detail::to_global(inv2, ctx.partition().orbit(choose_meeting_orbit(ctx)));
  }
  if (!validate_walk(v1.graph, w1) || !validate_walk(v2.graph, w2)) throw std::logic_error("agent walk is invalid");
  rep.search_start = 1 + g.n();
  rep.mover_arrival = 1;
  while (rep.mover_arrival < w1.end_time() && w1.position_at(rep.mover_arrival) != w1.back()) ++rep.mover_arrival;

  for (Time t = 1; t <= g.lifetime(); ++t) {
    const Vertex a = inv1(w1.position_at(t)), b = inv2(w2.position_at(t));
    rep.traces[0].push_back(a);
    rep.traces[1].push_back(b);
    if (a == b) {
      rep.met = true;
      rep.meet_time = t;
      rep.meet_vertex = a;
      break;
    }
  }
  return rep;
}

}  // namespace tempsym

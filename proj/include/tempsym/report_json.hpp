#pragma once

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

#include "tempsym/explorer.hpp"
#include "tempsym/generators.hpp"
#include "tempsym/perm_group.hpp"
#include "tempsym/rendezvous.hpp"
#include "tempsym/symmetry.hpp"
#include "tempsym/walk.hpp"

namespace tempsym {

inline constexpr int kReportSchema = 1;

inline nlohmann::json to_json(const Permutation& p) { return p.image(); }

inline nlohmann::json to_json(const TemporalWalk& w) {
  return {{"start_time", w.start_time}, {"span", w.span()}, {"positions", w.positions}};
}

inline nlohmann::json to_json(const OrbitPartition& p) {
  nlohmann::json orbits = nlohmann::json::array();
  for (int s = 0; s < p.r(); ++s) orbits.push_back({{"color", s}, {"vertices", p.orbit(s)}});
  return {{"n", p.n()}, {"r", p.r()}, {"orbits", orbits}};
}

inline nlohmann::json to_json(const PermGroup& g) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& p : g.generators) gens.push_back(to_json(p));
  nlohmann::json out{{"n", g.n}, {"log10_order", g.log10_order}, {"generators", gens}};
  out["order"] = g.order ? nlohmann::json(*g.order) : nlohmann::json(nullptr);
  return out;
}

inline nlohmann::json to_json(const ExplorationParams& p) {
  return {{"epsilon", p.epsilon}, {"c", p.c}, {"f", p.f}, {"phi", p.phi}, {"alpha", p.alpha}};
}

inline nlohmann::json to_json(const ExplorationReport& rep) {
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& ph : rep.phases) {
    phases.push_back({{"kind", ph.kind},
                      {"level", ph.level},
                      {"progress", ph.progress},
                      {"start", ph.start},
                      {"span", ph.span},
                      {"sampled", ph.sampled}});
  }
  return {{"schema", kReportSchema}, {"params", to_json(rep.params)}, {"phases", phases},
          {"walk", to_json(rep.walk)},   {"span", rep.span},          {"visited", rep.visited.count()},
          {"fallback", rep.fallback}};
}

inline nlohmann::json to_json(const MeetReport& rep) {
  nlohmann::json out{{"schema", kReportSchema},
                     {"met", rep.met},
                     {"mover_arrival", rep.mover_arrival},
                     {"search_start", rep.search_start},
                     {"searcher_fallback", rep.searcher_fallback},
                     {"chosen_orbit", {rep.chosen[0], rep.chosen[1]}},
                     {"traces", {rep.traces[0], rep.traces[1]}}};
  out["meet_time"] = rep.meet_time ? nlohmann::json(*rep.meet_time) : nlohmann::json(nullptr);
  out["meet_vertex"] = rep.meet_vertex ? nlohmann::json(*rep.meet_vertex) : nlohmann::json(nullptr);
  return out;
}

inline nlohmann::json to_json(const AdversaryTranscript& tr) {
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& p : tr.phases) {
    phases.push_back({{"phase", p.phase},
                      {"cycle", p.cycle},
                      {"pos", {p.pos1, p.pos2}},
                      {"section", {p.section1, p.section2}},
                      {"gap", p.gap},
                      {"choice", {p.choice1, p.choice2}},
                      {"wrapped", p.wrapped}});
  }
  nlohmann::json out{{"schema", kReportSchema},   {"n", tr.n},
                     {"starts", {tr.start1, tr.start2}}, {"fixed_bits", tr.fixed_bits},
                     {"steps_checked", tr.steps_checked}, {"phases", phases}};
  out["first_meeting"] = tr.first_meeting < 0 ? nlohmann::json(nullptr) : nlohmann::json(tr.first_meeting);
  return out;
}

// "color: v1 v2 ..." per orbit.
inline std::string to_text(const OrbitPartition& p) {
  std::ostringstream os;
  for (int s = 0; s < p.r(); ++s) {
    os << s << ':';
    for (Vertex v : p.orbit(s)) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

// One generator per line.
inline std::string to_text(const PermGroup& g) {
  std::ostringstream os;
  for (const auto& p : g.generators) os << p.to_string() << '\n';
  return os.str();
}

}  // namespace tempsym

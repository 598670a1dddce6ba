#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tempsym/report_json.hpp"
#include "tempsym/stats.hpp"
#include "tempsym/tempsym.hpp"

using namespace tempsym;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  std::string format = "text";
  double epsilon = 1.0;
  std::uint64_t seed = 1;
};

TemporalGraph load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return parse_temporal_graph(in);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

Permutation seeded_permutation(std::mt19937_64& rng, int n) {
  std::vector<Vertex> image(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) image[i] = i;
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(std::move(image));
}

void print_walk_summary(std::ostream& os, const ExplorationReport& rep) {
  os << "span " << rep.span << "\n";
  os << "visited " << rep.visited.count() << "\n";
  os << "fallback " << (rep.fallback ? "yes" : "no") << "\n";
  os << "c " << rep.params.c << "\n";
  os << "phases " << rep.phases.size() << "\n";
  for (const auto& ph : rep.phases) {
    os << "  " << ph.kind << " orbit=" << ph.level << " progress=" << ph.progress << " start=" << ph.start
       << " span=" << ph.span << (ph.sampled ? " sampled" : "") << "\n";
  }
  os << "walk " << to_text(rep.walk) << "\n";
}

int cmd_orbits(const RunConfig& cfg) {
  auto g = load(cfg.input);
  auto sym = analyze_symmetry(g);
  Output out(cfg.output);
  if (cfg.format == "json") {
    json j{{"schema", kReportSchema}, {"partition", to_json(sym.partition)}, {"group", to_json(sym.group)}};
    out.os() << j.dump(2) << "\n";
    return 0;
  }
  out.os() << "n=" << g.n() << "\n";
  out.os() << "r=" << sym.partition.r() << "\n";
  if (sym.group.order) {
    out.os() << "order=" << *sym.group.order << "\n";
  } else {
    out.os() << "log10_order=" << std::setprecision(6) << sym.group.log10_order << "\n";
  }
  out.os() << to_text(sym.partition);
  return 0;
}

int cmd_explore(const RunConfig& cfg, Vertex start, Time t0, const std::string& algo) {
  auto g = load(cfg.input);
  ExplorationReport rep;
  if (algo == "baseline") {
    rep = explore_baseline(g, start, t0);
    rep.params = choose_c(0.9 * cfg.epsilon);
  } else {
    auto ctx = make_context(g, TransformOptions{kDefaultEnumerationCap, cfg.seed});
    rep = explore_all(ctx, start, cfg.epsilon, t0, algo == "orbit53" ? OrbitAlgo::basic : OrbitAlgo::epsilon);
  }
  Output out(cfg.output);
  if (cfg.format == "json") {
    out.os() << to_json(rep).dump(2) << "\n";
  } else {
    print_walk_summary(out.os(), rep);
  }
  return 0;
}

int cmd_rendezvous(const RunConfig& cfg, Vertex u1, Vertex u2) {
  auto g = load(cfg.input);
  std::mt19937_64 rng(cfg.seed);
  const Permutation pi1 = seeded_permutation(rng, g.n()), pi2 = seeded_permutation(rng, g.n());
  auto rep = simulate(g, u1, u2, pi1, pi2, cfg.epsilon);
  Output out(cfg.output);
  if (cfg.format == "json") {
    json j = to_json(rep);
    j["relabelings"] = {to_json(pi1), to_json(pi2)};
    out.os() << j.dump(2) << "\n";
  } else {
    out.os() << "met " << (rep.met ? "yes" : "no") << "\n";
    if (rep.met) out.os() << "meet_time " << *rep.meet_time << "\nmeet_vertex " << *rep.meet_vertex << "\n";
    out.os() << "mover_arrival " << rep.mover_arrival << "\n";
    out.os() << "search_start " << rep.search_start << "\n";
    out.os() << "orbit";
    for (Vertex v : rep.chosen[0]) out.os() << ' ' << v;
    out.os() << "\n";
  }
  return rep.met ? 0 : 1;
}

void write_graph(const RunConfig& cfg, const TemporalGraph& g) {
  Output out(cfg.output);
  write_temporal_graph(out.os(), g);
}

std::vector<std::vector<int>> parse_strides(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream steps(text);
  std::string step;
  while (std::getline(steps, step, ';')) {
    std::vector<int> strides;
    std::stringstream items(step);
    std::string item;
    while (std::getline(items, item, ',')) {
      try {
        strides.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw DomainError("bad stride '" + item + "'");
      }
    }
    out.push_back(strides);
  }
  if (out.empty()) throw DomainError("no strides given");
  return out;
}

struct ScalingRow {
  int n;
  double value;
  bool fallback;
};

void print_scaling(const RunConfig& cfg, const std::string& what, const std::vector<ScalingRow>& rows) {
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r.n);
    ys.push_back(r.value);
  }
  const double slope = loglog_slope(xs, ys);
  Output out(cfg.output);
  if (cfg.format == "json") {
    json table = json::array();
    for (const auto& r : rows) table.push_back({{"n", r.n}, {what, r.value}, {"fallback", r.fallback}});
    out.os() << json{{"schema", kReportSchema}, {"epsilon", cfg.epsilon}, {"rows", table}, {"slope", slope}}.dump(2)
             << "\n";
    return;
  }
  out.os() << "n\t" << what << "\tfallback\n";
  for (const auto& r : rows) out.os() << r.n << '\t' << r.value << '\t' << (r.fallback ? "yes" : "no") << "\n";
  out.os() << "slope " << std::fixed << std::setprecision(4) << slope << "\n";
}

int cmd_bench_explore(const RunConfig& cfg, const std::vector<int>& sizes) {
  std::vector<ScalingRow> rows;
  for (int n : sizes) {
    auto g = gen_random_circulant(n, cfg.seed + static_cast<std::uint64_t>(n));
    auto ctx = make_context(g, TransformOptions{kDefaultEnumerationCap, cfg.seed});
    auto rep = explore_orbit(ctx, 0, 0, 1, cfg.epsilon);
    rows.push_back({n, static_cast<double>(rep.span), rep.fallback});
  }
  print_scaling(cfg, "span", rows);
  return 0;
}

// Worst meet time over `trials` seeded placements and relabelings per size.
int cmd_bench_rendezvous(const RunConfig& cfg, const std::vector<int>& sizes, int trials) {
  if (trials < 1) throw DomainError("trials must be positive");
  std::vector<ScalingRow> rows;
  std::mt19937_64 rng(cfg.seed);
  for (int n : sizes) {
    auto g = gen_random_circulant(n, cfg.seed + static_cast<std::uint64_t>(n));
    ScalingRow row{n, 0, false};
    for (int i = 0; i < trials; ++i) {
      std::uniform_int_distribution<Vertex> pick(0, n - 1);
      const Vertex u1 = pick(rng), u2 = pick(rng);
      const Permutation pi1 = seeded_permutation(rng, n), pi2 = seeded_permutation(rng, n);
      auto rep = simulate(g, u1, u2, pi1, pi2, cfg.epsilon);
      if (!rep.met) throw std::logic_error("agents did not meet");
      row.value = std::max(row.value, static_cast<double>(*rep.meet_time));
      row.fallback = row.fallback || rep.searcher_fallback;
    }
    rows.push_back(row);
  }
  print_scaling(cfg, "meet_time", rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal graph symmetry, exploration and rendezvous toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--out", cfg.output, "output file (default stdout)");
  app.add_option("--seed", cfg.seed, "seed for every random choice");

  auto* orbits = app.add_subcommand("orbits", "automorphism orbits and their colors");
  orbits->add_option("file", cfg.input)->required();

  Vertex start = 0, u1 = 0, u2 = 0, v = 0;
  Time t0 = 1;
  std::string algo = "epsilon";
  auto* explore = app.add_subcommand("explore", "exploration walk from a start vertex");
  explore->add_option("file", cfg.input)->required();
  explore->add_option("--start", start);
  explore->add_option("--t0", t0);
  explore->add_option("--algo", algo)->check(CLI::IsMember({"baseline", "orbit53", "epsilon"}));
  explore->add_option("--eps", cfg.epsilon);

  auto* rendezvous = app.add_subcommand("rendezvous", "two-agent rendezvous under seeded relabelings");
  rendezvous->add_option("file", cfg.input)->required();
  rendezvous->add_option("--u1", u1);
  rendezvous->add_option("--u2", u2);
  rendezvous->add_option("--eps", cfg.epsilon);

  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  int n = 0, r = 0, m = 0;
  Time lifetime = 0;
  std::string strides;
  auto* star = gen->add_subcommand("star", "star family with r - 1 rotating centers");
  star->add_option("--n", n)->required();
  star->add_option("--r", r)->required();
  auto* star_ext = gen->add_subcommand("star-ext", "star family with an extra splitting step");
  star_ext->add_option("--n", n)->required();
  star_ext->add_option("--r", r)->required();
  auto* cyclephase = gen->add_subcommand("cyclephase", "single-orbit cycle-phase instance on 2^m - 1 vertices");
  cyclephase->add_option("--m", m)->required();
  bool transcript = false;
  cyclephase->add_flag("--transcript", transcript, "print the adversary transcript for two waiting agents");
  auto* circulant = gen->add_subcommand("circulant", "circulant steps");
  circulant->add_option("--n", n)->required();
  circulant->add_option("--lifetime", lifetime);
  circulant->add_option("--strides", strides, "e.g. \"1,3\" for every step or \"1;2;1\" per step");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
  oracle_cmd->require_subcommand(1);
  auto* o_aut = oracle_cmd->add_subcommand("aut", "all automorphisms by enumeration");
  o_aut->add_option("file", cfg.input)->required();
  auto* o_fore = oracle_cmd->add_subcommand("foremost", "earliest arrival end time");
  o_fore->add_option("file", cfg.input)->required();
  o_fore->add_option("--u", u1)->required();
  o_fore->add_option("--v", v)->required();
  o_fore->add_option("--t0", t0);
  auto* o_exp = oracle_cmd->add_subcommand("explore", "optimal exploration span");
  o_exp->add_option("file", cfg.input)->required();
  o_exp->add_option("--start", start);
  o_exp->add_option("--t0", t0);

  auto* bench = app.add_subcommand("bench", "scaling sweeps on single-orbit circulants");
  bench->require_subcommand(1);
  std::vector<int> sizes{64, 128, 256, 512};
  auto* b_exp = bench->add_subcommand("explore-scaling", "explore_orbit span per size");
  b_exp->add_option("--sizes", sizes)->delimiter(',');
  b_exp->add_option("--eps", cfg.epsilon);
  auto* b_rv = bench->add_subcommand("rendezvous-scaling", "meet time per size");
  b_rv->add_option("--sizes", sizes)->delimiter(',');
  b_rv->add_option("--eps", cfg.epsilon);
  int trials = 8;
  b_rv->add_option("--trials", trials, "placements per size; the worst meet time is reported");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*orbits) return cmd_orbits(cfg);
    if (*explore) return cmd_explore(cfg, start, t0, algo);
    if (*rendezvous) return cmd_rendezvous(cfg, u1, u2);
    if (*star) {
      write_graph(cfg, gen_star(n, r));
    } else if (*star_ext) {
      write_graph(cfg, gen_star_extended(n, r));
    } else if (*cyclephase) {
      auto inst = gen_cycle_phase(m);
      if (transcript) {
        const Time total = static_cast<Time>(inst.phases()) * inst.K;
        std::vector<Move> wait(static_cast<std::size_t>(total), Move::wait);
        Output out(cfg.output);
        out.os() << to_json(adversary_fix_starts(inst, wait, wait)).dump(2) << "\n";
      } else {
        write_graph(cfg, inst.graph);
      }
    } else if (*circulant) {
      if (lifetime == 0) lifetime = static_cast<Time>(n) * n;
      write_graph(cfg, strides.empty() ? gen_random_circulant(n, cfg.seed)
                                       : gen_circulant(n, lifetime, parse_strides(strides)));
    } else if (*o_aut) {
      auto g = load(cfg.input);
      auto group = oracle::brute_automorphisms(g);
      Output out(cfg.output);
      if (cfg.format == "json") {
        json elems = json::array();
        for (const auto& p : *group.elements) elems.push_back(to_json(p));
        out.os() << json{{"schema", kReportSchema}, {"order", group.elements->size()}, {"elements", elems}}.dump(2)
                 << "\n";
      } else {
        out.os() << "order=" << group.elements->size() << "\n";
        for (const auto& p : *group.elements) out.os() << p.to_string() << "\n";
      }
    } else if (*o_fore) {
      auto g = load(cfg.input);
      Output out(cfg.output);
      out.os() << oracle::foremost_oracle(g, u1, v, t0) << "\n";
    } else if (*o_exp) {
      auto g = load(cfg.input);
      Output out(cfg.output);
      out.os() << oracle::optimal_exploration_span(g, start, t0) << "\n";
    } else if (*b_exp) {
      return cmd_bench_explore(cfg, sizes);
    } else if (*b_rv) {
      return cmd_bench_rendezvous(cfg, sizes, trials);
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include <gtest/gtest.h>

#include <random>

#include "tempsym/generators.hpp"
#include "tempsym/lanes.hpp"
#include "tempsym/oracle.hpp"
#include "tempsym/symmetry.hpp"
#include "test_support.hpp"

using namespace tempsym;

namespace {

bool boundary_regular(const TemporalGraph& g, const OrbitPartition& p, Time t) {
  for (int s = 0; s < p.r(); ++s) {
    for (int s2 = 0; s2 < p.r(); ++s2) {
      if (s == s2) continue;
      int first = -1;
      for (Vertex v : p.orbit(s)) {
        int d = 0;
        for (Vertex w : g.at(t).neighbors(v)) d += p.orbit_of[w] == s2;
        if (first < 0) first = d;
        if (d != first) return false;
      }
    }
  }
  return true;
}

VertexSet random_subset(std::mt19937_64& rng, int n, const std::vector<Vertex>& pool) {
  std::uniform_int_distribution<std::size_t> size(1, pool.size());
  std::vector<Vertex> v = pool;
  std::shuffle(v.begin(), v.end(), rng);
  v.resize(size(rng));
  return make_set(n, v);
}

}  // namespace

TEST(Lane, Trivial) {
  auto g = gen_star(6, 3);
  auto p = orbit_partition(g);
  auto x = make_set(6, {p.orbit(p.orbit_of[5]).front()});
  EXPECT_EQ(lane(g, p, x, 4, 4).members, x);

  auto c = gen_circulant(10, 2, {{1}, {3}});
  auto pc = orbit_partition(c);
  ASSERT_EQ(pc.r(), 1);
  auto xc = make_set(10, {2, 7});
  EXPECT_EQ(lane(c, pc, xc, 1, 3).members, xc);
}

TEST(Lane, RejectsMixedSource) {
  auto g = gen_star(6, 3);
  auto p = orbit_partition(g);
  EXPECT_THROW(lane(g, p, make_set(6, {0, 5}), 1, 2), DomainError);
}

TEST(Lane, StarMeetsEveryOrbit) {
  auto g = gen_star(6, 3);
  auto p = orbit_partition(g);
  ASSERT_EQ(p.r(), 3);
  const int b = p.orbit_of[5];
  auto l = lane(g, p, make_set(6, {5}), 1, 1 + p.r());
  for (int o = 0; o < p.r(); ++o) {
    bool hit = false;
    for (Vertex v : p.orbit(o)) hit = hit || l.members.test(v);
    EXPECT_TRUE(hit) << "orbit " << o;
  }
  EXPECT_TRUE(reachability_between_orbits_check(g, p, make_set(6, {5}), b, 1));
}

TEST(Lane, BetweenOrbitsExamples) {
  auto g = gen_star(8, 4);
  auto p = orbit_partition(g);
  const int b = p.orbit_of[7];
  ASSERT_EQ(p.orbit(b).size(), 5u);
  auto x = make_set(8, {p.orbit(b)[0], p.orbit(b)[1]});
  for (int o = 0; o < p.r(); ++o) {
    if (o == b) continue;
    ASSERT_EQ(p.orbit(o).size(), 1u);
    EXPECT_TRUE(reachability_between_orbits_check(g, p, x, o, 1));
  }
  VertexSet all_b = p.orbit_set(b);
  EXPECT_TRUE(reachability_between_orbits_check(g, p, all_b, b, 3));
}

TEST(Lane, BetweenOrbitsHarness) {
  std::mt19937_64 rng(606);
  std::vector<TemporalGraph> pool;
  for (int n : {6, 8, 10, 12}) {
    for (int r = 2; r <= n / 2; ++r) pool.push_back(gen_star(n, r));
  }
  for (int r = 5; r <= 8; ++r) pool.push_back(gen_star_extended(8, r));
  pool.push_back(gen_circulant(12, 3, {{1}, {5}, {1, 4}}));
  for (int i = 0; i < 30; ++i) {
    std::uniform_int_distribution<int> pm(2, 6), pk(2, 4), pl(4, 10);
    const int m = pm(rng), k = pk(rng);
    pool.push_back(testing_support::random_layered(rng, m, k, pl(rng) + k));
  }
  for (int i = 0; i < 20; ++i) {
    auto g = testing_support::random_connected(rng, 6, 4);
    if (g.lifetime() > g.n()) pool.push_back(std::move(g));
  }

  int checks = 0, nontrivial = 0;
  for (std::size_t gi = 0; checks < 1500; gi = (gi + 1) % pool.size()) {
    const auto& g = pool[gi];
    auto p = orbit_partition(g);
    if (g.lifetime() < p.r() + 1) continue;
    std::uniform_int_distribution<int> ps(0, p.r() - 1);
    std::uniform_int_distribution<Time> pt(1, g.lifetime() - p.r());
    const int s = ps(rng), s2 = ps(rng);
    const Time t = pt(rng);
    ASSERT_TRUE(boundary_regular(g, p, t));
    auto x = random_subset(rng, g.n(), p.orbit(s));
    nontrivial += p.r() < g.n();
    ASSERT_TRUE(reachability_between_orbits_check(g, p, x, s2, t))
        << "instance " << gi << " t=" << t << " S=" << s << " S'=" << s2;
    ++checks;
  }
  EXPECT_GE(checks, 1000);
  EXPECT_GT(nontrivial, 1000);
}

TEST(ReachH, SingleTarget) {
  auto g = gen_star(8, 3);
  auto p = orbit_partition(g);
  const int b = p.orbit_of[7];
  auto res = reach_h_in_orbit(g, p, b, 7, 5, 1);
  EXPECT_EQ(res.targets, std::vector<Vertex>{7});
  EXPECT_EQ(res.budget, 0);
  ASSERT_EQ(res.witnesses.size(), 1u);
  EXPECT_EQ(res.witnesses[0], TemporalWalk::at(7, 5));
}

TEST(ReachH, Errors) {
  auto g = gen_star(8, 3);
  auto p = orbit_partition(g);
  const int b = p.orbit_of[7];
  EXPECT_THROW(reach_h_in_orbit(g, p, b, 7, 1, p.orbit(b).size() + 1), DomainError);
  EXPECT_THROW(reach_h_in_orbit(g, p, b, 0, 1, 1), DomainError);
}

void check_witnesses(const TemporalGraph& g, const OrbitPartition& p, const ReachTarget& res, std::size_t h) {
  ASSERT_EQ(res.targets.size(), h);
  ASSERT_EQ(res.witnesses.size(), h);
  EXPECT_LE(res.budget, res.bound);
  std::vector<Vertex> sorted = res.targets;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i < h; ++i) {
    const auto& w = res.witnesses[i];
    EXPECT_TRUE(validate_walk(g, w));
    EXPECT_EQ(w.start_time, res.t);
    EXPECT_EQ(w.front(), res.start);
    EXPECT_EQ(w.back(), res.targets[i]);
    EXPECT_EQ(p.orbit_of[res.targets[i]], res.orbit);
    EXPECT_LE(w.end_time(), res.t + res.budget);
  }
}

TEST(ReachH, CirculantSingleOrbit) {
  auto g = gen_random_circulant(64, 5);
  auto p = orbit_partition(g);
  ASSERT_EQ(p.r(), 1);
  auto res = reach_h_in_orbit(g, p, 0, 0, 1, 8);
  check_witnesses(g, p, res, 8);
}

TEST(ReachH, StarAgainstOracle) {
  auto g = gen_star(12, 4);
  auto p = orbit_partition(g);
  const int b = p.orbit_of[11];
  ASSERT_EQ(p.orbit(b).size(), 9u);
  for (Time t : {1, 2, 3, 7}) {
    auto res = reach_h_in_orbit(g, p, b, 11, t, 3);
    check_witnesses(g, p, res, 3);
    for (Vertex v : res.targets) EXPECT_LE(oracle::foremost_oracle(g, 11, v, t), t + res.budget);
  }
}

TEST(ReachH, RandomInstances) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 60; ++i) {
    std::uniform_int_distribution<int> pm(3, 8), pk(1, 3);
    const int m = pm(rng), k = pk(rng);
    auto g = testing_support::random_layered(rng, m, k, m * m * k * k);
    auto p = orbit_partition(g);
    std::uniform_int_distribution<Vertex> pu(0, g.n() - 1);
    const Vertex u = pu(rng);
    const int s = p.orbit_of[u];
    std::uniform_int_distribution<std::size_t> ph(1, p.orbit(s).size());
    const std::size_t h = ph(rng);
    auto res = reach_h_in_orbit(g, p, s, u, 1 + i % 5, h);
    check_witnesses(g, p, res, h);
  }
}

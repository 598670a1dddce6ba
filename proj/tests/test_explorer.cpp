#include <gtest/gtest.h>

#include <random>

#include "tempsym/explorer.hpp"
#include "tempsym/generators.hpp"
#include "tempsym/oracle.hpp"
#include "test_support.hpp"

using namespace tempsym;

namespace {

void expect_covers(const TemporalGraph& g, const ExplorationReport& rep, const VertexSet& want) {
  EXPECT_TRUE(validate_walk(g, rep.walk));
  EXPECT_EQ(rep.visited, rep.walk.visited(g.n()));
  EXPECT_EQ(rep.span, rep.walk.span());
  EXPECT_TRUE(want.is_subset_of(rep.visited));
}

VertexSet everything(int n) {
  VertexSet s(static_cast<std::size_t>(n));
  s.set();
  return s;
}

}  // namespace

TEST(ChooseC, Examples) {
  EXPECT_EQ(choose_c(1.0).c, 2);
  EXPECT_NEAR(choose_c(1.0).phi, 1.7095, 1e-4);
  EXPECT_EQ(choose_c(0.5).c, 3);
  EXPECT_NEAR(choose_c(0.5).phi, 1.357, 1e-3);
  EXPECT_EQ(choose_c(1e9).c, 2);
  EXPECT_THROW(choose_c(0.0), DomainError);
  for (double eps : {0.05, 0.1, 0.3, 0.7, 2.0}) {
    auto prm = choose_c(eps);
    EXPECT_LE(prm.phi, 1 + 0.9 * eps);
    if (prm.c > 2) {
      EXPECT_GT(phi_of(prm.c - 1), 1 + 0.9 * eps);
    }
    EXPECT_DOUBLE_EQ(prm.f, 1.0 + (prm.c - 1.0) / prm.c);
    EXPECT_DOUBLE_EQ(prm.alpha, 1.0 / prm.c);
  }
}

TEST(Baseline, Examples) {
  TemporalGraph::Builder b(1);
  b.append_edges({});
  auto one = std::move(b).build();
  EXPECT_EQ(explore_baseline(one, 0).span, 0);

  auto g2 = testing_support::load_sample("tri_path.tg");
  auto rep = explore_baseline(g2, 0, 1);
  expect_covers(g2, rep, everything(3));
  EXPECT_LE(rep.span, 2);
  EXPECT_EQ(oracle::optimal_exploration_span(g2, 0, 1), 2);

  auto star = gen_star(10, 5);
  for (Vertex v = 0; v < 10; ++v) {
    auto r = explore_baseline(star, v, 1);
    expect_covers(star, r, everything(10));
    EXPECT_LE(r.span, 90);
    EXPECT_GE(r.span, oracle::optimal_exploration_span(star, v, 1));
  }
}

TEST(Baseline, RandomWithinQuadraticBound) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<int> pn(1, 9);
    const int n = pn(rng);
    TemporalGraph::Builder b(n);
    for (int t = 0; t < n * n; ++t) b.append_edges(testing_support::random_connected_snapshot(rng, n, 0.1));
    auto g = std::move(b).build();
    auto rep = explore_baseline(g, 0, 1);
    expect_covers(g, rep, everything(n));
    EXPECT_LE(rep.span, static_cast<Time>(n) * (n - 1));
    EXPECT_GE(rep.span, oracle::optimal_exploration_span(g, 0, 1));
  }
}

TEST(OrbitBasic, Examples) {
  auto star = gen_star(12, 4);
  auto ctx = make_context(star);
  const auto& p = ctx.partition();
  const int a = p.orbit_of[0], b = p.orbit_of[11];
  auto single = explore_orbit_basic(ctx, a, p.orbit(a)[0], 3);
  EXPECT_EQ(single.span, 0);
  auto rb = explore_orbit_basic(ctx, b, 11, 1);
  expect_covers(star, rb, p.orbit_set(b));

  auto c16 = gen_random_circulant(16, 3);
  auto cc = make_context(c16);
  ASSERT_EQ(cc.partition().r(), 1);
  auto rc = explore_orbit_basic(cc, 0, 5, 1);
  expect_covers(c16, rc, everything(16));
  for (const auto& ph : rc.phases) EXPECT_GT(ph.progress, 0);
}

TEST(OrbitBasic, LargerCirculantUsesPhases) {
  auto g = gen_random_circulant(64, 11);
  auto ctx = make_context(g);
  auto rep = explore_orbit_basic(ctx, 0, 0, 1);
  expect_covers(g, rep, everything(64));
  ASSERT_FALSE(rep.phases.empty());
  EXPECT_EQ(rep.phases[0].kind, "phase");
}

TEST(Fraction, Examples) {
  auto c64 = gen_random_circulant(64, 8);
  auto ctx = make_context(c64);
  auto rep = explore_fraction(ctx, 0, 0, 1, choose_c(1.0));
  expect_covers(c64, rep, VertexSet(64));
  EXPECT_GE(rep.visited.count(), 32u);
  double fl = 1.0;
  for (const auto& lv : rep.phases) {
    EXPECT_GE(lv.progress, std::min(32, static_cast<int>(std::ceil(fl - 1e-9)))) << "level " << lv.level;
    fl *= 1.5;
  }

  auto c128 = gen_random_circulant(128, 9);
  auto ctx128 = make_context(c128);
  ExplorationParams p3 = choose_c(0.5);
  ASSERT_EQ(p3.c, 3);
  auto rep3 = explore_fraction(ctx128, 0, 7, 1, p3);
  EXPECT_TRUE(validate_walk(c128, rep3.walk));
  EXPECT_GE(rep3.visited.count(), 42u);

  auto trivial = explore_fraction(ctx, 0, 3, 2, ExplorationParams{1.0, 64, 2.0 - 1.0 / 64, phi_of(64), 1.0 / 64});
  EXPECT_EQ(trivial.walk, TemporalWalk::at(3, 2));
}

TEST(ExploreOrbit, Examples) {
  auto g2 = testing_support::load_sample("tri_path.tg");
  auto ctx = make_context(g2);
  const auto& p = ctx.partition();
  const int s = p.orbit_of[0];
  ASSERT_EQ(p.orbit(s), (std::vector<Vertex>{0, 2}));
  auto rep = explore_orbit(ctx, s, 1, 1, 1.0);
  EXPECT_TRUE(validate_walk(g2, rep.walk));
  EXPECT_TRUE(rep.visited.test(0) && rep.visited.test(2));

  auto star = gen_star(8, 3);
  auto cs = make_context(star);
  const int a = cs.partition().orbit_of[0];
  auto single = explore_orbit(cs, a, 7, 1, 1.0);
  EXPECT_EQ(single.walk, foremost_walk(star, 7, 0, 1));

  auto c256 = gen_random_circulant(256, 4);
  auto cc = make_context(c256);
  auto big = explore_orbit(cc, 0, 0, 1, 1.0);
  expect_covers(c256, big, everything(256));
  EXPECT_LT(big.span, 256 * 255);
}

TEST(ExploreAll, Examples) {
  TemporalGraph::Builder b(1);
  b.append_edges({});
  auto one = std::move(b).build();
  EXPECT_EQ(explore_all(make_context(one), 0, 1.0).span, 0);

  auto g1 = testing_support::load_sample("tri_asym.tg");
  for (Vertex v = 0; v < 3; ++v) {
    auto rep = explore_all(make_context(g1), v, 1.0);
    expect_covers(g1, rep, everything(3));
  }

  auto star = gen_star(16, 4);
  auto ctx = make_context(star);
  for (Vertex v = 0; v < 16; ++v) {
    auto rep = explore_all(ctx, v, 1.0);
    expect_covers(star, rep, everything(16));
    EXPECT_LE(rep.span, 256);
  }
}

TEST(ExploreAll, RandomSymmetricInstances) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    std::uniform_int_distribution<int> pm(2, 7), pk(1, 3);
    const int m = pm(rng), k = pk(rng);
    auto g = testing_support::random_layered(rng, m, k, m * m * k * k);
    auto ctx = make_context(g);
    std::uniform_int_distribution<Vertex> pu(0, g.n() - 1);
    const Vertex u = pu(rng);
    for (auto algo : {OrbitAlgo::epsilon, OrbitAlgo::basic}) {
      auto rep = explore_all(ctx, u, 1.0, 1, algo);
      expect_covers(g, rep, everything(g.n()));
      EXPECT_LE(rep.span, safety_net_bound(g.n(), ctx.partition().r()));
    }
  }
}

TEST(ExploreAll, LaterStartTime) {
  auto c = gen_circulant(12, 144, {{1}});
  auto ctx = make_context(c);
  auto rep = explore_all(ctx, 3, 1.0, 40);
  expect_covers(c, rep, everything(12));
  EXPECT_EQ(rep.walk.start_time, 40);
  EXPECT_THROW(explore_all(ctx, 3, 1.0, 146), DomainError);
}

#include <gtest/gtest.h>

#include <random>

#include "tempsym/generators.hpp"
#include "tempsym/oracle.hpp"
#include "tempsym/symmetry.hpp"

using namespace tempsym;

TEST(Star, CentersAndOrbits) {
  auto g = gen_star(6, 3);
  EXPECT_EQ(g.lifetime(), 36);
  EXPECT_EQ(g.at(1).degree(0), 5);
  EXPECT_EQ(g.at(2).degree(1), 5);
  EXPECT_EQ(g.at(3).degree(0), 5);
  EXPECT_TRUE(validate_connected(g).all);
  auto part = orbit_partition(g);
  ASSERT_EQ(part.r(), 3);
  EXPECT_EQ(part.orbit_containing(2), (std::vector<Vertex>{2, 3, 4, 5}));
  auto brute = oracle::brute_automorphisms(g);
  EXPECT_EQ(brute.order.value(), 24u);

  auto g4 = gen_star(4, 2);
  EXPECT_EQ(g4.runs().size(), 1u);
  EXPECT_EQ(orbit_partition(g4).r(), 2);
}

TEST(Star, OrbitNumberEqualsR) {
  for (int n : {6, 8, 12, 16}) {
    for (int r = 2; r <= n / 2; ++r) EXPECT_EQ(orbit_partition(gen_star(n, r)).r(), r) << n << " " << r;
  }
}

TEST(Star, TravelBetweenLeavesTakesR) {
  for (int n : {6, 8, 10}) {
    const int r = n / 2;
    auto g = gen_star(n, r);
    EXPECT_EQ(oracle::foremost_oracle(g, n - 1, n - 2, 1) - 1, r);
  }
  EXPECT_EQ(oracle::foremost_oracle(gen_star(6, 3), 4, 5, 1), 4);
}

TEST(Star, ParameterRange) {
  EXPECT_THROW(gen_star(7, 2), DomainError);
  EXPECT_THROW(gen_star(8, 5), DomainError);
  EXPECT_THROW(gen_star(8, 1), DomainError);
}

TEST(StarExtended, OrbitCounts) {
  auto g = gen_star_extended(8, 5);
  EXPECT_EQ(g.lifetime(), 65);
  EXPECT_EQ(g.at(65).edge_count(), 7u);
  EXPECT_EQ(orbit_partition(g).r(), 5);
  EXPECT_EQ(oracle::brute_automorphisms(g).order.value(), 24u);
  EXPECT_EQ(orbit_partition(gen_star_extended(8, 8)).r(), 8);
  EXPECT_EQ(orbit_partition(gen_star_extended(8, 4)).r(), 4);
  for (int n : {6, 10}) {
    for (int r = n / 2; r <= n; ++r) EXPECT_EQ(orbit_partition(gen_star_extended(n, r)).r(), r);
  }
}

TEST(Circulant, Construction) {
  auto c = gen_circulant(8, 3, {{1}});
  EXPECT_EQ(automorphism_generators(c).order.value(), 16u);
  auto g = gen_circulant(15, 3, {{1}, {2}, {4}});
  EXPECT_EQ(orbit_partition(g).r(), 1);
  EXPECT_THROW(gen_circulant(15, 1, {{5}}), DomainError);
  auto r = gen_random_circulant(32, 7);
  EXPECT_EQ(r.lifetime(), 32 * 32);
  EXPECT_TRUE(rotation_preserves(r, 1));
  EXPECT_EQ(orbit_partition(r).r(), 1);
}

TEST(CyclePhase, Shape) {
  auto inst = gen_cycle_phase(11);
  EXPECT_EQ(inst.n, 2047);
  EXPECT_EQ(inst.K, 127);
  EXPECT_EQ(inst.phase_cycles, (std::vector<int>{0, 2}));
  EXPECT_TRUE(inst.graph.at(1).has_edge(0, 1));
  EXPECT_TRUE(inst.graph.at(128).has_edge(0, 16));
  EXPECT_TRUE(inst.graph.at(255).has_edge(0, 1));
  EXPECT_EQ(inst.graph.lifetime(), 2047LL * 2047);
  auto big = gen_cycle_phase(13);
  EXPECT_EQ(big.K, 511);
  EXPECT_EQ(big.phase_cycles, (std::vector<int>{0, 2, 3}));
  EXPECT_TRUE(rotation_preserves(big.graph, 5));
  EXPECT_THROW(gen_cycle_phase(12), DomainError);
  EXPECT_THROW(gen_cycle_phase(9), DomainError);
}

namespace {

std::vector<Move> constant(std::size_t len, Move m) { return std::vector<Move>(len, m); }

}  // namespace

TEST(Adversary, WaitingAndOpposedAgentsNeverMeet) {
  for (int m : {11, 13}) {
    auto inst = gen_cycle_phase(m);
    const std::size_t len = static_cast<std::size_t>(inst.phases()) * inst.K;
    for (auto [a, b] : {std::pair{Move::wait, Move::wait}, std::pair{Move::clockwise, Move::counter},
                        std::pair{Move::counter, Move::clockwise}, std::pair{Move::clockwise, Move::clockwise}}) {
      auto tr = adversary_fix_starts(inst, constant(len, a), constant(len, b));
      EXPECT_EQ(tr.first_meeting, -1);
      EXPECT_EQ(tr.phases.size(), static_cast<std::size_t>(inst.phases()));
      for (const auto& rec : tr.phases) {
        if (rec.phase >= 2 && !rec.wrapped) {
          EXPECT_GE(rec.gap, inst.n / 4 - 1);
        }
      }
    }
  }
}

TEST(Adversary, PhaseOneOffsetShiftsEndPosition) {
  auto inst = gen_cycle_phase(11);
  std::mt19937_64 rng(2);
  std::vector<Move> prog(static_cast<std::size_t>(inst.phases()) * inst.K);
  std::uniform_int_distribution<int> pick(-1, 1);
  for (auto& mv : prog) mv = static_cast<Move>(pick(rng));
  Vertex base = 600;
  Vertex end = detail::run_phases(inst, prog, base, 1);
  for (int d = 0; d < 16; ++d) EXPECT_EQ(detail::run_phases(inst, prog, base + d, 1), (end + d) % inst.n);
  auto tr = adversary_fix_starts(inst, prog, prog);
  EXPECT_EQ(tr.first_meeting, -1);
  EXPECT_EQ(tr.phases[1].pos1 % 16, 4);
  EXPECT_EQ(tr.phases[1].pos2 % 16, 12);
}

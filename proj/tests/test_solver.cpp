#include <gtest/gtest.h>

#include <random>

#include "apsat/oracle.hpp"
#include "apsat/solver.hpp"
#include "test_support.hpp"

namespace apsat {
namespace {

const DirectedGraph kTwoTriangles(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});

// Directed complete bipartite graph: no cycle cover for unequal sides, and a
// pigeonhole-hard CNF.
DirectedGraph bipartite(int a, int b) {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = a; v < a + b; ++v) {
      arcs.push_back({u, v});
      arcs.push_back({v, u});
    }
  return DirectedGraph(a + b, std::move(arcs));
}

void expect_consistent(const DirectedGraph& g, const SolveReport& rep, int r) {
  EXPECT_EQ(rep.stats.r_used, r);
  EXPECT_LE(rep.stats.ap_calls, static_cast<std::uint64_t>(r) + 1);
  EXPECT_LE(rep.stats.ksp_calls, rep.stats.ap_calls);
  EXPECT_EQ(rep.witness.has_value(), rep.verdict == Verdict::HcFound);
  if (rep.witness) {
    EXPECT_TRUE(is_hamiltonian_cycle(g, *rep.witness));
    EXPECT_EQ(rep.witness->front(), 0);
  }
}

TEST(VerdictName, Strings) {
  EXPECT_STREQ(to_string(Verdict::HcFound), "HC_FOUND");
  EXPECT_STREQ(to_string(Verdict::NoHc), "NO_HC");
  EXPECT_STREQ(to_string(Verdict::BudgetExceeded), "BUDGET_EXCEEDED");
}

TEST(ApSatSolve, CompleteDigraphResolvesWithoutSat) {
  const auto g = complete_digraph(5);
  const auto rep = ap_sat_solve(g);
  EXPECT_EQ(rep.verdict, Verdict::HcFound);
  EXPECT_EQ(rep.stats.sat_calls, 0u);
  EXPECT_GE(rep.stats.ap_calls, 1u);
  expect_consistent(g, rep, 5);
}

TEST(ApSatSolve, TwoTrianglesHaveNoCycle) {
  const auto rep = ap_sat_solve(kTwoTriangles);
  EXPECT_EQ(rep.verdict, Verdict::NoHc);
  EXPECT_FALSE(rep.witness);
  expect_consistent(kTwoTriangles, rep, 6);
}

TEST(ApSatSolve, NoCoverStopsAfterFirstAssignment) {
  const DirectedGraph g(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  const auto rep = ap_sat_solve(g);
  EXPECT_EQ(rep.verdict, Verdict::NoHc);
  EXPECT_EQ(rep.stats.ap_calls, 1u);
  EXPECT_EQ(rep.stats.sat_calls, 0u);
}

TEST(ApSatSolve, SatOnlyModeHasNoAssignmentCalls) {
  const auto g = cycle_digraph(6);
  const auto rep = ap_sat_solve(g, 0);
  EXPECT_EQ(rep.verdict, Verdict::HcFound);
  EXPECT_EQ(rep.stats.ap_calls, 0u);
  EXPECT_GE(rep.stats.sat_calls, 1u);
  expect_consistent(g, rep, 0);
}

TEST(ApSatSolve, TinyGraphs) {
  EXPECT_EQ(ap_sat_solve(DirectedGraph(1, {})).verdict, Verdict::NoHc);
  EXPECT_EQ(ap_sat_solve(DirectedGraph(2, {{0, 1}, {1, 0}})).verdict, Verdict::HcFound);
  EXPECT_EQ(ap_sat_solve(DirectedGraph(2, {{0, 1}})).verdict, Verdict::NoHc);
}

TEST(ApSatSolve, ExhaustiveSmallGraphsMatchOracle) {
  for (int n = 2; n <= 4; ++n)
    for (std::uint64_t mask = 0; mask < (1ULL << max_arcs(n)); ++mask) {
      const auto g = testing::graph_from_mask(n, mask);
      const bool expected = brute_force_oracle(g).is_hamiltonian;
      for (int r : {0, 1, n}) {
        const auto rep = ap_sat_solve(g, r);
        ASSERT_EQ(rep.verdict == Verdict::HcFound, expected) << "n=" << n << " mask=" << mask << " r=" << r;
        expect_consistent(g, rep, r);
      }
    }
}

TEST(ApSatSolve, RandomGraphsMatchOracle) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const auto g = testing::random_graph(rng, n);
    const bool expected = brute_force_oracle(g).is_hamiltonian;
    for (int r : {n, 0}) {
      const auto rep = ap_sat_solve(g, r);
      ASSERT_NE(rep.verdict, Verdict::BudgetExceeded);
      ASSERT_EQ(rep.verdict == Verdict::HcFound, expected) << "trial " << trial << " r=" << r;
      expect_consistent(g, rep, r);
    }
  }
}

TEST(ApSatSolve, SparseNearThresholdGraphsMatchOracle) {
  // Arc counts near n ln n exercise the SAT fallback more than uniform m.
  std::mt19937_64 rng(73);
  int sat_used = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 7 + static_cast<int>(rng() % 4);
    const auto m = std::min<std::uint64_t>(max_arcs(n), arcs_for_c(n, 0.6 + (rng() % 50) / 100.0));
    const auto g = gen_random(n, m, rng());
    const auto rep = ap_sat_solve(g);
    sat_used += rep.stats.sat_calls > 0;
    ASSERT_EQ(rep.verdict == Verdict::HcFound, brute_force_oracle(g).is_hamiltonian) << "trial " << trial;
    expect_consistent(g, rep, n);
  }
  RecordProperty("sat_used", sat_used);
}

TEST(ApSatSolve, Deterministic) {
  std::mt19937_64 rng(79);
  const auto g = testing::random_graph(rng, 9);
  const auto a = ap_sat_solve(g);
  const auto b = ap_sat_solve(g);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.stats.ap_calls, b.stats.ap_calls);
  EXPECT_EQ(a.stats.sat_calls, b.stats.sat_calls);
}

TEST(EnumerateAll, CompleteDigraphOnFour) {
  const auto res = enumerate_all(complete_digraph(4));
  EXPECT_TRUE(res.complete);
  EXPECT_EQ(res.cycles.size(), 6u);
  EXPECT_EQ(res.report.verdict, Verdict::HcFound);
}

TEST(EnumerateAll, SingleCycle) {
  const auto res = enumerate_all(cycle_digraph(5));
  ASSERT_EQ(res.cycles.size(), 1u);
  EXPECT_EQ(res.cycles[0], (std::vector<Vertex>{0, 1, 2, 3, 4}));
}

TEST(EnumerateAll, NonHamiltonian) {
  const auto res = enumerate_all(kTwoTriangles);
  EXPECT_TRUE(res.cycles.empty());
  EXPECT_EQ(res.report.verdict, Verdict::NoHc);
}

TEST(EnumerateAll, MatchesOracleCycleSets) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const auto g = testing::random_graph(rng, n);
    const auto oracle = brute_force_oracle(g);
    for (int r : {n, 0}) {
      const auto res = enumerate_all(g, r);
      ASSERT_TRUE(res.complete);
      ASSERT_EQ(res.cycles, oracle.cycles) << "trial " << trial << " r=" << r;
      for (const auto& cyc : res.cycles) ASSERT_TRUE(is_hamiltonian_cycle(g, cyc));
    }
  }
}

TEST(Budget, ZeroTimeLimitIsExceeded) {
  Budget b;
  b.time_limit = std::chrono::milliseconds(0);
  const auto rep = ap_sat_solve(complete_digraph(6), 6, b);
  EXPECT_EQ(rep.verdict, Verdict::BudgetExceeded);
  EXPECT_FALSE(rep.witness);
}

TEST(Budget, ConflictLimitIsExceededOnHardModel) {
  Budget b;
  b.max_conflicts = 1;
  const auto rep = ap_sat_solve(bipartite(4, 5), 0, b);
  EXPECT_EQ(rep.verdict, Verdict::BudgetExceeded);
  EXPECT_EQ(ap_sat_solve(bipartite(4, 5), 0).verdict, Verdict::NoHc);
}

TEST(Budget, EnumerationReportsIncomplete) {
  Budget b;
  b.time_limit = std::chrono::milliseconds(0);
  const auto res = enumerate_all(complete_digraph(5), 5, b);
  EXPECT_FALSE(res.complete);
}

TEST(IsHamiltonianCycle, RejectsBadTours) {
  const auto g = cycle_digraph(4);
  EXPECT_TRUE(is_hamiltonian_cycle(g, {0, 1, 2, 3}));
  EXPECT_TRUE(is_hamiltonian_cycle(g, {2, 3, 0, 1}));
  EXPECT_FALSE(is_hamiltonian_cycle(g, {0, 1, 2}));        // too short
  EXPECT_FALSE(is_hamiltonian_cycle(g, {0, 1, 2, 2}));     // repeat
  EXPECT_FALSE(is_hamiltonian_cycle(g, {0, 3, 2, 1}));     // reversed arcs
  EXPECT_FALSE(is_hamiltonian_cycle(g, {0, 1, 2, 7}));     // out of range
  EXPECT_FALSE(is_hamiltonian_cycle(DirectedGraph(1, {}), {0}));
}

TEST(CanonicalRotation, StartsAtMinimum) {
  EXPECT_EQ(canonical_rotation({3, 1, 2}), (std::vector<Vertex>{1, 2, 3}));
  EXPECT_EQ(canonical_rotation({}), std::vector<Vertex>{});
}

}  // namespace
}  // namespace apsat

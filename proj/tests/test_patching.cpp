#include <gtest/gtest.h>

#include <random>

#include "apsat/assignment.hpp"
#include "apsat/patching.hpp"
#include "test_support.hpp"

namespace apsat {
namespace {

CycleCover cover_from_successors(const CostMatrix& c, std::vector<Vertex> succ) {
  CycleCover cover;
  cover.successor = std::move(succ);
  cover.cycles = decompose_cycles(cover.successor);
  for (Vertex i = 0; i < c.n(); ++i) cover.value += c(i, cover.successor[i]);
  return cover;
}

bool is_single_cycle(const std::vector<Vertex>& tour, int n) {
  if (static_cast<int>(tour.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : tour) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

TEST(PatchCost, AllZero) {
  const CostMatrix c(4, 0, 1);
  EXPECT_EQ(patch_cost(c, {0, 1}, {2, 3}), 0);
}

TEST(PatchCost, InsertedNonArcsAtBigM) {
  CostMatrix c(4, 0, 9);
  c(0, 3) = 9;
  c(2, 1) = 9;
  EXPECT_EQ(patch_cost(c, {0, 1}, {2, 3}), 2 * 9);
}

TEST(PatchCost, MatchesFormulaOnRandomEntries) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10000; ++k) {
    CostMatrix c(4, 0, 1000);
    for (Vertex i = 0; i < 4; ++i)
      for (Vertex j = 0; j < 4; ++j) c(i, j) = static_cast<Cost>(rng() % 1000);
    const Cost expected = c(0, 3) + c(2, 1) - c(0, 1) - c(2, 3);
    ASSERT_EQ(patch_cost(c, {0, 1}, {2, 3}), expected);
  }
}

TEST(Ksp, DisjointTrianglesCannotBePatchedInGraph) {
  const DirectedGraph g(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  const auto c = build_initial_matrix(g);
  const auto cover = solve_ap(c);
  ASSERT_EQ(cover.value, 0);
  ASSERT_EQ(cover.cycle_count(), 2u);
  const auto res = ksp(c, cover, g);
  EXPECT_TRUE(is_single_cycle(res.tour, 6));
  EXPECT_FALSE(res.in_graph);
}

TEST(Ksp, PatchesTwoTwoCyclesThroughCrossArcs) {
  // 1->2->1, 3->4->3 plus (2,3) and (4,1); 0-based below.
  const DirectedGraph g(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}, {3, 0}});
  const auto c = build_initial_matrix(g);
  const auto cover = cover_from_successors(c, {1, 0, 3, 2});
  const auto res = ksp(c, cover, g);
  EXPECT_EQ(res.tour, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_TRUE(res.in_graph);
  EXPECT_EQ(res.value, 0);
}

TEST(Ksp, SingleCycleIsReturnedUnchanged) {
  const auto g = cycle_digraph(5);
  const auto c = build_initial_matrix(g);
  const auto res = ksp(c, cover_from_successors(c, {1, 2, 3, 4, 0}), g);
  EXPECT_EQ(res.tour, (std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(res.in_graph);
}

TEST(Ksp, MergesLargestCyclesFirst) {
  // Cycles {0,1}, {2,3,4}, {5,6,7}; with all costs zero the two 3-cycles are
  // merged first through (2,3) and (5,6), the smallest tie-break pair.
  const auto g = complete_digraph(8);
  const auto c = build_initial_matrix(g);
  const auto cover = cover_from_successors(c, {1, 0, 3, 4, 2, 6, 7, 5});
  const auto res = ksp(c, cover, g);
  EXPECT_TRUE(is_single_cycle(res.tour, 8));
  EXPECT_TRUE(res.in_graph);
  // First merge rewires 2->6 and 5->3: tour segment 2,6,7,5,3,4.
  std::vector<Vertex> succ(8);
  for (std::size_t k = 0; k < res.tour.size(); ++k) succ[res.tour[k]] = res.tour[(k + 1) % res.tour.size()];
  EXPECT_EQ(succ[5], 3);
  EXPECT_EQ(succ[6], 7);
}

TEST(Ksp, AlwaysReturnsOneTourAndInGraphImpliesHamiltonian) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 14);
    const auto g = testing::random_graph(rng, n);
    auto c = build_initial_matrix(g);
    auto cover = solve_ap(c);
    if (cover.value == 0 && rng() % 2) {
      perturb(c, cover, g);
      cover = solve_ap(c);
    }
    const auto res = ksp(c, cover, g);
    ASSERT_TRUE(is_single_cycle(res.tour, n));
    bool all_in = true;
    for (std::size_t k = 0; k < res.tour.size(); ++k)
      all_in = all_in && g.has_arc(res.tour[k], res.tour[(k + 1) % res.tour.size()]);
    ASSERT_EQ(res.in_graph, all_in);
  }
}

TEST(Ksp, Deterministic) {
  std::mt19937_64 rng(29);
  const auto g = testing::random_graph(rng, 12);
  const auto c = build_initial_matrix(g);
  const auto cover = solve_ap(c);
  EXPECT_EQ(ksp(c, cover, g).tour, ksp(c, cover, g).tour);
}

}  // namespace
}  // namespace apsat

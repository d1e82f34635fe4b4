#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "apsat/assignment.hpp"
#include "apsat/graph.hpp"

namespace apsat {

struct PatchResult {
  /// Single cycle over all vertices, starting at vertex 0.
  std::vector<Vertex> tour;
  /// True iff every arc of the tour is an arc of the graph.
  bool in_graph = false;
  /// Tour cost under the matrix used for patching.
  Cost value = 0;
};

/// Cost of exchanging (v1,w1), (v2,w2) for (v1,w2), (v2,w1).
inline Cost patch_cost(const CostMatrix& c, Arc a1, Arc a2) {
  return c(a1.from, a2.to) + c(a2.from, a1.to) - c(a1.from, a1.to) - c(a2.from, a2.to);
}

/// Karp-Steele patching: repeatedly merge the two largest cycles through the
/// arc pair of minimum patch cost until one tour remains.
///
/// Ties between equal-size cycles go to the smaller minimum vertex; ties in
/// patch cost go to the lexicographically smallest (v1, v2).
inline PatchResult ksp(const CostMatrix& c, const CycleCover& cover, const DirectedGraph& g) {
  std::vector<Vertex> succ = cover.successor;
  struct Piece {
    Vertex min_vertex;
    std::vector<Vertex> vertices;
  };
  std::vector<Piece> cycles;
  cycles.reserve(cover.cycles.size());
  for (const auto& cyc : cover.cycles)
    cycles.push_back({*std::min_element(cyc.begin(), cyc.end()), cyc});

  auto larger = [](const Piece& a, const Piece& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() > b.vertices.size();
    return a.min_vertex < b.min_vertex;
  };

  while (cycles.size() > 1) {
    std::partial_sort(cycles.begin(), cycles.begin() + 2, cycles.end(), larger);
    const auto& c1 = cycles[0].vertices;
    const auto& c2 = cycles[1].vertices;

    Cost best = 0;
    Vertex best_v1 = -1;
    Vertex best_v2 = -1;
    for (Vertex v1 : c1) {
      for (Vertex v2 : c2) {
        const Cost d = patch_cost(c, {v1, succ[v1]}, {v2, succ[v2]});
        if (best_v1 < 0 || d < best || (d == best && std::pair(v1, v2) < std::pair(best_v1, best_v2))) {
          best = d;
          best_v1 = v1;
          best_v2 = v2;
        }
      }
    }

    const Vertex w1 = succ[best_v1];
    const Vertex w2 = succ[best_v2];
    succ[best_v1] = w2;
    succ[best_v2] = w1;

    std::vector<Vertex> merged;
    merged.reserve(c1.size() + c2.size());
    Vertex v = best_v1;
    do {
      merged.push_back(v);
      v = succ[v];
    } while (v != best_v1);

    cycles[0] = {std::min(cycles[0].min_vertex, cycles[1].min_vertex), std::move(merged)};
    cycles.erase(cycles.begin() + 1);
  }

  PatchResult result;
  const auto n = static_cast<Vertex>(succ.size());
  result.in_graph = true;
  Vertex v = 0;
  for (Vertex k = 0; k < n; ++k) {
    result.tour.push_back(v);
    result.value += c(v, succ[v]);
    if (!g.has_arc(v, succ[v])) result.in_graph = false;
    v = succ[v];
  }
  return result;
}

}  // namespace apsat

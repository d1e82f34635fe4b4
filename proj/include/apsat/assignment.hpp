#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "apsat/graph.hpp"

namespace apsat {

using Cost = std::int64_t;

/// Dense n x n cost matrix of an assignment instance, plus the sentinel M
/// assigned to every pair that is not an arc of the originating graph.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(int n, Cost fill, Cost big_m)
      : n_(n), big_m_(big_m), cost_(static_cast<std::size_t>(n) * n, fill) {}

  int n() const noexcept { return n_; }
  Cost big_m() const noexcept { return big_m_; }
  void set_big_m(Cost m) noexcept { big_m_ = m; }

  Cost& operator()(Vertex i, Vertex j) { return cost_[static_cast<std::size_t>(i) * n_ + j]; }
  Cost operator()(Vertex i, Vertex j) const {
    return cost_[static_cast<std::size_t>(i) * n_ + j];
  }

 private:
  int n_ = 0;
  Cost big_m_ = 1;
  std::vector<Cost> cost_;
};

/// A permutation viewed as disjoint directed cycles.
struct CycleCover {
  std::vector<Vertex> successor;
  /// Each cycle starts at its smallest vertex; cycles sorted by that vertex.
  std::vector<std::vector<Vertex>> cycles;
  Cost value = 0;

  std::size_t cycle_count() const noexcept { return cycles.size(); }
};

/// Splits a permutation into cycles, each rotated to start at its minimum
/// vertex and listed in order of that minimum.
inline std::vector<std::vector<Vertex>> decompose_cycles(const std::vector<Vertex>& successor) {
  const auto n = static_cast<Vertex>(successor.size());
  std::vector<char> visited(n, 0);
  std::vector<std::vector<Vertex>> cycles;
  for (Vertex start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::vector<Vertex> cyc;
    for (Vertex v = start; !visited[v]; v = successor[v]) {
      visited[v] = 1;
      cyc.push_back(v);
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

/// 0 on arcs, 1 everywhere else (non-arcs and the diagonal); M = 1.
inline CostMatrix build_initial_matrix(const DirectedGraph& g) {
  CostMatrix c(g.n(), 1, 1);
  for (const Arc& a : g.arcs()) c(a.from, a.to) = 0;
  return c;
}

/// Minimum-cost perfect assignment by shortest augmenting paths with dual
/// potentials (Hungarian / Jonker-Volgenant family), O(n^3).
///
/// Rows are inserted one at a time; each insertion runs a Dijkstra-like
/// scan over reduced costs until a free column is reached.
inline CycleCover solve_ap(const CostMatrix& c) {
  const int n = c.n();
  constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

  // 1-based internally with column 0 as the virtual root.
  std::vector<Cost> u(n + 1, 0);
  std::vector<Cost> v(n + 1, 0);
  std::vector<int> row_of(n + 1, 0);
  std::vector<int> way(n + 1, 0);
  std::vector<Cost> minv(n + 1);
  std::vector<char> used(n + 1);

  for (int i = 1; i <= n; ++i) {
    row_of[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = row_of[j0];
      Cost delta = kInf;
      int j1 = 0;
      const Cost ui = u[i0];
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Cost cur = c(i0 - 1, j - 1) - ui - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const int j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  CycleCover sol;
  sol.successor.assign(n, 0);
  for (int j = 1; j <= n; ++j) sol.successor[row_of[j] - 1] = j - 1;
  for (Vertex i = 0; i < n; ++i) sol.value += c(i, sol.successor[i]);
  sol.cycles = decompose_cycles(sol.successor);
  return sol;
}

/// Raises the cost of every arc used by `sol` by one, then recomputes
/// M = n * max{cost over E} + 1 and writes M into every non-arc and the
/// diagonal.
///
/// Throws std::logic_error when `sol` uses a pair outside E.
inline void perturb(CostMatrix& c, const CycleCover& sol, const DirectedGraph& g) {
  const int n = g.n();
  if (c.n() != n || static_cast<int>(sol.successor.size()) != n)
    throw std::logic_error("perturb: dimension mismatch");
  if (sol.value >= c.big_m()) throw std::logic_error("perturb: solution is not a cycle cover of g");
  for (Vertex i = 0; i < n; ++i) {
    if (!g.has_arc(i, sol.successor[i]))
      throw std::logic_error("perturb: solution uses a non-arc");
  }

  for (Vertex i = 0; i < n; ++i) c(i, sol.successor[i]) += 1;

  Cost max_arc = 0;
  for (const Arc& a : g.arcs()) max_arc = std::max(max_arc, c(a.from, a.to));
  const Cost big_m = static_cast<Cost>(n) * max_arc + 1;
  c.set_big_m(big_m);

  std::vector<char> is_arc(n);
  for (Vertex i = 0; i < n; ++i) {
    std::fill(is_arc.begin(), is_arc.end(), 0);
    for (Vertex j : g.out(i)) is_arc[j] = 1;
    for (Vertex j = 0; j < n; ++j)
      if (!is_arc[j]) c(i, j) = big_m;
  }
}

}  // namespace apsat

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "apsat/graph.hpp"

namespace apsat {

/// Symmetric TSP instance on 2n cities over costs {0, 1, 2}.
///
/// City i < n is vertex i, city n + i is its copy. The digraph is Hamiltonian
/// iff the optimal tour costs exactly `threshold` (= n).
struct SymmetricTspInstance {
  int size = 0;
  int threshold = 0;
  std::vector<int> cost;  // row-major size x size, diagonal 0

  int operator()(int a, int b) const { return cost[static_cast<std::size_t>(a) * size + b]; }
};

/// Two-point reduction of a digraph to a symmetric TSP instance.
inline SymmetricTspInstance two_point_reduction(const DirectedGraph& g) {
  const int n = g.n();
  SymmetricTspInstance t;
  t.size = 2 * n;
  t.threshold = n;
  t.cost.assign(static_cast<std::size_t>(t.size) * t.size, 2);
  auto set = [&](int a, int b, int v) {
    t.cost[static_cast<std::size_t>(a) * t.size + b] = v;
    t.cost[static_cast<std::size_t>(b) * t.size + a] = v;
  };
  for (int k = 0; k < t.size; ++k) t.cost[static_cast<std::size_t>(k) * t.size + k] = 0;
  for (Vertex i = 0; i < n; ++i) set(i, n + i, 0);
  for (const Arc& a : g.arcs()) set(a.from, n + a.to, 1);
  return t;
}

/// TSPLIB explicit FULL_MATRIX serialisation.
inline void write_tsplib(std::ostream& out, const SymmetricTspInstance& t, const std::string& name) {
  out << "NAME: " << name << '\n'
      << "TYPE: TSP\n"
      << "COMMENT: two-point reduction of a " << t.threshold
      << "-vertex digraph; Hamiltonian iff optimal tour cost = " << t.threshold << '\n'
      << "DIMENSION: " << t.size << '\n'
      << "EDGE_WEIGHT_TYPE: EXPLICIT\n"
      << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
      << "EDGE_WEIGHT_SECTION\n";
  for (int a = 0; a < t.size; ++a) {
    for (int b = 0; b < t.size; ++b) out << (b ? " " : "") << t(a, b);
    out << '\n';
  }
  out << "EOF\n";
}

}  // namespace apsat

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "apsat/graph.hpp"

namespace apsat {

struct OracleResult {
  bool is_hamiltonian = false;
  std::uint64_t hc_count = 0;
  std::uint64_t cover_count = 0;
  /// Every Hamiltonian cycle, starting at vertex 0, in lexicographic order.
  std::vector<std::vector<Vertex>> cycles;
};

inline constexpr int kOracleMaxVertices = 12;

namespace detail {

// Counts successor assignments (permutations within E) row by row.
inline std::uint64_t count_covers(const DirectedGraph& g, Vertex row, std::uint32_t used) {
  if (row == g.n()) return 1;
  std::uint64_t total = 0;
  for (Vertex v : g.out(row))
    if (!(used & (1u << v))) total += count_covers(g, row + 1, used | (1u << v));
  return total;
}

inline void extend_paths(const DirectedGraph& g, std::vector<Vertex>& path, std::uint32_t used,
                         std::vector<std::vector<Vertex>>& out) {
  const Vertex last = path.back();
  if (static_cast<int>(path.size()) == g.n()) {
    if (g.has_arc(last, path.front())) out.push_back(path);
    return;
  }
  for (Vertex v : g.out(last)) {
    if (used & (1u << v)) continue;
    path.push_back(v);
    extend_paths(g, path, used | (1u << v), out);
    path.pop_back();
  }
}

}  // namespace detail

/// Exhaustive reference answer for small graphs (n <= 12): depth-first
/// enumeration of successor permutations within E and of Hamiltonian paths
/// from vertex 0.
inline OracleResult brute_force_oracle(const DirectedGraph& g) {
  if (g.n() > kOracleMaxVertices) throw std::domain_error("oracle refuses graphs with n > 12");
  OracleResult r;
  r.cover_count = detail::count_covers(g, 0, 0);
  if (g.n() >= 2) {
    std::vector<Vertex> path{0};
    detail::extend_paths(g, path, 1u, r.cycles);
  }
  r.hc_count = r.cycles.size();
  r.is_hamiltonian = r.hc_count > 0;
  return r;
}

}  // namespace apsat

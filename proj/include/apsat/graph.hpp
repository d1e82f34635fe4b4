#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace apsat {

using Vertex = int;

// Internal vertex ids are 0-based; the text format is 1-based.
struct Arc {
  Vertex from = 0;
  Vertex to = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Simple directed graph without loops or parallel arcs.
///
/// Arcs are kept sorted by (from, to). Values are immutable once built, so a
/// single graph can be shared by concurrent solver runs.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Throws std::invalid_argument on a loop, duplicate arc or out-of-range id.
  DirectedGraph(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    std::sort(arcs_.begin(), arcs_.end());
    out_.assign(n_, {});
    in_.assign(n_, {});
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      const Arc& a = arcs_[k];
      if (a.from < 0 || a.from >= n_ || a.to < 0 || a.to >= n_)
        throw std::invalid_argument("arc endpoint out of range");
      if (a.from == a.to) throw std::invalid_argument("self-loop");
      if (k > 0 && arcs_[k - 1] == a) throw std::invalid_argument("duplicate arc");
      out_[a.from].push_back(a.to);
      in_[a.to].push_back(a.from);
    }
    for (auto& row : in_) std::sort(row.begin(), row.end());
  }

  int n() const noexcept { return n_; }
  std::size_t m() const noexcept { return arcs_.size(); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  /// Successors of u in ascending order.
  const std::vector<Vertex>& out(Vertex u) const { return out_[u]; }
  /// Predecessors of v in ascending order.
  const std::vector<Vertex>& in(Vertex v) const { return in_[v]; }

  bool has_arc(Vertex u, Vertex v) const {
    if (u < 0 || u >= n_) return false;
    const auto& row = out_[u];
    return std::binary_search(row.begin(), row.end(), v);
  }

  /// Position of (u, v) in arcs(), or -1.
  long arc_index(Vertex u, Vertex v) const {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), Arc{u, v});
    if (it == arcs_.end() || *it != Arc{u, v}) return -1;
    return static_cast<long>(it - arcs_.begin());
  }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

inline std::uint64_t max_arcs(int n) {
  return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1);
}

/// Arc count of the random ensemble at degree parameter c:
/// ceil(c * n * (ln n + ln ln n)), clamped to the complete digraph.
/// Natural logarithms throughout.
inline std::uint64_t arcs_for_c(int n, double c) {
  if (n < 3) throw std::domain_error("arcs_for_c requires n >= 3");
  if (!(c > 0.0)) throw std::domain_error("degree parameter must be positive");
  const long double ln = std::log(static_cast<long double>(n));
  const long double m = std::ceil(static_cast<long double>(c) * n * (ln + std::log(ln)));
  const std::uint64_t cap = max_arcs(n);
  if (m >= static_cast<long double>(cap)) return cap;
  return static_cast<std::uint64_t>(m);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, bound) by rejection; avoids the implementation-defined
// behaviour of std::uniform_int_distribution so graphs are stable across
// standard libraries.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace detail

/// Uniform random digraph with exactly m arcs.
///
/// Partial Fisher-Yates over the n(n-1) off-diagonal arc indices; the
/// shuffled prefix is kept in a hash map so memory is O(m). The PRNG is
/// std::mt19937_64 seeded with `seed`.
inline DirectedGraph gen_random(int n, std::uint64_t m, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("n must be positive");
  const std::uint64_t total = max_arcs(n);
  if (m > total) throw std::domain_error("arc count exceeds n(n-1)");

  std::mt19937_64 rng(seed);
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  swapped.reserve(2 * m);
  auto slot = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };

  std::vector<Arc> arcs;
  arcs.reserve(m);
  const auto width = static_cast<std::uint64_t>(n - 1);
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::uint64_t j = i + detail::bounded(rng, total - i);
    const std::uint64_t pick = slot(j);
    swapped[j] = slot(i);
    const auto u = static_cast<Vertex>(pick / width);
    const auto r = static_cast<Vertex>(pick % width);
    arcs.push_back({u, r < u ? r : r + 1});
  }
  return DirectedGraph(n, std::move(arcs));
}

/// Parses the "p dhc <n> <m>" edge-list format.
inline DirectedGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long n = -1;
  long m = -1;
  std::size_t header_line = 0;
  std::vector<Arc> arcs;
  std::vector<std::vector<Vertex>> seen;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      if (n >= 0) throw ParseError(lineno, "duplicate header");
      std::string kind;
      if (!(ss >> kind >> n >> m) || kind != "dhc")
        throw ParseError(lineno, "malformed header, expected 'p dhc <n> <m>'");
      std::string extra;
      if (ss >> extra) throw ParseError(lineno, "trailing tokens in header");
      if (n < 1) throw ParseError(lineno, "vertex count must be positive");
      if (m < 0 || static_cast<std::uint64_t>(m) > max_arcs(static_cast<int>(n)))
        throw ParseError(lineno, "arc count out of range");
      header_line = lineno;
      seen.assign(n, {});
      arcs.reserve(m);
      continue;
    }
    if (tag == "a") {
      if (n < 0) throw ParseError(lineno, "arc before header");
      long u = 0;
      long v = 0;
      if (!(ss >> u >> v)) throw ParseError(lineno, "malformed arc line");
      std::string extra;
      if (ss >> extra) throw ParseError(lineno, "trailing tokens in arc line");
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "vertex out of range");
      if (u == v) throw ParseError(lineno, "self-loop");
      auto& row = seen[u - 1];
      if (std::find(row.begin(), row.end(), v - 1) != row.end())
        throw ParseError(lineno, "duplicate arc");
      if (static_cast<long>(arcs.size()) == m)
        throw ParseError(lineno, "more arcs than declared in header");
      row.push_back(static_cast<Vertex>(v - 1));
      arcs.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
      continue;
    }
    throw ParseError(lineno, "unknown line type '" + tag + "'");
  }
  if (n < 0) throw ParseError(lineno, "missing 'p dhc' header");
  if (static_cast<long>(arcs.size()) != m)
    throw ParseError(header_line, "header declares " + std::to_string(m) + " arcs, found " +
                                      std::to_string(arcs.size()));
  return DirectedGraph(static_cast<int>(n), std::move(arcs));
}

inline void write_graph(std::ostream& out, const DirectedGraph& g) {
  out << "p dhc " << g.n() << ' ' << g.m() << '\n';
  for (const Arc& a : g.arcs()) out << "a " << a.from + 1 << ' ' << a.to + 1 << '\n';
}

inline DirectedGraph complete_digraph(int n) {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) arcs.push_back({u, v});
  return DirectedGraph(n, std::move(arcs));
}

/// Directed cycle 0 -> 1 -> ... -> n-1 -> 0.
inline DirectedGraph cycle_digraph(int n) {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) arcs.push_back({u, (u + 1) % n});
  return DirectedGraph(n, std::move(arcs));
}

}  // namespace apsat

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apsat/assignment.hpp"
#include "apsat/cnf.hpp"
#include "apsat/graph.hpp"
#include "apsat/patching.hpp"

namespace apsat {

enum class Verdict { HcFound, NoHc, BudgetExceeded };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::HcFound: return "HC_FOUND";
    case Verdict::NoHc: return "NO_HC";
    case Verdict::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

struct Budget {
  std::optional<std::chrono::milliseconds> time_limit;
  /// Per SAT call.
  std::optional<std::uint64_t> max_conflicts;
};

using Duration = std::chrono::duration<double, std::milli>;

struct SolveStats {
  std::uint64_t ap_calls = 0;
  std::uint64_t ksp_calls = 0;
  std::uint64_t sat_calls = 0;
  Duration ap_time{0};
  Duration ksp_time{0};
  Duration sat_time{0};
  int r_used = 0;

  Duration total() const { return ap_time + ksp_time + sat_time; }
};

struct SolveReport {
  Verdict verdict = Verdict::NoHc;
  /// Present iff verdict is HcFound; starts at the smallest vertex.
  std::optional<std::vector<Vertex>> witness;
  SolveStats stats;
};

struct EnumerateResult {
  /// Distinct Hamiltonian cycles, canonical rotation, sorted.
  std::vector<std::vector<Vertex>> cycles;
  /// False when the budget ran out before the search finished.
  bool complete = true;
  SolveReport report;
};

/// Rotates a cycle so it starts at its smallest vertex.
inline std::vector<Vertex> canonical_rotation(std::vector<Vertex> cycle) {
  if (!cycle.empty()) std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

/// Checks that `tour` is a Hamiltonian cycle of g: n entries, every vertex
/// exactly once, every consecutive arc (and the closing arc) in E.
inline bool is_hamiltonian_cycle(const DirectedGraph& g, const std::vector<Vertex>& tour) {
  const int n = g.n();
  if (n < 2 || static_cast<int>(tour.size()) != n) return false;
  std::vector<int> out_deg(n, 0);
  std::vector<int> in_deg(n, 0);
  for (std::size_t k = 0; k < tour.size(); ++k) {
    const Vertex u = tour[k];
    const Vertex v = tour[(k + 1) % tour.size()];
    if (u < 0 || u >= n || v < 0 || v >= n) return false;
    if (!g.has_arc(u, v)) return false;
    ++out_deg[u];
    ++in_deg[v];
  }
  for (Vertex v = 0; v < n; ++v)
    if (out_deg[v] != 1 || in_deg[v] != 1) return false;
  return true;
}

namespace detail {

using Clock = std::chrono::steady_clock;

class PhaseTimer {
 public:
  explicit PhaseTimer(Duration& sink) : sink_(sink), start_(Clock::now()) {}
  ~PhaseTimer() { sink_ += Clock::now() - start_; }
  PhaseTimer(const PhaseTimer&) = delete;
  PhaseTimer& operator=(const PhaseTimer&) = delete;

 private:
  Duration& sink_;
  Clock::time_point start_;
};

// Main loop shared by the decision and enumeration variants.
// In enumeration mode, every Hamiltonian cycle met is saved to `found`
// (and blocked) instead of ending the search.
class ApSatRun {
 public:
  ApSatRun(const DirectedGraph& g, int r, const Budget& budget, bool enumerate)
      : g_(g), r_(r), enumerate_(enumerate) {
    report_.stats.r_used = r;
    if (budget.time_limit) deadline_ = Clock::now() + *budget.time_limit;
    limits_.deadline = deadline_;
    limits_.max_conflicts = budget.max_conflicts;
  }

  SolveReport run() {
    if (g_.n() < 2) {
      report_.verdict = Verdict::NoHc;
      return report_;
    }
    if (auto done = ap_phase()) return finish(*done);
    return finish(sat_phase());
  }

  std::vector<std::vector<Vertex>> found() const { return {found_.begin(), found_.end()}; }

 private:
  bool expired() const { return deadline_ && Clock::now() >= *deadline_; }

  SolveReport finish(Verdict v) {
    if (enumerate_ && v != Verdict::BudgetExceeded) v = found_.empty() ? Verdict::NoHc : Verdict::HcFound;
    report_.verdict = v;
    if (v == Verdict::HcFound) report_.witness = witness_;
    return report_;
  }

  // Returns true when the search should stop (decision mode).
  bool record_hc(std::vector<Vertex> tour) {
    tour = canonical_rotation(std::move(tour));
    if (!witness_) witness_ = tour;
    found_.insert(std::move(tour));
    return !enumerate_;
  }

  void record_subcycles(const std::vector<std::vector<Vertex>>& cycles) {
    for (const auto& cyc : cycles) ledger_.insert(canonical_rotation(cyc));
  }

  std::optional<Verdict> ap_phase() {
    CostMatrix c = build_initial_matrix(g_);
    for (int s = 0; s < r_; ++s) {
      if (expired()) return Verdict::BudgetExceeded;

      CycleCover sol;
      {
        PhaseTimer t(report_.stats.ap_time);
        sol = solve_ap(c);
        ++report_.stats.ap_calls;
      }
      if (sol.value >= c.big_m()) return Verdict::NoHc;
      if (sol.cycle_count() == 1) {
        if (record_hc(sol.cycles[0])) return Verdict::HcFound;
        ledger_.insert(canonical_rotation(sol.cycles[0]));
      } else {
        PatchResult patched;
        {
          PhaseTimer t(report_.stats.ksp_time);
          patched = ksp(c, sol, g_);
          ++report_.stats.ksp_calls;
        }
        if (patched.in_graph) {
          if (record_hc(patched.tour)) return Verdict::HcFound;
          ledger_.insert(canonical_rotation(patched.tour));
        }
      }
      {
        PhaseTimer t(report_.stats.ap_time);
        perturb(c, sol, g_);
      }
      if (sol.cycle_count() > 1) record_subcycles(sol.cycles);
    }
    return std::nullopt;
  }

  Verdict sat_phase() {
    PhaseTimer t(report_.stats.sat_time);
    CnfModel model = build_dap_cnf(g_);
    if (model.trivially_unsat) return Verdict::NoHc;
    for (const auto& cyc : ledger_) forbid_subcycle(model, g_, cyc);

    SatSession session(model);
    for (;;) {
      if (expired()) return Verdict::BudgetExceeded;
      ++report_.stats.sat_calls;
      const SatOutcome out = session.solve(limits_);
      if (out.status == sat::Status::Unknown) return Verdict::BudgetExceeded;
      if (out.status == sat::Status::Unsat) return Verdict::NoHc;

      const auto cycles = decompose_cycles(selected_successors(g_, out));
      if (cycles.size() == 1 && record_hc(cycles[0])) return Verdict::HcFound;
      for (const auto& cyc : cycles) {
        auto canon = canonical_rotation(cyc);
        if (ledger_.insert(canon).second) session.add_clause(subcycle_clause(model, g_, canon));
      }
    }
  }

  const DirectedGraph& g_;
  int r_;
  bool enumerate_;
  std::optional<Clock::time_point> deadline_;
  sat::Limits limits_;
  SolveReport report_;
  std::optional<std::vector<Vertex>> witness_;
  std::set<std::vector<Vertex>> found_;
  /// Subcycles (and, when enumerating, saved tours) to forbid in the SAT phase.
  std::set<std::vector<Vertex>> ledger_;
};

}  // namespace detail

/// Decides whether g has a Hamiltonian cycle.
///
/// Up to r rounds of assignment + patching, each followed by a cost
/// perturbation of the arcs just used; then a SAT search over cycle covers
/// that forbids every subcycle seen so far. r = 0 skips straight to SAT.
inline SolveReport ap_sat_solve(const DirectedGraph& g, int r, const Budget& budget = {}) {
  detail::ApSatRun run(g, r, budget, false);
  return run.run();
}

inline SolveReport ap_sat_solve(const DirectedGraph& g) { return ap_sat_solve(g, g.n()); }

/// Lists every Hamiltonian cycle of g.
inline EnumerateResult enumerate_all(const DirectedGraph& g, int r, const Budget& budget = {}) {
  detail::ApSatRun run(g, r, budget, true);
  EnumerateResult result;
  result.report = run.run();
  result.cycles = run.found();
  result.complete = result.report.verdict != Verdict::BudgetExceeded;
  return result;
}

inline EnumerateResult enumerate_all(const DirectedGraph& g) { return enumerate_all(g, g.n()); }

}  // namespace apsat

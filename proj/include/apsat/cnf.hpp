#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "apsat/graph.hpp"
#include "apsat/sat_solver.hpp"

namespace apsat {

using sat::Lit;

/// CNF model whose satisfying assignments, restricted to the arc variables,
/// are exactly the cycle covers of a digraph.
///
/// Numbering (0-based; DIMACS adds one): arc variables first in (from, to)
/// order, then one auxiliary chain per row 0..n-1, then one per column
/// 0..n-1.
struct CnfModel {
  int num_vars = 0;
  std::vector<std::vector<Lit>> clauses;
  /// arc_var[k] is the variable of graph.arcs()[k].
  std::vector<sat::Var> arc_var;
  /// Auxiliary chain variables; [0, n) rows, [n, 2n) columns.
  std::vector<std::vector<sat::Var>> aux_vars;
  /// Set when some vertex has no outgoing or incoming arc. The model is then
  /// the canonical contradiction (x) and (not x) on one extra variable.
  bool trivially_unsat = false;

  std::size_t num_arc_vars() const noexcept { return arc_var.size(); }
  std::size_t num_aux_vars() const noexcept {
    std::size_t total = 0;
    for (const auto& chain : aux_vars) total += chain.size();
    return total;
  }
};

namespace detail {

// Exactly-one over `ys` through the sequential chain z_k = y_k or z_{k-1}.
inline void encode_exactly_one(CnfModel& model, const std::vector<sat::Var>& ys,
                               std::vector<sat::Var>& zs) {
  const std::size_t d = ys.size();
  zs.clear();
  for (std::size_t k = 0; k < d; ++k) zs.push_back(model.num_vars++);
  auto y = [&](std::size_t k) { return Lit::make(ys[k]); };
  auto z = [&](std::size_t k) { return Lit::make(zs[k]); };

  model.clauses.push_back({~y(0), z(0)});
  model.clauses.push_back({y(0), ~z(0)});
  for (std::size_t k = 1; k < d; ++k) {
    model.clauses.push_back({z(k), ~y(k)});
    model.clauses.push_back({z(k), ~z(k - 1)});
    model.clauses.push_back({~z(k), y(k), z(k - 1)});
  }
  for (std::size_t k = 1; k < d; ++k) model.clauses.push_back({~z(k - 1), ~y(k)});
  model.clauses.push_back({z(d - 1)});
}

}  // namespace detail

inline CnfModel build_dap_cnf(const DirectedGraph& g) {
  const int n = g.n();
  CnfModel model;
  model.arc_var.resize(g.m());
  for (std::size_t k = 0; k < g.m(); ++k) model.arc_var[k] = static_cast<sat::Var>(k);
  model.num_vars = static_cast<int>(g.m());

  for (Vertex v = 0; v < n; ++v) {
    if (g.out(v).empty() || g.in(v).empty()) {
      const sat::Var x = model.num_vars++;
      model.clauses = {{Lit::make(x)}, {Lit::make(x, true)}};
      model.trivially_unsat = true;
      return model;
    }
  }

  model.aux_vars.resize(2 * static_cast<std::size_t>(n));
  std::vector<sat::Var> ys;
  for (Vertex i = 0; i < n; ++i) {
    ys.clear();
    for (Vertex j : g.out(i)) ys.push_back(model.arc_var[g.arc_index(i, j)]);
    detail::encode_exactly_one(model, ys, model.aux_vars[i]);
  }
  for (Vertex j = 0; j < n; ++j) {
    ys.clear();
    for (Vertex i : g.in(j)) ys.push_back(model.arc_var[g.arc_index(i, j)]);
    detail::encode_exactly_one(model, ys, model.aux_vars[n + j]);
  }
  return model;
}

/// The clause forbidding every arc of `cycle` (closing arc included) from
/// being selected together. Throws std::domain_error if an arc is missing.
inline std::vector<Lit> subcycle_clause(const CnfModel& model, const DirectedGraph& g,
                                        const std::vector<Vertex>& cycle) {
  if (cycle.size() < 2) throw std::domain_error("subcycle needs at least two vertices");
  std::vector<Lit> clause;
  clause.reserve(cycle.size());
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const Vertex u = cycle[k];
    const Vertex v = cycle[(k + 1) % cycle.size()];
    const long idx = g.arc_index(u, v);
    if (idx < 0) throw std::domain_error("subcycle arc is not in the graph");
    clause.push_back(Lit::make(model.arc_var[idx], true));
  }
  return clause;
}

inline void forbid_subcycle(CnfModel& model, const DirectedGraph& g,
                            const std::vector<Vertex>& cycle) {
  model.clauses.push_back(subcycle_clause(model, g, cycle));
}

inline void export_dimacs(std::ostream& out, const CnfModel& model) {
  out << "p cnf " << model.num_vars << ' ' << model.clauses.size() << '\n';
  for (const auto& clause : model.clauses) {
    for (Lit l : clause) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

struct SatOutcome {
  sat::Status status = sat::Status::Unknown;
  /// Truth value per arc (indexed like graph.arcs()) when status is Sat.
  std::vector<char> arc_selected;
};

/// Incremental solving session over a CnfModel.
///
/// The session mirrors every clause it is given into the model, so the model
/// stays an exact record of what was solved (and exportable).
class SatSession {
 public:
  explicit SatSession(CnfModel& model) : model_(&model) {
    while (solver_.num_vars() < model.num_vars) solver_.new_var();
    for (const auto& c : model.clauses) solver_.add_clause(c);
    synced_ = model.clauses.size();
  }

  /// Picks up clauses appended to the model since the last call.
  void sync() {
    for (; synced_ < model_->clauses.size(); ++synced_) solver_.add_clause(model_->clauses[synced_]);
  }

  void add_clause(std::vector<Lit> clause) {
    model_->clauses.push_back(std::move(clause));
    sync();
  }

  SatOutcome solve(const sat::Limits& limits = {}) {
    sync();
    SatOutcome out;
    out.status = solver_.solve(limits);
    if (out.status == sat::Status::Sat) {
      out.arc_selected.resize(model_->arc_var.size());
      for (std::size_t k = 0; k < model_->arc_var.size(); ++k)
        out.arc_selected[k] = solver_.model_value(model_->arc_var[k]) ? 1 : 0;
    }
    return out;
  }

  /// Full assignment of the last Sat answer, for checking every clause.
  bool value(sat::Var v) const { return solver_.model_value(v); }
  const sat::Solver& solver() const noexcept { return solver_; }

 private:
  CnfModel* model_;
  sat::Solver solver_;
  std::size_t synced_ = 0;
};

/// One-shot decision on a model.
inline SatOutcome sat_solve(CnfModel& model, const sat::Limits& limits = {}) {
  SatSession session(model);
  return session.solve(limits);
}

/// True iff `assignment` (indexed by variable) satisfies every clause.
inline bool satisfies(const CnfModel& model, const std::vector<char>& assignment) {
  for (const auto& clause : model.clauses) {
    bool sat = false;
    for (Lit l : clause) {
      const bool v = l.var() < static_cast<int>(assignment.size()) && assignment[l.var()];
      if (v != l.negated()) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

/// Successor array of the cover selected by a Sat outcome.
inline std::vector<Vertex> selected_successors(const DirectedGraph& g, const SatOutcome& out) {
  std::vector<Vertex> succ(g.n(), -1);
  for (std::size_t k = 0; k < g.m(); ++k)
    if (out.arc_selected[k]) succ[g.arcs()[k].from] = g.arcs()[k].to;
  return succ;
}

/// Counts satisfying arc assignments by solve, block, repeat. Each answer is
/// blocked by the clause negating its selected arcs. Returns -1 if the limit
/// is hit first.
inline long count_arc_models(CnfModel model, const sat::Limits& limits = {}) {
  if (model.trivially_unsat) return 0;
  SatSession session(model);
  long count = 0;
  for (;;) {
    const SatOutcome out = session.solve(limits);
    if (out.status == sat::Status::Unknown) return -1;
    if (out.status == sat::Status::Unsat) return count;
    ++count;
    std::vector<Lit> block;
    for (std::size_t k = 0; k < out.arc_selected.size(); ++k)
      if (out.arc_selected[k]) block.push_back(Lit::make(model.arc_var[k], true));
    if (block.empty()) return count;  // only the empty assignment exists
    session.add_clause(std::move(block));
  }
}

}  // namespace apsat

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace apsat::sat {

/// Variables are 0-based internally; DIMACS numbering is var + 1.
using Var = int;

/// Literal encoded as 2*var + (negated ? 1 : 0).
struct Lit {
  int code = -2;

  static constexpr Lit make(Var v, bool negated = false) { return Lit{2 * v + (negated ? 1 : 0)}; }
  /// From a signed DIMACS integer.
  static Lit from_dimacs(int x) { return make(std::abs(x) - 1, x < 0); }

  constexpr Var var() const { return code >> 1; }
  constexpr bool negated() const { return code & 1; }
  constexpr Lit operator~() const { return Lit{code ^ 1}; }
  int to_dimacs() const { return negated() ? -(var() + 1) : var() + 1; }

  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;
};

enum class Status { Sat, Unsat, Unknown };

struct Limits {
  std::optional<std::uint64_t> max_conflicts;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct Stats {
  std::uint64_t solves = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
};

/// Incremental CDCL solver: two watched literals, first-UIP learning with
/// clause minimisation, VSIDS, phase saving and Luby restarts.
///
/// Clauses may be added between calls to solve(); learnt clauses are kept
/// across calls since every one of them is implied by the original clauses.
class Solver {
 public:
  Var new_var() {
    const Var v = num_vars();
    assigns_.push_back(kUndef);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    activity_.push_back(0.0);
    polarity_.push_back(1);  // prefer false
    seen_.push_back(0);
    heap_index_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
    return v;
  }

  int num_vars() const noexcept { return static_cast<int>(assigns_.size()); }
  std::size_t num_clauses() const noexcept { return num_original_; }
  bool okay() const noexcept { return ok_; }
  const Stats& stats() const noexcept { return stats_; }

  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const Lit> lits) {
    if (!ok_) return false;
    cancel_until(0);
    std::vector<Lit> c(lits.begin(), lits.end());
    for (Lit l : c) {
      if (l.var() < 0) throw std::invalid_argument("literal with negative variable");
      while (l.var() >= num_vars()) new_var();
    }
    std::sort(c.begin(), c.end());
    std::size_t j = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Lit l = c[i];
      if (value(l) == kTrue) return true;
      if (j > 0 && c[j - 1] == ~l) return true;  // tautology
      if (value(l) == kFalse) continue;
      if (j > 0 && c[j - 1] == l) continue;
      c[j++] = l;
    }
    c.resize(j);
    ++num_original_;

    if (c.empty()) return ok_ = false;
    if (c.size() == 1) {
      enqueue(c[0], kNoReason);
      if (propagate() != kNoReason) ok_ = false;
      return ok_;
    }
    attach(store(std::move(c), false));
    return true;
  }

  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  Status solve(const Limits& limits = {}) {
    ++stats_.solves;
    model_.clear();
    if (!ok_) return Status::Unsat;
    cancel_until(0);
    if (propagate() != kNoReason) {
      ok_ = false;
      return Status::Unsat;
    }

    const std::uint64_t start_conflicts = stats_.conflicts;
    for (int restart = 0;; ++restart) {
      const std::uint64_t budget = static_cast<std::uint64_t>(luby(restart) * 100);
      const Status st = search(budget, limits, start_conflicts);
      if (st == Status::Sat) {
        model_.assign(assigns_.begin(), assigns_.end());
        cancel_until(0);
        return st;
      }
      if (st == Status::Unsat) {
        ok_ = false;
        return st;
      }
      cancel_until(0);
      if (out_of_budget(limits, start_conflicts)) return Status::Unknown;
      ++stats_.restarts;
      if (learnts_.size() > max_learnts_) reduce_db();
    }
  }

  /// Value in the most recent satisfying assignment; unassigned vars read false.
  bool model_value(Var v) const { return v < static_cast<Var>(model_.size()) && model_[v] == kTrue; }
  bool model_value(Lit l) const { return model_value(l.var()) != l.negated(); }

 private:
  using LBool = std::int8_t;
  static constexpr LBool kTrue = 1;
  static constexpr LBool kFalse = -1;
  static constexpr LBool kUndef = 0;
  static constexpr int kNoReason = -1;

  struct Clause {
    std::vector<Lit> lits;
    double activity = 0.0;
    bool learnt = false;
    bool deleted = false;
  };

  struct Watcher {
    int cref;
    Lit blocker;
  };

  LBool value(Lit l) const {
    const LBool a = assigns_[l.var()];
    return l.negated() ? static_cast<LBool>(-a) : a;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  int store(std::vector<Lit> lits, bool learnt) {
    clauses_.push_back(Clause{std::move(lits), 0.0, learnt, false});
    const int cref = static_cast<int>(clauses_.size()) - 1;
    if (learnt) learnts_.push_back(cref);
    return cref;
  }

  void attach(int cref) {
    const auto& lits = clauses_[cref].lits;
    watches_[(~lits[0]).code].push_back({cref, lits[1]});
    watches_[(~lits[1]).code].push_back({cref, lits[0]});
  }

  void enqueue(Lit l, int reason) {
    const Var v = l.var();
    assigns_[v] = l.negated() ? kFalse : kTrue;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  // Returns the conflicting clause or kNoReason.
  int propagate() {
    int conflict = kNoReason;
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];
      ++stats_.propagations;
      auto& ws = watches_[p.code];
      std::size_t i = 0;
      std::size_t j = 0;
      const Lit false_lit = ~p;
      while (i < ws.size()) {
        const Watcher w = ws[i];
        if (value(w.blocker) == kTrue) {
          ws[j++] = ws[i++];
          continue;
        }
        auto& lits = clauses_[w.cref].lits;
        if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
        ++i;
        const Lit first = lits[0];
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < lits.size(); ++k) {
          if (value(lits[k]) != kFalse) {
            std::swap(lits[1], lits[k]);
            watches_[(~lits[1]).code].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (value(first) == kFalse) {
          conflict = w.cref;
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (conflict != kNoReason) break;
    }
    return conflict;
  }

  void analyze(int confl, std::vector<Lit>& out_learnt, int& out_level) {
    out_learnt.clear();
    out_learnt.push_back(Lit{});
    int path_count = 0;
    Lit p{};
    std::size_t index = trail_.size();

    do {
      Clause& c = clauses_[confl];
      if (c.learnt) bump_clause(c);
      for (std::size_t k = (p.code == -2 ? 0 : 1); k < c.lits.size(); ++k) {
        const Lit q = c.lits[k];
        const Var v = q.var();
        if (!seen_[v] && level_[v] > 0) {
          bump_var(v);
          seen_[v] = 1;
          if (level_[v] >= decision_level())
            ++path_count;
          else
            out_learnt.push_back(q);
        }
      }
      while (!seen_[trail_[--index].var()]) {
      }
      p = trail_[index];
      confl = reason_[p.var()];
      seen_[p.var()] = 0;
      --path_count;
    } while (path_count > 0);
    out_learnt[0] = ~p;

    // Drop literals implied by the rest of the clause.
    analyze_toclear_.assign(out_learnt.begin(), out_learnt.end());
    std::size_t j = 1;
    for (std::size_t i = 1; i < out_learnt.size(); ++i) {
      const int r = reason_[out_learnt[i].var()];
      if (r == kNoReason || !redundant(out_learnt[i]))
        out_learnt[j++] = out_learnt[i];
    }
    out_learnt.resize(j);
    for (Lit l : analyze_toclear_) seen_[l.var()] = 0;

    if (out_learnt.size() == 1) {
      out_level = 0;
    } else {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < out_learnt.size(); ++i)
        if (level_[out_learnt[i].var()] > level_[out_learnt[max_i].var()]) max_i = i;
      std::swap(out_learnt[1], out_learnt[max_i]);
      out_level = level_[out_learnt[1].var()];
    }
  }

  // True if every antecedent of l is already in the learnt clause or at level 0.
  bool redundant(Lit l) {
    const Clause& c = clauses_[reason_[l.var()]];
    for (std::size_t k = 1; k < c.lits.size(); ++k) {
      const Var v = c.lits[k].var();
      if (!seen_[v] && level_[v] > 0) return false;
    }
    return true;
  }

  void cancel_until(int level) {
    if (decision_level() <= level) return;
    for (std::size_t c = trail_.size(); c-- > static_cast<std::size_t>(trail_lim_[level]);) {
      const Var v = trail_[c].var();
      assigns_[v] = kUndef;
      reason_[v] = kNoReason;
      polarity_[v] = trail_[c].negated() ? 1 : 0;
      if (heap_index_[v] < 0) heap_insert(v);
    }
    qhead_ = trail_lim_[level];
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
  }

  Status search(std::uint64_t conflict_budget, const Limits& limits, std::uint64_t start_conflicts) {
    std::uint64_t conflicts_here = 0;
    std::vector<Lit> learnt;
    for (;;) {
      const int confl = propagate();
      if (confl != kNoReason) {
        ++stats_.conflicts;
        ++conflicts_here;
        if (decision_level() == 0) return Status::Unsat;
        int back_level = 0;
        analyze(confl, learnt, back_level);
        cancel_until(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          const int cref = store(learnt, true);
          attach(cref);
          bump_clause(clauses_[cref]);
          enqueue(learnt[0], cref);
        }
        var_inc_ /= kVarDecay;
        clause_inc_ /= kClauseDecay;
        if (limits.max_conflicts && stats_.conflicts - start_conflicts >= *limits.max_conflicts)
          return Status::Unknown;
        if ((stats_.conflicts & 255) == 0 && out_of_budget(limits, start_conflicts))
          return Status::Unknown;
        continue;
      }
      if (conflicts_here >= conflict_budget) return Status::Unknown;

      Var next = -1;
      while (!heap_.empty()) {
        const Var v = heap_pop();
        if (assigns_[v] == kUndef) {
          next = v;
          break;
        }
      }
      if (next < 0) return Status::Sat;
      ++stats_.decisions;
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(Lit::make(next, polarity_[next] != 0), kNoReason);
    }
  }

  bool out_of_budget(const Limits& limits, std::uint64_t start_conflicts) const {
    if (limits.max_conflicts && stats_.conflicts - start_conflicts >= *limits.max_conflicts) return true;
    if (limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline) return true;
    return false;
  }

  // Called at level 0 only: drops the less active half of the learnt clauses
  // and rebuilds all watch lists.
  void reduce_db() {
    std::sort(learnts_.begin(), learnts_.end(), [&](int a, int b) {
      return clauses_[a].activity < clauses_[b].activity;
    });
    const std::size_t drop = learnts_.size() / 2;
    for (std::size_t k = 0; k < drop; ++k) {
      Clause& c = clauses_[learnts_[k]];
      if (c.lits.size() > 2) {
        c.deleted = true;
        c.lits.clear();
        c.lits.shrink_to_fit();
      }
    }
    std::vector<Clause> kept;
    std::vector<int> remap(clauses_.size(), kNoReason);
    kept.reserve(clauses_.size());
    for (std::size_t k = 0; k < clauses_.size(); ++k) {
      if (clauses_[k].deleted) continue;
      remap[k] = static_cast<int>(kept.size());
      kept.push_back(std::move(clauses_[k]));
    }
    clauses_ = std::move(kept);
    std::vector<int> new_learnts;
    for (int cref : learnts_)
      if (remap[cref] != kNoReason) new_learnts.push_back(remap[cref]);
    learnts_ = std::move(new_learnts);
    for (Lit l : trail_) reason_[l.var()] = kNoReason;  // level 0 only
    for (auto& ws : watches_) ws.clear();
    for (std::size_t k = 0; k < clauses_.size(); ++k) attach(static_cast<int>(k));
    max_learnts_ = max_learnts_ + max_learnts_ / 10;
  }

  void bump_var(Var v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_index_[v] >= 0) sift_up(heap_index_[v]);
  }

  void bump_clause(Clause& c) {
    c.activity += clause_inc_;
    if (c.activity > 1e20) {
      for (int cref : learnts_) clauses_[cref].activity *= 1e-20;
      clause_inc_ *= 1e-20;
    }
  }

  static double luby(int x) {
    int size = 1;
    int seq = 0;
    while (size < x + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != x) {
      size = (size - 1) >> 1;
      --seq;
      x = x % size;
    }
    double r = 1;
    for (int k = 0; k < seq; ++k) r *= 2;
    return r;
  }

  // Binary max-heap on activity; ties prefer the smaller variable.
  bool heap_less(Var a, Var b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_insert(Var v) {
    heap_index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    sift_up(heap_index_[v]);
  }
  Var heap_pop() {
    const Var top = heap_[0];
    heap_index_[top] = -1;
    const Var last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_index_[last] = 0;
      sift_down(0);
    }
    return top;
  }
  void sift_up(int i) {
    const Var v = heap_[i];
    while (i > 0) {
      const int parent = (i - 1) / 2;
      if (!heap_less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_index_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_index_[v] = i;
  }
  void sift_down(int i) {
    const Var v = heap_[i];
    const int size = static_cast<int>(heap_.size());
    for (;;) {
      int child = 2 * i + 1;
      if (child >= size) break;
      if (child + 1 < size && heap_less(heap_[child + 1], heap_[child])) ++child;
      if (!heap_less(heap_[child], v)) break;
      heap_[i] = heap_[child];
      heap_index_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    heap_index_[v] = i;
  }

  static constexpr double kVarDecay = 0.95;
  static constexpr double kClauseDecay = 0.999;

  bool ok_ = true;
  std::size_t num_original_ = 0;
  std::vector<Clause> clauses_;
  std::vector<int> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<LBool> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<char> polarity_;
  std::vector<char> seen_;
  std::vector<Lit> analyze_toclear_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<Var> heap_;
  std::vector<int> heap_index_;
  std::vector<LBool> model_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::size_t max_learnts_ = 20000;
  Stats stats_;
};

}  // namespace apsat::sat

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "apsat/sat_solver.hpp"

namespace apsat::sat {
namespace {

using Clauses = std::vector<std::vector<Lit>>;

bool brute_force_sat(int vars, const Clauses& clauses) {
  for (std::uint32_t a = 0; a < (1u << vars); ++a) {
    bool all = true;
    for (const auto& c : clauses) {
      bool any = false;
      for (Lit l : c) any = any || (((a >> l.var()) & 1) != l.negated());
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool model_satisfies(const Solver& s, const Clauses& clauses) {
  for (const auto& c : clauses) {
    bool any = false;
    for (Lit l : c) any = any || s.model_value(l);
    if (!any) return false;
  }
  return true;
}

Clauses random_3sat(std::mt19937_64& rng, int vars, int count) {
  Clauses out;
  for (int k = 0; k < count; ++k) {
    std::vector<Lit> c;
    for (int j = 0; j < 3; ++j) c.push_back(Lit::make(static_cast<Var>(rng() % vars), rng() % 2));
    out.push_back(c);
  }
  return out;
}

// n+1 pigeons into n holes.
Clauses pigeonhole(int holes) {
  const int pigeons = holes + 1;
  auto p = [&](int i, int h) { return Lit::make(i * holes + h); };
  Clauses out;
  for (int i = 0; i < pigeons; ++i) {
    std::vector<Lit> c;
    for (int h = 0; h < holes; ++h) c.push_back(p(i, h));
    out.push_back(c);
  }
  for (int h = 0; h < holes; ++h)
    for (int i = 0; i < pigeons; ++i)
      for (int j = i + 1; j < pigeons; ++j) out.push_back({~p(i, h), ~p(j, h)});
  return out;
}

TEST(Lit, Encoding) {
  const Lit a = Lit::make(3);
  EXPECT_EQ(a.var(), 3);
  EXPECT_FALSE(a.negated());
  EXPECT_TRUE((~a).negated());
  EXPECT_EQ((~a).to_dimacs(), -4);
  EXPECT_EQ(Lit::from_dimacs(-4), ~a);
}

TEST(Solver, EmptyFormulaIsSat) {
  Solver s;
  for (int k = 0; k < 3; ++k) s.new_var();
  EXPECT_EQ(s.solve(), Status::Sat);
  EXPECT_FALSE(s.model_value(0));
}

TEST(Solver, ContradictoryUnitsAreUnsat) {
  Solver s;
  s.add_clause({Lit::make(0)});
  EXPECT_FALSE(s.add_clause({Lit::make(0, true)}));
  EXPECT_EQ(s.solve(), Status::Unsat);
}

TEST(Solver, EmptyClauseIsUnsat) {
  Solver s;
  s.new_var();
  EXPECT_FALSE(s.add_clause(std::span<const Lit>{}));
  EXPECT_EQ(s.solve(), Status::Unsat);
}

TEST(Solver, TautologiesAreIgnored) {
  Solver s;
  s.add_clause({Lit::make(0), Lit::make(0, true)});
  EXPECT_EQ(s.solve(), Status::Sat);
}

TEST(Solver, PigeonholeIsUnsat) {
  for (int holes = 1; holes <= 6; ++holes) {
    Solver s;
    for (const auto& c : pigeonhole(holes)) s.add_clause(c);
    EXPECT_EQ(s.solve(), Status::Unsat) << holes;
  }
}

TEST(Solver, AgreesWithBruteForceOnRandom3Sat) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 400; ++trial) {
    const int vars = 3 + static_cast<int>(rng() % 10);
    const int count = static_cast<int>(vars * (3.0 + (rng() % 300) / 100.0));
    const Clauses f = random_3sat(rng, vars, count);
    Solver s;
    while (s.num_vars() < vars) s.new_var();
    for (const auto& c : f) s.add_clause(c);
    const Status st = s.solve();
    ASSERT_EQ(st == Status::Sat, brute_force_sat(vars, f)) << "trial " << trial;
    if (st == Status::Sat) {
      ASSERT_TRUE(model_satisfies(s, f));
    }
  }
}

TEST(Solver, IncrementalClausesAgreeWithBruteForce) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const int vars = 4 + static_cast<int>(rng() % 8);
    Clauses f;
    Solver s;
    while (s.num_vars() < vars) s.new_var();
    for (int step = 0; step < 12; ++step) {
      for (const auto& c : random_3sat(rng, vars, 1 + static_cast<int>(rng() % 4))) {
        f.push_back(c);
        s.add_clause(c);
      }
      const Status st = s.solve();
      const bool expected = brute_force_sat(vars, f);
      ASSERT_EQ(st == Status::Sat, expected) << "trial " << trial << " step " << step;
      if (st == Status::Sat) {
        ASSERT_TRUE(model_satisfies(s, f));
      }
      if (!expected) break;
    }
  }
}

TEST(Solver, EnumeratesAllModelsByBlocking) {
  // x0 xor x1 xor x2 = 1 has four models.
  Solver s;
  const Clauses f = {{Lit::make(0), Lit::make(1), Lit::make(2)},
                     {Lit::make(0), ~Lit::make(1), ~Lit::make(2)},
                     {~Lit::make(0), Lit::make(1), ~Lit::make(2)},
                     {~Lit::make(0), ~Lit::make(1), Lit::make(2)}};
  for (const auto& c : f) s.add_clause(c);
  int models = 0;
  while (s.solve() == Status::Sat) {
    ASSERT_TRUE(model_satisfies(s, f));
    ++models;
    std::vector<Lit> block;
    for (Var v = 0; v < 3; ++v) block.push_back(Lit::make(v, s.model_value(v)));
    s.add_clause(block);
  }
  EXPECT_EQ(models, 4);
}

TEST(Solver, ConflictLimitReportsUnknown) {
  Solver s;
  for (const auto& c : pigeonhole(8)) s.add_clause(c);
  Limits lim;
  lim.max_conflicts = 10;
  EXPECT_EQ(s.solve(lim), Status::Unknown);
  EXPECT_TRUE(s.okay());
}

TEST(Solver, ExpiredDeadlineReportsUnknown) {
  Solver s;
  for (const auto& c : pigeonhole(9)) s.add_clause(c);
  Limits lim;
  lim.deadline = std::chrono::steady_clock::now();
  EXPECT_EQ(s.solve(lim), Status::Unknown);
}

}  // namespace
}  // namespace apsat::sat

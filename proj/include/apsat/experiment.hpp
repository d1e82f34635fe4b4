#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "apsat/graph.hpp"
#include "apsat/solver.hpp"

namespace apsat {

/// Seed of one sample: base xor a hash of (group index, sample index), so
/// appending groups or samples never shifts existing ones.
inline std::uint64_t sample_seed(std::uint64_t base, std::uint32_t group, std::uint32_t sample) {
  return base ^ detail::splitmix64((static_cast<std::uint64_t>(group) << 32) | sample);
}

struct EnsembleOptions {
  /// Restart bound; negative means n.
  int r = -1;
  Budget budget;
  unsigned threads = 1;
};

struct SampleResult {
  std::uint64_t seed = 0;
  std::uint64_t m = 0;
  Verdict verdict = Verdict::NoHc;
  /// Witness passed independent validation (true when there is no witness).
  bool witness_valid = true;
  SolveStats stats;
  double time_ms = 0.0;
};

struct PhaseRow {
  int n = 0;
  double c = 0.0;
  std::uint64_t m = 0;
  int samples = 0;
  double ham_fraction = 0.0;
  double mean_time_ms = 0.0;
  double p95_time_ms = 0.0;
};

/// Runs `count` jobs on up to `threads` workers; job k writes slot k only.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < count;) job(k);
    });
  for (auto& th : pool) th.join();
}

/// Generates and solves `samples` graphs G(n, arcs_for_c(n, c)).
inline std::vector<SampleResult> run_ensemble(int n, double c, std::uint32_t group, int samples,
                                              std::uint64_t seed, const EnsembleOptions& opt) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const std::uint64_t m = arcs_for_c(n, c);
  std::vector<SampleResult> results(samples);
  parallel_for(results.size(), opt.threads, [&](std::size_t k) {
    SampleResult& res = results[k];
    res.seed = sample_seed(seed, group, static_cast<std::uint32_t>(k));
    res.m = m;
    const DirectedGraph g = gen_random(n, m, res.seed);
    const auto start = std::chrono::steady_clock::now();
    const SolveReport rep = ap_sat_solve(g, opt.r < 0 ? n : opt.r, opt.budget);
    res.time_ms = Duration(std::chrono::steady_clock::now() - start).count();
    res.verdict = rep.verdict;
    res.stats = rep.stats;
    if (rep.witness) res.witness_valid = is_hamiltonian_cycle(g, *rep.witness);
  });
  return results;
}

inline PhaseRow summarize(int n, double c, const std::vector<SampleResult>& results) {
  PhaseRow row;
  row.n = n;
  row.c = c;
  row.m = results.empty() ? 0 : results.front().m;
  row.samples = static_cast<int>(results.size());
  std::vector<double> times;
  int ham = 0;
  for (const auto& r : results) {
    if (r.verdict == Verdict::HcFound) ++ham;
    times.push_back(r.time_ms);
  }
  if (results.empty()) return row;
  row.ham_fraction = static_cast<double>(ham) / row.samples;
  double sum = 0;
  for (double t : times) sum += t;
  row.mean_time_ms = sum / row.samples;
  std::sort(times.begin(), times.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * times.size()));
  row.p95_time_ms = times[std::max<std::size_t>(rank, 1) - 1];
  return row;
}

inline constexpr const char* kPhaseCsvHeader = "n,c,m,samples,ham_fraction,mean_time_ms,p95_time_ms";

inline void write_csv_row(std::ostream& out, const PhaseRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%g,%llu,%d,%.4f,%.3f,%.3f", row.n, row.c,
                static_cast<unsigned long long>(row.m), row.samples, row.ham_fraction, row.mean_time_ms,
                row.p95_time_ms);
  out << buf << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<PhaseRow>& rows) {
  out << kPhaseCsvHeader << '\n';
  for (const auto& row : rows) write_csv_row(out, row);
}

/// Least-squares slope of log(time) against log(n).
inline double loglog_slope(const std::vector<PhaseRow>& rows) {
  const auto k = static_cast<double>(rows.size());
  if (rows.size() < 2) throw std::invalid_argument("need at least two sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(r.mean_time_ms);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace apsat

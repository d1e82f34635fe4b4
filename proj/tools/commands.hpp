#pragma once

// Subcommand bodies for the apsat CLI. Kept apart from argument parsing so
// tests can drive them with in-memory streams.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "apsat/apsat.hpp"

namespace apsat::cli {

enum ExitCode : int {
  kHcFound = 0,
  kNoHc = 1,
  kBudgetExceeded = 2,
  kOk = 0,
  kUsage = 64,
  kDataError = 65,
  kNoInput = 66,
  kInternal = 70,
  kCantCreate = 73,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Accepts an integer or one of the shorthands "n", "n/2", "2n".
inline int parse_restarts(const std::string& text, int n) {
  if (text.empty() || text == "n") return n;
  if (text == "n/2") return n / 2;
  if (text == "2n") return 2 * n;
  std::size_t used = 0;
  int r = 0;
  try {
    r = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid --r value '" + text + "'");
  }
  if (used != text.size() || r < 0) throw UsageError("invalid --r value '" + text + "'");
  return r;
}

inline std::string format_tour(const std::vector<Vertex>& tour) {
  std::string s;
  for (std::size_t k = 0; k < tour.size(); ++k) s += (k ? " " : "") + std::to_string(tour[k] + 1);
  return s;
}

inline std::vector<int> to_external(const std::vector<Vertex>& tour) {
  std::vector<int> out;
  for (Vertex v : tour) out.push_back(v + 1);
  return out;
}

/// Reads an instance; on failure prints a diagnostic and returns nullopt
/// with `code` set.
inline std::optional<DirectedGraph> load_graph(const std::string& path, std::ostream& err, int& code) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open '" << path << "'\n";
    code = kNoInput;
    return std::nullopt;
  }
  try {
    return read_graph(in);
  } catch (const ParseError& e) {
    err << path << ": " << e.what() << '\n';
    code = kDataError;
    return std::nullopt;
  }
}

/// Output file or stdout when the path is empty or "-".
class OutputSink {
 public:
  explicit OutputSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw OutputError("cannot create '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct SolveArgs {
  std::string input;
  bool all = false;
  std::string restarts = "n";
  double time_limit_s = 0.0;
  std::uint64_t max_conflicts = 0;
  bool json = false;
};

inline nlohmann::json stats_json(const SolveStats& s) {
  return {{"ap_calls", s.ap_calls},          {"ksp_calls", s.ksp_calls},
          {"sat_calls", s.sat_calls},        {"ap_time_ms", s.ap_time.count()},
          {"ksp_time_ms", s.ksp_time.count()}, {"sat_time_ms", s.sat_time.count()},
          {"r", s.r_used}};
}

inline void print_stats(std::ostream& out, const SolveStats& s) {
  out << "r: " << s.r_used << '\n'
      << "calls: ap " << s.ap_calls << ", ksp " << s.ksp_calls << ", sat " << s.sat_calls << '\n'
      << "time_ms: ap " << s.ap_time.count() << ", ksp " << s.ksp_time.count() << ", sat "
      << s.sat_time.count() << '\n';
}

inline int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto g = load_graph(args.input, err, code);
  if (!g) return code;

  const int r = parse_restarts(args.restarts, g->n());
  Budget budget;
  if (args.time_limit_s > 0)
    budget.time_limit = std::chrono::milliseconds(static_cast<long>(args.time_limit_s * 1000));
  if (args.max_conflicts > 0) budget.max_conflicts = args.max_conflicts;

  SolveReport report;
  std::vector<std::vector<Vertex>> cycles;
  bool complete = true;
  if (args.all) {
    EnumerateResult res = enumerate_all(*g, r, budget);
    report = res.report;
    cycles = std::move(res.cycles);
    complete = res.complete;
  } else {
    report = ap_sat_solve(*g, r, budget);
  }

  if (args.json) {
    nlohmann::json j;
    j["verdict"] = to_string(report.verdict);
    j["n"] = g->n();
    j["m"] = g->m();
    j["witness"] = report.witness ? nlohmann::json(to_external(*report.witness)) : nlohmann::json(nullptr);
    j["stats"] = stats_json(report.stats);
    if (args.all) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& c : cycles) list.push_back(to_external(c));
      j["cycles"] = list;
      j["hc_count"] = cycles.size();
      j["complete"] = complete;
    }
    out << j.dump(2) << '\n';
  } else {
    out << "verdict: " << to_string(report.verdict) << '\n';
    if (report.witness) out << "witness: " << format_tour(*report.witness) << '\n';
    if (args.all) {
      out << "hc_count: " << cycles.size() << (complete ? "" : " (incomplete)") << '\n';
      for (const auto& c : cycles) out << "cycle: " << format_tour(c) << '\n';
    }
    print_stats(out, report.stats);
  }

  switch (report.verdict) {
    case Verdict::HcFound: return kHcFound;
    case Verdict::NoHc: return kNoHc;
    case Verdict::BudgetExceeded: return kBudgetExceeded;
  }
  return kBudgetExceeded;
}

struct GenArgs {
  int n = 0;
  std::optional<double> c;
  std::optional<std::uint64_t> m;
  std::uint64_t seed = 0;
  std::string out;
};

inline int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  std::uint64_t m = 0;
  try {
    if (args.m && args.c) throw UsageError("give either --m or --c, not both");
    if (args.m)
      m = *args.m;
    else if (args.c)
      m = arcs_for_c(args.n, *args.c);
    else
      throw UsageError("one of --m or --c is required");
    const DirectedGraph g = gen_random(args.n, m, args.seed);
    OutputSink sink(args.out, out);
    sink.get() << "c random digraph n=" << args.n << " m=" << m << " seed=" << args.seed << '\n';
    if (args.c) sink.get() << "c m = ceil(c * n * (ln n + ln ln n)), c=" << *args.c << '\n';
    write_graph(sink.get(), g);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

struct PhaseArgs {
  int n = 128;
  std::vector<double> c_list;
  int samples = 200;
  std::uint64_t seed = 1;
  std::string restarts = "n";
  unsigned threads = 1;
  double time_limit_s = 0.0;
  std::string out;
};

inline EnsembleOptions ensemble_options(const std::string& restarts, int n, unsigned threads,
                                        double time_limit_s) {
  EnsembleOptions opt;
  opt.r = parse_restarts(restarts, n);
  opt.threads = threads;
  if (time_limit_s > 0)
    opt.budget.time_limit = std::chrono::milliseconds(static_cast<long>(time_limit_s * 1000));
  return opt;
}

inline void report_unsolved(const std::vector<SampleResult>& results, int n, double c, std::ostream& err) {
  int unsolved = 0;
  for (const auto& r : results) unsolved += r.verdict == Verdict::BudgetExceeded;
  if (unsolved)
    err << "warning: n=" << n << " c=" << c << ": " << unsolved
        << " samples exceeded the budget and count as non-Hamiltonian\n";
}

inline int cmd_phase(const PhaseArgs& args, std::ostream& out, std::ostream& err) {
  if (args.n < 3) throw UsageError("--n must be at least 3");
  if (args.samples < 1) throw UsageError("--samples must be at least 1");
  if (args.c_list.empty()) throw UsageError("--c-list is empty");
  for (double c : args.c_list)
    if (!(c > 0)) throw UsageError("every c must be positive");

  const EnsembleOptions opt = ensemble_options(args.restarts, args.n, args.threads, args.time_limit_s);
  OutputSink sink(args.out, out);
  sink.get() << kPhaseCsvHeader << '\n';
  for (std::size_t k = 0; k < args.c_list.size(); ++k) {
    const double c = args.c_list[k];
    const auto results = run_ensemble(args.n, c, static_cast<std::uint32_t>(k), args.samples, args.seed, opt);
    report_unsolved(results, args.n, c, err);
    write_csv_row(sink.get(), summarize(args.n, c, results));
    sink.get().flush();
  }
  return kOk;
}

struct ScalingArgs {
  std::vector<int> sizes;
  double c = 0.9;
  int samples = 50;
  std::uint64_t seed = 1;
  std::string restarts = "n";
  unsigned threads = 1;
  double time_limit_s = 0.0;
  std::string out;
};

inline int cmd_scaling(const ScalingArgs& args, std::ostream& out, std::ostream& err) {
  if (args.sizes.empty()) throw UsageError("--sizes is empty");
  if (!(args.c > 0)) throw UsageError("--c must be positive");
  if (args.samples < 1) throw UsageError("--samples must be at least 1");
  for (std::size_t k = 0; k < args.sizes.size(); ++k) {
    if (args.sizes[k] < 3) throw UsageError("every size must be at least 3");
    if (k && args.sizes[k] <= args.sizes[k - 1]) throw UsageError("--sizes must be ascending");
  }

  OutputSink sink(args.out, out);
  sink.get() << kPhaseCsvHeader << '\n';
  std::vector<PhaseRow> rows;
  for (std::size_t k = 0; k < args.sizes.size(); ++k) {
    const int n = args.sizes[k];
    const EnsembleOptions opt = ensemble_options(args.restarts, n, args.threads, args.time_limit_s);
    const auto results = run_ensemble(n, args.c, static_cast<std::uint32_t>(k), args.samples, args.seed, opt);
    report_unsolved(results, n, args.c, err);
    rows.push_back(summarize(n, args.c, results));
    write_csv_row(sink.get(), rows.back());
    sink.get().flush();
  }
  if (rows.size() >= 2) err << "log-log slope: " << loglog_slope(rows) << '\n';
  return kOk;
}

struct ExportArgs {
  std::string input;
  std::string out;
};

inline int cmd_export_cnf(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto g = load_graph(args.input, err, code);
  if (!g) return code;
  const CnfModel model = build_dap_cnf(*g);
  OutputSink sink(args.out, out);
  std::ostream& os = sink.get();
  os << "c cycle-cover model of a digraph with n=" << g->n() << " m=" << g->m() << '\n';
  if (model.trivially_unsat) {
    for (Vertex v = 0; v < g->n(); ++v) {
      if (g->out(v).empty()) os << "c warning: vertex " << v + 1 << " has no outgoing arc\n";
      if (g->in(v).empty()) os << "c warning: vertex " << v + 1 << " has no incoming arc\n";
    }
    os << "c warning: no cycle cover exists; the model is trivially unsatisfiable\n";
  }
  for (std::size_t k = 0; k < g->m(); ++k) {
    const Arc& a = g->arcs()[k];
    os << "c arc " << model.arc_var[k] + 1 << ' ' << a.from + 1 << ' ' << a.to + 1 << '\n';
  }
  export_dimacs(os, model);
  return kOk;
}

inline int cmd_export_tsp(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto g = load_graph(args.input, err, code);
  if (!g) return code;
  if (g->n() < 2) {
    err << "error: reduction needs at least 2 vertices\n";
    return kDataError;
  }
  OutputSink sink(args.out, out);
  std::string name = args.input;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  write_tsplib(sink.get(), two_point_reduction(*g), name);
  return kOk;
}

inline int cmd_oracle(const std::string& input, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto g = load_graph(input, err, code);
  if (!g) return code;
  if (g->n() > kOracleMaxVertices) {
    err << "error: oracle is limited to n <= " << kOracleMaxVertices << '\n';
    return kUsage;
  }
  const OracleResult r = brute_force_oracle(*g);
  out << "hamiltonian: " << (r.is_hamiltonian ? "yes" : "no") << '\n'
      << "hc_count: " << r.hc_count << '\n'
      << "cover_count: " << r.cover_count << '\n';
  return r.is_hamiltonian ? kHcFound : kNoHc;
}

}  // namespace apsat::cli

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace apsat::cli;

  CLI::App app{"apsat - exact Hamiltonian cycle search in directed graphs"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Decide whether an instance has a Hamiltonian cycle");
  solve_cmd->add_option("input", solve.input, "Instance file ('p dhc' edge list)")->required();
  solve_cmd->add_flag("--all", solve.all, "List every Hamiltonian cycle");
  solve_cmd->add_option("--r", solve.restarts, "Assignment/patching rounds: integer, n, n/2 or 2n")
      ->default_val("n");
  solve_cmd->add_option("--time-limit", solve.time_limit_s, "Wall-clock limit in seconds (0 = none)");
  solve_cmd->add_option("--max-conflicts", solve.max_conflicts, "Conflict limit per SAT call (0 = none)");
  solve_cmd->add_flag("--json", solve.json, "Machine-readable report");

  GenArgs gen;
  double gen_c = 0;
  std::uint64_t gen_m = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a uniform random digraph");
  gen_cmd->add_option("--n", gen.n, "Vertex count")->required();
  auto* c_opt = gen_cmd->add_option(
      "--c", gen_c, "Degree parameter: m = ceil(c * n * (ln n + ln ln n)), natural log");
  auto* m_opt = gen_cmd->add_option("--m", gen_m, "Arc count");
  c_opt->excludes(m_opt);
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed (mt19937_64)")->default_val(0);
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  PhaseArgs phase;
  auto* phase_cmd = app.add_subcommand(
      "phase", "Fraction of Hamiltonian random digraphs per degree parameter (CSV); m uses natural log");
  phase_cmd->add_option("--n", phase.n, "Vertex count")->default_val(128);
  phase_cmd->add_option("--c-list", phase.c_list, "Degree parameters")->delimiter(',')->required();
  phase_cmd->add_option("--samples", phase.samples, "Graphs per c")->default_val(200);
  phase_cmd->add_option("--seed", phase.seed, "Base seed")->default_val(1);
  phase_cmd->add_option("--r", phase.restarts, "Rounds before SAT")->default_val("n");
  phase_cmd->add_option("--threads", phase.threads, "Worker threads")->default_val(1);
  phase_cmd->add_option("--time-limit", phase.time_limit_s, "Per-instance limit in seconds (0 = none)");
  phase_cmd->add_option("--out", phase.out, "CSV file (default stdout)");

  ScalingArgs scaling;
  auto* scaling_cmd = app.add_subcommand("scaling", "Mean solve time per size at a fixed degree parameter (CSV)");
  scaling_cmd->add_option("--sizes", scaling.sizes, "Ascending vertex counts")->delimiter(',')->required();
  scaling_cmd->add_option("--c", scaling.c, "Degree parameter")->default_val(0.9);
  scaling_cmd->add_option("--samples", scaling.samples, "Graphs per size")->default_val(50);
  scaling_cmd->add_option("--seed", scaling.seed, "Base seed")->default_val(1);
  scaling_cmd->add_option("--r", scaling.restarts, "Rounds before SAT")->default_val("n");
  scaling_cmd->add_option("--threads", scaling.threads, "Worker threads")->default_val(1);
  scaling_cmd->add_option("--time-limit", scaling.time_limit_s, "Per-instance limit in seconds (0 = none)");
  scaling_cmd->add_option("--out", scaling.out, "CSV file (default stdout)");

  ExportArgs cnf;
  auto* cnf_cmd = app.add_subcommand("export-cnf", "Write the cycle-cover CNF in DIMACS format");
  cnf_cmd->add_option("input", cnf.input, "Instance file")->required();
  cnf_cmd->add_option("--out", cnf.out, "Output file (default stdout)");

  ExportArgs tsp;
  auto* tsp_cmd = app.add_subcommand("export-tsp", "Write the two-point symmetric TSP reduction (TSPLIB)");
  tsp_cmd->add_option("input", tsp.input, "Instance file")->required();
  tsp_cmd->add_option("--out", tsp.out, "Output file (default stdout)");

  std::string oracle_input;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference answer (n <= 12, for testing)");
  oracle_cmd->add_option("input", oracle_input, "Instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, std::cout, std::cerr);
    if (*gen_cmd) {
      if (*c_opt) gen.c = gen_c;
      if (*m_opt) gen.m = gen_m;
      return cmd_gen(gen, std::cout, std::cerr);
    }
    if (*phase_cmd) return cmd_phase(phase, std::cout, std::cerr);
    if (*scaling_cmd) return cmd_scaling(scaling, std::cout, std::cerr);
    if (*cnf_cmd) return cmd_export_cnf(cnf, std::cout, std::cerr);
    if (*tsp_cmd) return cmd_export_tsp(tsp, std::cout, std::cerr);
    if (*oracle_cmd) return cmd_oracle(oracle_input, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const OutputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCantCreate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

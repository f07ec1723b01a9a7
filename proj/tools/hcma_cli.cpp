#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hcma/naive_dp.hpp"
#include "hcma/reduction.hpp"
#include "hcma/solver.hpp"
#include "hcma/tour.hpp"
#include "hcma/tree_decomposition.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitUnsolved = 1;
constexpr int kExitInputError = 2;

void add_solver_options(CLI::App* cmd, hcma::SolverConfig& cfg,
                        bool& set_cf) {
  cmd->add_option("--time-limit", cfg.time_limit_s, "Time limit in seconds");
  cmd->add_flag("--set-cf", set_cf,
                "Use the long-run preset (30 minute time limit)");
  cmd->add_option("--seed", cfg.seed, "Random seed")->envname("HCMA_SEED");
  cmd->add_option("--mutation-rate", cfg.mutation_rate, "Mutation probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("!--no-dp", cfg.use_dp, "Skip the tree-decomposition DP");
  cmd->add_flag("!--no-sparsify", cfg.use_sparsify,
                "Run on the plain TC matrix without sparsification");
  cmd->add_flag("!--no-dlb", cfg.use_dlb, "Disable don't-look-bit pruning");
  cmd->add_option("--dp-width-cap", cfg.dp_width_cap,
                  "Skip the DP when the min-fill width exceeds this");
  cmd->add_option("--dp-deadline", cfg.dp_deadline_s,
                  "DP time budget in seconds");
  cmd->add_option("--neighbor-k", cfg.neighbor_k, "Candidate list length");
  cmd->add_option("--lk-budget", cfg.lk_move_budget,
                  "Applied-move cap per lk call (0 = 50*n)");
  cmd->add_option("--log-base", cfg.log_base,
                  "Logarithm base in the generation formula (0 = natural)");
  cmd->add_flag("--compact", cfg.compact_matrix, "16-bit matrix cells");
}

int report(const hcma::RunResult& r, const std::string& tour_out) {
  std::cout << "instance: " << r.instance << "\n";
  std::cout << "n: " << r.n << "  m: " << r.m << "\n";
  std::cout << "solved: " << (r.solved ? "yes" : "no") << "\n";
  std::cout << "phase: " << hcma::phase_name(r.phase) << "\n";
  std::cout << "time_ms: " << r.wall_ms << "\n";
  std::cout << "generations: " << r.generations << "\n";
  std::cout << "seed: " << r.seed << "\n";
  if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  if (r.solved && !tour_out.empty()) {
    std::ofstream out(tour_out);
    if (!out) {
      std::cerr << "cannot write " << tour_out << "\n";
      return kExitInputError;
    }
    hcma::write_tour(out, r.cycle->order, r.instance);
  }
  return r.solved ? kExitSolved : kExitUnsolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian cycle solver (memetic search over a sparsified "
               "TC reduction with a tree-decomposition DP fast path)"};
  app.require_subcommand(1);

  hcma::SolverConfig cfg;
  bool set_cf = false;

  std::string solve_file, tour_out;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one .hcp instance");
  solve_cmd->add_option("file", solve_file, "TSPLIB HCP instance")->required();
  solve_cmd->add_option("--tour-out", tour_out, "Write the cycle here");
  add_solver_options(solve_cmd, cfg, set_cf);

  std::string batch_dir, csv_out;
  auto* batch_cmd =
      app.add_subcommand("batch", "Solve every .hcp file in a directory");
  batch_cmd->add_option("dir", batch_dir, "Instance directory")->required();
  batch_cmd->add_option("--csv", csv_out, "CSV output path (default stdout)");
  add_solver_options(batch_cmd, cfg, set_cf);

  std::string verify_graph, verify_tour;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check a tour file against a graph");
  verify_cmd->add_option("graph", verify_graph)->required();
  verify_cmd->add_option("tour", verify_tour)->required();

  std::string reduce_file, reduce_method = "tc", reduce_out;
  auto* reduce_cmd =
      app.add_subcommand("reduce", "Dump the SR or TC distance matrix");
  reduce_cmd->add_option("file", reduce_file)->required();
  reduce_cmd->add_option("--method", reduce_method, "sr or tc")
      ->check(CLI::IsMember({"sr", "tc"}));
  reduce_cmd->add_option("-o,--output", reduce_out, "Output path (default stdout)");

  std::string decompose_file;
  auto* decompose_cmd = app.add_subcommand(
      "decompose", "Print a min-fill tree decomposition (PACE format)");
  decompose_cmd->add_option("file", decompose_file)->required();

  CLI11_PARSE(app, argc, argv);
  if (set_cf) cfg.time_limit_s = 1800.0;

  try {
    if (*solve_cmd) {
      const hcma::Graph g = hcma::parse_hcp_file(solve_file);
      const auto r = hcma::solve(g, cfg, solve_file);
      return report(r, tour_out);
    }
    if (*batch_cmd) {
      if (csv_out.empty()) {
        hcma::run_batch(batch_dir, cfg, std::cout);
      } else {
        std::ofstream out(csv_out);
        if (!out) {
          std::cerr << "cannot write " << csv_out << "\n";
          return kExitInputError;
        }
        hcma::run_batch(batch_dir, cfg, out);
      }
      return kExitSolved;
    }
    if (*verify_cmd) {
      const hcma::Graph g = hcma::parse_hcp_file(verify_graph);
      std::ifstream tin(verify_tour);
      if (!tin) {
        std::cerr << "cannot open " << verify_tour << "\n";
        return kExitInputError;
      }
      const hcma::CycleCandidate c{hcma::parse_tour(tin)};
      const bool ok = hcma::verify_hc(g, c);
      std::cout << (ok ? "valid hamiltonian cycle" : "NOT a hamiltonian cycle")
                << "\n";
      return ok ? kExitSolved : kExitUnsolved;
    }
    if (*reduce_cmd) {
      const hcma::Graph g = hcma::parse_hcp_file(reduce_file);
      const auto m = reduce_method == "sr" ? hcma::sr_reduce(g)
                                           : hcma::tc_reduce(g);
      if (reduce_out.empty()) {
        hcma::write_explicit_matrix(std::cout, m, reduce_file);
      } else {
        std::ofstream out(reduce_out);
        if (!out) {
          std::cerr << "cannot write " << reduce_out << "\n";
          return kExitInputError;
        }
        hcma::write_explicit_matrix(out, m, reduce_file);
      }
      return kExitSolved;
    }
    if (*decompose_cmd) {
      const hcma::Graph g = hcma::parse_hcp_file(decompose_file);
      const auto result =
          hcma::min_fill_decomposition(g, g.vertex_count());  // uncapped
      hcma::write_pace_td(std::cout, *result.td, g.vertex_count());
      return kExitSolved;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

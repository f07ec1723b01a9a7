#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "hcma/graph.hpp"

namespace hcma {

// Mirrors the published parameter table; every stochastic choice derives
// from `seed`.
struct SolverConfig {
  double mutation_rate = 0.05;
  int population_size = 13;  // fixed ternary tree; anything else is rejected
  double time_limit_s = 600.0;
  int restart_stagnation = 30;  // generations without improvement
  int conflict_batch = 1;       // conflicting edges resolved per iteration
  int dp_width_cap = 10;
  double dp_deadline_s = 10.0;
  std::size_t dp_state_cap = 1500000;
  int neighbor_k = 5;
  std::uint64_t seed = 1;
  double log_base = 0.0;  // 0 -> natural log in the generation formula
  bool use_dp = true;
  bool use_sparsify = true;
  bool use_dlb = true;
  bool compact_matrix = false;
  std::int64_t lk_move_budget = 0;  // 0 -> 50 * n
  bool rhs_from_snapshot = true;    // recombination reads generation-start state
};

enum class SolverPhase { none, dp, ma };

struct RunResult {
  std::string instance;
  int n = 0;
  std::int64_t m = 0;
  bool solved = false;
  SolverPhase phase = SolverPhase::none;
  std::optional<CycleCandidate> cycle;
  std::int64_t wall_ms = 0;
  int generations = 0;
  std::uint64_t seed = 0;
  std::string note;  // unsolved reason or parse diagnostics
};

// floor(5 * 13 * log(13) * sqrt(n)); log_base 0 selects the natural log.
int max_generations(int n, double log_base = 0.0);

const char* phase_name(SolverPhase phase);

// Full pipeline: connectivity pre-checks, the tree-decomposition DP fast
// path, then the memetic search over the sparsified TC matrix. Every
// reported cycle has been re-verified against the original graph.
RunResult solve(const Graph& g, const SolverConfig& cfg,
                const std::string& name = "");

// Runs every *.hcp file in dir (sorted by name) and streams CSV rows
// name,n,m,solved,phase,time_ms,generations,seed,note followed by a
// summary footer. Unreadable files produce a solved=0 row and the batch
// continues.
void run_batch(const std::filesystem::path& dir, const SolverConfig& cfg,
               std::ostream& csv);

}  // namespace hcma

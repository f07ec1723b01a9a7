#include "hcma/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hcma/naive_dp.hpp"
#include "hcma/population.hpp"
#include "hcma/reduction.hpp"
#include "hcma/sparsify.hpp"

namespace hcma {

int max_generations(int n, double log_base) {
  if (n < 1) throw std::invalid_argument("max_generations: n must be >= 1");
  const double log13 =
      log_base == 0.0 ? std::log(13.0) : std::log(13.0) / std::log(log_base);
  return static_cast<int>(std::floor(5.0 * 13.0 * log13 * std::sqrt(n)));
}

const char* phase_name(SolverPhase phase) {
  switch (phase) {
    case SolverPhase::dp: return "dp";
    case SolverPhase::ma: return "ma";
    case SolverPhase::none: return "none";
  }
  return "none";
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

// RNG stream labels, one per stochastic phase.
enum StreamId : std::uint64_t {
  kStreamInit = 1,
  kStreamSparsify,
  kStreamRecombine,
  kStreamMutate,
  kStreamRestart,
  kStreamOptimize,
  kStreamAugment,
};

}  // namespace

RunResult solve(const Graph& g, const SolverConfig& cfg,
                const std::string& name) {
  if (cfg.population_size != Population::kAgents)
    throw std::invalid_argument("population size is fixed at 13");
  const auto start = Clock::now();
  RunResult result;
  result.instance = name;
  result.n = g.vertex_count();
  result.m = static_cast<std::int64_t>(g.edge_count());
  result.seed = cfg.seed;

  const int n = g.vertex_count();
  auto finish = [&](RunResult r) {
    r.wall_ms = elapsed_ms(start);
    return r;
  };
  auto accept = [&](CycleCandidate cycle, SolverPhase phase) {
    if (!verify_hc(g, cycle))
      throw std::logic_error(
          "soundness breach: candidate of cost n failed verification");
    result.solved = true;
    result.phase = phase;
    result.cycle = std::move(cycle);
    return finish(result);
  };

  if (n < 3) {
    result.note = "fewer than 3 vertices";
    return finish(result);
  }
  if (!is_connected(g)) {
    result.note = "disconnected";
    return finish(result);
  }
  if (const auto cut = find_cut_vertex(g)) {
    result.note = "cut vertex " + std::to_string(*cut + 1);
    return finish(result);
  }

  const auto remaining_ms = [&]() {
    return static_cast<std::int64_t>(cfg.time_limit_s * 1000.0) -
           elapsed_ms(start);
  };

  if (cfg.use_dp) {
    const auto decomp = min_fill_decomposition(g, cfg.dp_width_cap);
    if (!decomp.capped) {
      const auto budget = std::min<std::int64_t>(
          static_cast<std::int64_t>(cfg.dp_deadline_s * 1000.0),
          std::max<std::int64_t>(remaining_ms(), 0));
      const DpResult dp = dp_hamiltonian(
          g, *decomp.td, std::chrono::milliseconds(budget), cfg.dp_state_cap);
      if (dp.status == DpResult::Status::found)
        return accept(dp.cycle, SolverPhase::dp);
      if (dp.status == DpResult::Status::no_cycle) {
        result.note = "proved non-hamiltonian (dp)";
        return finish(result);
      }
      // timeout: fall through to the memetic search
    }
  }

  // ---- memetic phase -------------------------------------------------
  const DistanceMatrix base = tc_reduce(g, cfg.compact_matrix);
  const Rng root_rng(cfg.seed);
  LocalSearchOptions search{cfg.use_dlb, cfg.lk_move_budget};
  const NeighborLists base_nl = build_neighbor_lists(base, cfg.neighbor_k);

  Rng init_rng = root_rng.split(kStreamInit);
  Population pop = initialize_pop(base, base_nl, init_rng, search);
  result.phase = SolverPhase::ma;

  const TourCost target = n;
  auto scan_for_solution = [&]() -> std::optional<CycleCandidate> {
    for (const auto& agent : pop.agents) {
      if (agent.pocket.cost() == target)
        return CycleCandidate{agent.pocket.order()};
      if (agent.current.cost() == target)
        return CycleCandidate{agent.current.order()};
    }
    return std::nullopt;
  };
  if (auto c = scan_for_solution()) return accept(std::move(*c), SolverPhase::ma);

  SparseState sparse;
  NeighborLists working_nl;
  if (cfg.use_sparsify) {
    Rng sp_rng = root_rng.split(kStreamSparsify, 0);
    Tour probe(pop.agents[0].pocket.order(), base);
    sparse = initial_sparsification(g, base, pop.agents[0].pocket, base_nl,
                                    sp_rng, cfg.lk_move_budget, &probe);
    if (probe.cost() == target)
      return accept(CycleCandidate{probe.order()}, SolverPhase::ma);
    working_nl = build_neighbor_lists(sparse.working, cfg.neighbor_k);
    pop.refresh_costs(sparse.working);
    pop.clear_all_dont_look();
  }
  const DistanceMatrix& working = cfg.use_sparsify ? sparse.working : base;
  const NeighborLists& nl = cfg.use_sparsify ? working_nl : base_nl;

  const int generation_cap = max_generations(n, cfg.log_base);
  TourCost best_seen = pop.best_pocket_cost();
  int stagnant_generations = 0;
  std::string stop_reason = "generation cap " + std::to_string(generation_cap);

  for (int gen = 1; gen <= generation_cap; ++gen) {
    if (remaining_ms() <= 0) {
      stop_reason = "time limit";
      break;
    }
    pop.generation = gen;
    result.generations = gen;

    structure_pop(pop);
    pop.best_cost_history.push_back(pop.best_pocket_cost());
    if (pop.best_pocket_cost() < best_seen) {
      best_seen = pop.best_pocket_cost();
      stagnant_generations = 0;
    } else {
      ++stagnant_generations;
    }
    if (auto c = scan_for_solution()) return accept(std::move(*c), SolverPhase::ma);

    RecombineOptions rec{cfg.rhs_from_snapshot, search};
    Rng rec_rng = root_rng.split(kStreamRecombine, gen);
    recombine_pop(pop, working, nl, rec_rng, rec);
    if (auto c = scan_for_solution()) return accept(std::move(*c), SolverPhase::ma);
    if (remaining_ms() <= 0) {
      stop_reason = "time limit";
      break;
    }

    Rng mut_rng = root_rng.split(kStreamMutate, gen);
    mutate_pop(pop, working, nl, mut_rng, cfg.mutation_rate, search);
    if (auto c = scan_for_solution()) return accept(std::move(*c), SolverPhase::ma);
    if (remaining_ms() <= 0) {
      stop_reason = "time limit";
      break;
    }

    const bool diverse = !pop.all_pockets_equal_cost() &&
                         stagnant_generations < cfg.restart_stagnation;
    if (gen > 30 && !diverse) {
      Rng restart_rng = root_rng.split(kStreamRestart, gen);
      restart_pop(pop, working, nl, restart_rng);
      stagnant_generations = 0;
    }

    for (int i = 0; i < Population::kAgents; ++i) {
      Rng agent_rng = root_rng.split(kStreamOptimize, gen, i);
      local_search(pop.agents[i].current, working, nl, agent_rng, search);
    }
    if (auto c = scan_for_solution()) return accept(std::move(*c), SolverPhase::ma);
    if (remaining_ms() <= 0) {
      stop_reason = "time limit";
      break;
    }

    if (cfg.use_sparsify) {
      // The best pocket is on the structured root; pockets were not
      // touched since structure_pop.
      const std::int64_t ones_before = sparse.ones_count;
      Rng aug_rng = root_rng.split(kStreamAugment, gen);
      const Tour probe = augment(sparse, g, pop.agents[0].pocket, nl,
                                 aug_rng, cfg.lk_move_budget);
      if (probe.cost() == target)
        return accept(CycleCandidate{probe.order()}, SolverPhase::ma);
      Tour reset_probe = probe;
      Rng reset_rng = root_rng.split(kStreamSparsify, gen);
      const bool reset_fired =
          maybe_reset(sparse, g, base, pop.agents[0].pocket, base_nl,
                      reset_rng, cfg.lk_move_budget, &reset_probe);
      if (reset_fired && reset_probe.cost() == target)
        return accept(CycleCandidate{reset_probe.order()}, SolverPhase::ma);
      if (reset_fired || sparse.ones_count != ones_before) {
        working_nl = build_neighbor_lists(sparse.working, cfg.neighbor_k);
        pop.refresh_costs(sparse.working);
        pop.clear_all_dont_look();
      }
    }
  }

  result.note = stop_reason;
  return finish(result);
}

void run_batch(const std::filesystem::path& dir, const SolverConfig& cfg,
               std::ostream& csv) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".hcp")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  csv << "name,n,m,solved,phase,time_ms,generations,seed,note\n";
  std::vector<std::int64_t> solved_times;
  int solved = 0;
  for (const auto& file : files) {
    RunResult r;
    try {
      const Graph g = parse_hcp_file(file.string());
      r = solve(g, cfg, file.filename().string());
    } catch (const std::exception& e) {
      r.instance = file.filename().string();
      r.solved = false;
      r.note = std::string("parse-error: ") + e.what();
    }
    if (r.solved) {
      ++solved;
      solved_times.push_back(r.wall_ms);
    }
    std::string note = r.note;
    std::replace(note.begin(), note.end(), ',', ';');
    csv << r.instance << ',' << r.n << ',' << r.m << ',' << (r.solved ? 1 : 0)
        << ',' << phase_name(r.phase) << ',' << r.wall_ms << ','
        << r.generations << ',' << r.seed << ',' << note << '\n';
  }

  csv << "# instances," << files.size() << "\n";
  csv << "# solved," << solved << "\n";
  if (!solved_times.empty()) {
    std::sort(solved_times.begin(), solved_times.end());
    double mean = 0;
    for (auto t : solved_times) mean += static_cast<double>(t);
    mean /= static_cast<double>(solved_times.size());
    const std::size_t mid = solved_times.size() / 2;
    const double median =
        solved_times.size() % 2
            ? static_cast<double>(solved_times[mid])
            : (static_cast<double>(solved_times[mid - 1]) +
               static_cast<double>(solved_times[mid])) /
                  2.0;
    csv << "# mean_ms," << mean << "\n";
    csv << "# median_ms," << median << "\n";
    csv << "# min_ms," << solved_times.front() << "\n";
    csv << "# max_ms," << solved_times.back() << "\n";
  }
}

}  // namespace hcma

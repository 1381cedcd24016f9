#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ggpgm/family.hpp"
#include "ggpgm/instance.hpp"
#include "ggpgm/iteration_log.hpp"
#include "ggpgm/pgm.hpp"
#include "ggpgm/pricing.hpp"
#include "ggpgm/rmp.hpp"
#include "ggpgm/routes.hpp"

namespace ggpgm {

// How the graph master is solved each outer iteration: over every edge of
// every family at once, or by principled graph management.
enum class RmpStrategy { kBaseline, kPgm };

enum class Algorithm { kCg, kGgBaseline, kGgPgm };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

enum class SolveStatus { kRunning, kConvergedApprox, kTimeLimit };

std::string_view to_string(SolveStatus status);

struct GGConfig {
  RmpStrategy rmp_strategy = RmpStrategy::kPgm;
  double time_limit_s = 3000.0;
  int max_pricing_tries = 100;
  double epsilon_edge = 1e-3;
  std::uint64_t seed = 1;
  PricingMode pricing_mode = PricingMode::kFirst;
  bool mu_parallel = true;
  int max_consecutive_duplicates = 10;
  int max_inner_iterations = 0;          // PGM inner cap; 0 picks the default
  std::filesystem::path dump_lp_dir;     // empty disables the dumps
  std::filesystem::path dump_graph_dir;

  // Throws std::invalid_argument on nonpositive limits.
  void validate() const;
};

struct SolverState {
  std::vector<FamilyGraph> families;
  std::unordered_set<std::uint64_t> family_hashes;
  std::vector<Route> columns;          // plain column generation only
  std::vector<double> column_values;
  EdgeValues flows;                    // graph generation only
  std::vector<double> artificial_values;
  Duals duals;
  double objective = 0.0;
  int iteration = 0;
  SolveStatus status = SolveStatus::kRunning;
  // Inner objective sequence of the latest PGM solve.
  std::vector<double> inner_objectives;
  Rng rng;

  bool artificials_active(double tolerance = 1e-9) const;
};

struct SolveResult {
  SolverState state;
  IterationLog log;
};

struct SolveHooks {
  Pricer* pricer = nullptr;  // heuristic pricing from the config when null
  // Runs after every master solve, before pricing.
  std::function<void(const SolverState&)> after_rmp;
};

// One family (or column, for plain column generation) from the route priced
// with every customer dual at 10 * artificial_cost and the fleet dual at 0.
// Throws InstanceError when the fleet cannot carry the total demand.
SolverState initialize_gg(const Instance& instance, const GGConfig& config, Pricer& pricer);

SolveResult gg_solve(const Instance& instance, const GGConfig& config,
                     const SolveHooks& hooks = {});

SolveResult cg_solve(const Instance& instance, const GGConfig& config,
                     const SolveHooks& hooks = {});

SolveResult solve(const Instance& instance, Algorithm algorithm, GGConfig config,
                  const SolveHooks& hooks = {});

struct WeightedRoute {
  Route route;
  double weight = 0.0;
};

// Routes with positive weight behind the current primal solution. Edge flows
// are split into paths by repeatedly peeling the heaviest-edge path; throws
// std::runtime_error if flow conservation is off by more than 1e-6.
std::vector<WeightedRoute> flow_decompose(const SolverState& state);

}  // namespace ggpgm

#include "ggpgm/gg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "ggpgm/stopwatch.hpp"

namespace ggpgm {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kCg: return "cg";
    case Algorithm::kGgBaseline: return "gg-bl";
    case Algorithm::kGgPgm: return "gg-pgm";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "cg") return Algorithm::kCg;
  if (text == "gg-bl") return Algorithm::kGgBaseline;
  if (text == "gg-pgm") return Algorithm::kGgPgm;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kRunning: return "running";
    case SolveStatus::kConvergedApprox: return "converged-approx";
    case SolveStatus::kTimeLimit: return "time-limit";
  }
  return "?";
}

void GGConfig::validate() const {
  if (!(time_limit_s >= 0.0)) throw std::invalid_argument("time limit must be nonnegative");
  if (max_pricing_tries < 1) throw std::invalid_argument("max pricing tries must be positive");
  if (!(epsilon_edge > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (max_consecutive_duplicates < 1) {
    throw std::invalid_argument("duplicate limit must be positive");
  }
  if (max_inner_iterations < 0) {
    throw std::invalid_argument("inner iteration cap must be nonnegative");
  }
}

bool SolverState::artificials_active(double tolerance) const {
  return std::any_of(artificial_values.begin(), artificial_values.end(),
                     [&](double v) { return v > tolerance; });
}

namespace {

std::filesystem::path numbered(const std::filesystem::path& dir, const char* stem, int k,
                               const char* ext) {
  char name[64];
  std::snprintf(name, sizeof name, "%s_%04d.%s", stem, k, ext);
  return dir / name;
}

void dump_lp(const GGConfig& config, int iteration, const LpProblem& lp) {
  if (config.dump_lp_dir.empty()) return;
  std::filesystem::create_directories(config.dump_lp_dir);
  std::ofstream out(numbered(config.dump_lp_dir, "rmp", iteration, "lp"));
  write_lp_text(lp, out);
}

void dump_graph(const GGConfig& config, int family, const FamilyGraph& graph) {
  if (config.dump_graph_dir.empty()) return;
  std::filesystem::create_directories(config.dump_graph_dir);
  std::ofstream out(numbered(config.dump_graph_dir, "family", family, "txt"));
  write_graph_text(graph, out);
}

void require_optimal(const LpSolution& solution, const char* what, int iteration) {
  if (solution.status != LpStatus::kOptimal) {
    throw LpError(std::string(what) + " solve ended with status " +
                  std::string(to_string(solution.status)) + " at iteration " +
                  std::to_string(iteration));
  }
}

bool add_family(SolverState& state, const Instance& instance, const GGConfig& config,
                const Route& route) {
  Ordering ordering = build_ordering_from_route(instance, route, state.rng);
  if (!state.family_hashes.insert(ordering.hash()).second) return false;
  state.families.emplace_back(instance, std::move(ordering));
  dump_graph(config, static_cast<int>(state.families.size()) - 1, state.families.back());
  return true;
}

bool add_column(SolverState& state, const Route& route) {
  if (std::find(state.columns.begin(), state.columns.end(), route) != state.columns.end()) {
    return false;
  }
  state.columns.push_back(route);
  return true;
}

struct PricingOutcome {
  bool added = false;
  double reduced_cost = 0.0;
  int orderings_tried = 0;
};

// Prices until a new family or column is added, pricing fails, or too many
// consecutive duplicates come back.
template <class AddFn>
PricingOutcome price_and_add(const Instance& instance, const GGConfig& config,
                             SolverState& state, Pricer& pricer, AddFn add) {
  PricingOutcome out;
  for (int duplicates = 0; duplicates < config.max_consecutive_duplicates;) {
    PricingResult r = pricer.price(instance, state.duals, state.rng);
    out.orderings_tried += r.orderings_tried;
    out.reduced_cost = r.reduced_cost;
    if (!r.found) break;
    if (add(r.route)) {
      out.added = true;
      break;
    }
    ++duplicates;
  }
  if (!out.added) out.reduced_cost = std::min(out.reduced_cost, 0.0);
  return out;
}

template <class SolveRmp, class AddFn>
SolveResult outer_loop(const Instance& instance, const GGConfig& config,
                       const SolveHooks& hooks, Pricer& pricer, SolverState initial,
                       SolveRmp solve_rmp, AddFn add) {
  Stopwatch clock;
  SolveResult result{std::move(initial), {}};
  SolverState& state = result.state;
  while (true) {
    ++state.iteration;
    IterationRecord rec;
    rec.iteration = state.iteration;
    Stopwatch rmp_clock;
    solve_rmp(state, rec);
    rec.rmp_time_s = rmp_clock.seconds();
    rec.rmp_objective = state.objective;
    if (hooks.after_rmp) hooks.after_rmp(state);

    Stopwatch pricing_clock;
    const PricingOutcome priced =
        price_and_add(instance, config, state, pricer,
                      [&](const Route& route) { return add(state, route); });
    rec.pricing_time_s = pricing_clock.seconds();
    rec.pricing_reduced_cost = priced.reduced_cost;
    rec.orderings_tried = priced.orderings_tried;
    rec.wall_time_s = clock.seconds();
    result.log.push_back(rec);

    if (!priced.added) {
      state.status = SolveStatus::kConvergedApprox;
      break;
    }
    if (clock.seconds() >= config.time_limit_s) {
      state.status = SolveStatus::kTimeLimit;
      break;
    }
  }
  return result;
}

}  // namespace

SolverState initialize_gg(const Instance& instance, const GGConfig& config, Pricer& pricer) {
  config.validate();
  if (static_cast<long>(instance.n_vehicles()) * instance.capacity() < instance.total_demand()) {
    throw InstanceError("infeasible instance: " + std::to_string(instance.n_vehicles()) +
                        " vehicles of capacity " + std::to_string(instance.capacity()) +
                        " cannot carry a total demand of " +
                        std::to_string(instance.total_demand()));
  }
  SolverState state;
  state.rng.seed(config.seed);
  const Duals start = Duals::uniform(instance, 10.0 * artificial_cost(instance), 0.0);
  PricingResult r = pricer.price(instance, start, state.rng);
  if (r.route.visits.empty()) throw std::logic_error("initial pricing returned no route");
  state.duals = start;
  state.columns.push_back(r.route);
  Ordering ordering = build_ordering_from_route(instance, r.route, state.rng);
  state.family_hashes.insert(ordering.hash());
  state.families.emplace_back(instance, std::move(ordering));
  dump_graph(config, 0, state.families.back());
  return state;
}

SolveResult gg_solve(const Instance& instance, const GGConfig& config, const SolveHooks& hooks) {
  HeuristicPricer heuristic(config.max_pricing_tries, config.pricing_mode);
  Pricer& pricer = hooks.pricer != nullptr ? *hooks.pricer : heuristic;
  SolverState initial = initialize_gg(instance, config, pricer);
  initial.columns.clear();

  std::optional<Basis> baseline_basis;
  std::optional<PgmResult> last_pgm;
  PgmOptions pgm_options;
  pgm_options.epsilon = config.epsilon_edge;
  pgm_options.parallel_mu = config.mu_parallel;
  pgm_options.max_inner_iterations = config.max_inner_iterations;

  auto solve_rmp = [&](SolverState& state, IterationRecord& rec) {
    rec.n_families = static_cast<int>(state.families.size());
    if (config.rmp_strategy == RmpStrategy::kBaseline) {
      const GraphMaster master = assemble_full_rmp(instance, state.families);
      Stopwatch lp_clock;
      const LpSolution sol = solve_lp(master.problem(), baseline_basis);
      rec.lp_time_s = lp_clock.seconds();
      require_optimal(sol, "baseline master", state.iteration);
      dump_lp(config, state.iteration, master.problem());
      baseline_basis = sol.basis;
      state.flows = master.edge_values(state.families, sol);
      state.artificial_values = master.artificial_values(sol);
      state.duals = master.duals(sol);
      state.objective = sol.objective;
      rec.n_active_edges = master.n_edge_vars();
      return;
    }
    PartialEdgeSets edges;
    if (!last_pgm) {
      edges.assign(1, {});
      for (int e = 0; e < state.families[0].n_edges(); ++e) edges[0].push_back(e);
    } else {
      edges = hot_start_edges(state.flows);
    }
    edges.resize(state.families.size());
    PgmResult pgm = pgm_solve_rmp(instance, state.families, edges, pgm_options,
                                  last_pgm ? &*last_pgm : nullptr);
    dump_lp(config, state.iteration, pgm.master.problem());
    rec.lp_time_s = pgm.lp_time_s;
    rec.mu_time_s = pgm.mu_time_s;
    rec.n_active_edges = pgm.master.n_edge_vars();
    state.flows = std::move(pgm.flows);
    state.artificial_values = pgm.master.artificial_values(pgm.solution);
    state.duals = pgm.duals;
    state.objective = pgm.objective;
    state.inner_objectives = pgm.inner_objectives;
    last_pgm = std::move(pgm);
  };
  auto add = [&](SolverState& state, const Route& route) {
    return add_family(state, instance, config, route);
  };
  return outer_loop(instance, config, hooks, pricer, std::move(initial), solve_rmp, add);
}

SolveResult cg_solve(const Instance& instance, const GGConfig& config, const SolveHooks& hooks) {
  HeuristicPricer heuristic(config.max_pricing_tries, config.pricing_mode);
  Pricer& pricer = hooks.pricer != nullptr ? *hooks.pricer : heuristic;
  SolverState initial = initialize_gg(instance, config, pricer);
  initial.families.clear();
  initial.family_hashes.clear();

  std::optional<Basis> basis;
  const int n = instance.n_customers();
  auto solve_rmp = [&](SolverState& state, IterationRecord& rec) {
    rec.n_families = static_cast<int>(state.columns.size());
    rec.n_active_edges = rec.n_families;
    const LpProblem lp = assemble_route_rmp(instance, state.columns);
    Stopwatch lp_clock;
    const LpSolution sol = solve_lp(lp, basis);
    rec.lp_time_s = lp_clock.seconds();
    require_optimal(sol, "column master", state.iteration);
    dump_lp(config, state.iteration, lp);
    basis = sol.basis;
    state.artificial_values.assign(sol.primal.begin(), sol.primal.begin() + n);
    state.column_values.assign(sol.primal.begin() + n, sol.primal.end());
    state.duals = Duals{{sol.duals.begin(), sol.duals.begin() + n + 1}};
    state.objective = sol.objective;
  };
  auto add = [](SolverState& state, const Route& route) { return add_column(state, route); };
  return outer_loop(instance, config, hooks, pricer, std::move(initial), solve_rmp, add);
}

SolveResult solve(const Instance& instance, Algorithm algorithm, GGConfig config,
                  const SolveHooks& hooks) {
  switch (algorithm) {
    case Algorithm::kCg:
      return cg_solve(instance, config, hooks);
    case Algorithm::kGgBaseline:
      config.rmp_strategy = RmpStrategy::kBaseline;
      return gg_solve(instance, config, hooks);
    case Algorithm::kGgPgm:
      config.rmp_strategy = RmpStrategy::kPgm;
      return gg_solve(instance, config, hooks);
  }
  throw std::invalid_argument("unknown algorithm");
}

namespace {

constexpr double kPeelTolerance = 1e-9;
constexpr double kConservationTolerance = 1e-6;

void decompose_family(const FamilyGraph& graph, std::vector<double> flow,
                      std::vector<WeightedRoute>& out) {
  std::vector<double> balance(graph.n_vertices(), 0.0);
  for (int e = 0; e < graph.n_edges(); ++e) {
    const FamilyEdge& edge = graph.edge(e);
    balance[edge.tail] += flow[e];
    balance[edge.head] -= flow[e];
  }
  for (int v = 0; v < graph.n_vertices(); ++v) {
    if (graph.is_interior(v) && std::abs(balance[v]) > kConservationTolerance) {
      throw std::runtime_error("flow conservation violated by " + std::to_string(balance[v]) +
                               " at vertex " + std::to_string(v));
    }
  }
  std::vector<int> path;
  while (true) {
    path.clear();
    int v = graph.source();
    while (v != graph.sink()) {
      int best = -1;
      for (int e = graph.out_begin(v); e < graph.out_end(v); ++e) {
        if (flow[e] > kPeelTolerance && (best < 0 || flow[e] > flow[best])) best = e;
      }
      if (best < 0) break;
      path.push_back(best);
      v = graph.edge(best).head;
    }
    if (path.empty()) return;
    double weight = flow[path.front()];
    for (int e : path) weight = std::min(weight, flow[e]);
    for (int e : path) flow[e] -= weight;
    if (v != graph.sink()) {
      // Rounding residue stranded at an interior vertex.
      flow[path.back()] = 0.0;
      continue;
    }
    out.push_back({column_of_path(graph, path), weight});
  }
}

}  // namespace

std::vector<WeightedRoute> flow_decompose(const SolverState& state) {
  std::vector<WeightedRoute> out;
  for (std::size_t k = 0; k < state.columns.size() && k < state.column_values.size(); ++k) {
    if (state.column_values[k] > kPeelTolerance) {
      out.push_back({state.columns[k], state.column_values[k]});
    }
  }
  for (std::size_t f = 0; f < state.families.size() && f < state.flows.size(); ++f) {
    decompose_family(state.families[f], state.flows[f], out);
  }
  return out;
}

}  // namespace ggpgm

#include "ggpgm/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ggpgm/stopwatch.hpp"

namespace ggpgm {

std::vector<SummaryRow> run_experiment(const ExperimentConfig& config, std::ostream* progress) {
  if (config.algorithms.empty()) throw std::invalid_argument("no algorithm requested");
  std::filesystem::create_directories(config.out_dir);
  std::vector<SummaryRow> rows;
  for (std::uint64_t seed : config.instance_seeds) {
    const Instance instance = generate_instance(seed, config.generator);
    const std::string stem = "inst_" + std::to_string(seed);
    save_instance(instance, config.out_dir / (stem + ".json"));
    for (Algorithm algorithm : config.algorithms) {
      Stopwatch clock;
      const SolveResult result = solve(instance, algorithm, config.solver);
      SummaryRow row;
      row.instance_seed = seed;
      row.algorithm = algorithm;
      row.objective = result.state.objective;
      row.status = result.state.status;
      row.total_time_s = clock.seconds();
      row.iterations = result.state.iteration;
      row.n_families = result.log.empty() ? 0 : result.log.back().n_families;
      row.artificials_active = result.state.artificials_active();
      row.log_path = config.out_dir / (stem + "_" + std::string(to_string(algorithm)) + ".csv");
      write_iteration_log(result.log, row.log_path);
      if (progress != nullptr) {
        *progress << stem << ' ' << to_string(algorithm) << ": objective " << row.objective
                  << ", " << to_string(row.status) << ", " << row.iterations
                  << " iterations, " << row.total_time_s << " s\n";
      }
      rows.push_back(row);
    }
  }
  std::ofstream summary(config.out_dir / "summary.csv");
  if (!summary) throw std::runtime_error("cannot write summary.csv in " + config.out_dir.string());
  write_summary_csv(rows, summary);
  return rows;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "instance_seed,algorithm,objective,status,total_time_s,iterations,n_families,"
         "artificials_active,log\n";
  char buf[64];
  for (const SummaryRow& r : rows) {
    out << r.instance_seed << ',' << to_string(r.algorithm) << ',';
    std::snprintf(buf, sizeof buf, "%.9g", r.objective);
    out << buf << ',' << to_string(r.status) << ',';
    std::snprintf(buf, sizeof buf, "%.9g", r.total_time_s);
    out << buf << ',' << r.iterations << ',' << r.n_families << ','
        << (r.artificials_active ? 1 : 0) << ',' << r.log_path.filename().string() << '\n';
  }
}

CompareResult compare_rmp(const Instance& instance, GGConfig config,
                          const CompareOptions& options) {
  if (options.every < 1) throw std::invalid_argument("comparison stride must be positive");
  config.rmp_strategy = RmpStrategy::kPgm;
  CompareResult out{gg_solve(instance, config), {}};
  const auto& families = out.run.state.families;

  std::optional<Basis> basis;
  LpOptions lp_options;
  lp_options.time_limit_s = options.baseline_time_limit_s;
  for (const IterationRecord& rec : out.run.log) {
    if ((rec.iteration - 1) % options.every != 0) continue;
    const std::span<const FamilyGraph> prefix(families.data(), rec.n_families);
    const GraphMaster master = assemble_full_rmp(instance, prefix);
    Stopwatch clock;
    const LpSolution sol =
        solve_lp(master.problem(), options.warm_baseline ? basis : std::nullopt, lp_options);
    RmpComparison row;
    row.time.baseline_s = clock.seconds();
    row.iteration = rec.iteration;
    row.n_families = rec.n_families;
    row.n_edges = master.n_edge_vars();
    row.pgm_objective = rec.rmp_objective;
    row.time.iteration = rec.iteration;
    row.time.pgm_lp_s = rec.lp_time_s;
    row.time.pgm_mu_s = rec.mu_time_s;
    if (sol.status == LpStatus::kOptimal) {
      row.baseline_objective = sol.objective;
      basis = sol.basis;
    } else if (sol.status == LpStatus::kIterationLimit) {
      row.baseline_capped = true;
      row.baseline_objective = std::numeric_limits<double>::quiet_NaN();
      basis.reset();
    } else {
      throw LpError("baseline master solve ended with status " +
                    std::string(to_string(sol.status)) + " at iteration " +
                    std::to_string(rec.iteration));
    }
    out.rows.push_back(row);
  }
  return out;
}

void write_comparison_csv(const std::vector<RmpComparison>& rows, std::ostream& out) {
  out << "iteration,n_families,n_edges,pgm_objective,baseline_objective,baseline_capped,"
         "baseline_s,pgm_lp_s,pgm_mu_s\n";
  char buf[256];
  for (const RmpComparison& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%ld,%.9g,%.9g,%d,%.9g,%.9g,%.9g\n", r.iteration,
                  r.n_families, r.n_edges, r.pgm_objective, r.baseline_objective,
                  r.baseline_capped ? 1 : 0, r.time.baseline_s, r.time.pgm_lp_s,
                  r.time.pgm_mu_s);
    out << buf;
  }
}

}  // namespace ggpgm

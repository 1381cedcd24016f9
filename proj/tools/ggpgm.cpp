// Command-line front end: instance generation, solves, plots and the
// baseline-versus-PGM master comparison.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ggpgm/experiment.hpp"
#include "ggpgm/gg.hpp"
#include "ggpgm/instance.hpp"
#include "ggpgm/iteration_log.hpp"
#include "ggpgm/plot.hpp"
#include "ggpgm/rng.hpp"

namespace {

using namespace ggpgm;

struct SolverFlags {
  double time_limit = 3000.0;
  double epsilon = 1e-3;
  int max_tries = 100;
  std::string pricing_mode = "first";
  std::string mu_parallel = "on";
  int max_inner = 0;
  std::uint64_t seed = 1;
  std::string dump_lp;
  std::string dump_graphs;

  void attach(CLI::App& app) {
    app.add_option("--time-limit", time_limit, "Wall-clock limit in seconds")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--epsilon", epsilon, "PGM edge selection slack")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-pricing-tries", max_tries, "Random orderings per pricing call")
        ->check(CLI::PositiveNumber);
    app.add_option("--pricing-mode", pricing_mode, "Stop at the first improving route or keep the best")
        ->check(CLI::IsMember({"first", "best"}));
    app.add_option("--mu-parallel", mu_parallel, "Parallel mu sweeps (GGPGM_THREADS caps workers)")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--max-inner-iterations", max_inner,
                   "PGM inner iteration cap; 0 picks 10 x families + customers + 100")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--dump-lp", dump_lp, "Write every master LP into this directory");
    app.add_option("--dump-graphs", dump_graphs, "Write every family graph into this directory");
  }

  GGConfig config() const {
    GGConfig c;
    c.time_limit_s = time_limit;
    c.epsilon_edge = epsilon;
    c.max_pricing_tries = max_tries;
    c.pricing_mode = parse_pricing_mode(pricing_mode);
    c.mu_parallel = mu_parallel == "on";
    c.max_inner_iterations = max_inner;
    c.seed = seed;
    c.dump_lp_dir = dump_lp;
    c.dump_graph_dir = dump_graphs;
    return c;
  }
};

void attach_generator(CLI::App& app, GeneratorParams& params) {
  app.add_option("--n", params.n_customers, "Number of customers")->check(CLI::PositiveNumber);
  app.add_option("--grid", params.grid_size, "Side of the square placement grid")
      ->check(CLI::PositiveNumber);
  app.add_option("--capacity", params.capacity, "Vehicle capacity")->check(CLI::PositiveNumber);
  app.add_option("--vehicles", params.n_vehicles, "Fleet size")->check(CLI::PositiveNumber);
  app.add_option("--demand", params.demand, "Demand of every customer")
      ->check(CLI::PositiveNumber);
}

std::string render(const auto& draw) {
  std::ostringstream svg;
  draw(svg);
  return svg.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph generation with principled graph management for CVRP LP relaxations"};
  app.require_subcommand(1);

  GeneratorParams gen_params;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--seed", gen_seed, "Instance seed");
  attach_generator(*gen, gen_params);
  gen->add_option("--out", gen_out, "Instance file")->required();

  SolverFlags solve_flags;
  std::string solve_instance, solve_algo = "gg-pgm", solve_log;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the LP relaxation of one instance");
  solve_cmd->add_option("--instance", solve_instance, "Instance file")->required();
  solve_cmd->add_option("--algo", solve_algo, "Algorithm")
      ->check(CLI::IsMember({"cg", "gg-bl", "gg-pgm"}));
  solve_cmd->add_option("--log", solve_log, "Iteration log CSV");
  solve_cmd->add_option("--seed", solve_flags.seed, "Seed for pricing and family construction");
  solve_flags.attach(*solve_cmd);

  std::vector<std::string> plot_logs, plot_labels;
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Convergence plot from iteration logs");
  plot->add_option("--logs", plot_logs, "Iteration log CSVs")->required();
  plot->add_option("--labels", plot_labels, "Series labels (default: file names)");
  plot->add_option("--out", plot_out, "SVG file")->required();

  SolverFlags cmp_flags;
  CompareOptions cmp_options;
  std::string cmp_instance, cmp_out, cmp_svg, cmp_log;
  auto* compare = app.add_subcommand(
      "compare-rmp", "Run GG with PGM and re-solve each master over all edges");
  compare->add_option("--instance", cmp_instance, "Instance file")->required();
  compare->add_option("--seed", cmp_flags.seed, "Seed for pricing and family construction");
  compare->add_option("--every", cmp_options.every, "Compare every k-th iteration")
      ->check(CLI::PositiveNumber);
  compare->add_flag("--warm-baseline", cmp_options.warm_baseline,
                    "Warm-start each baseline solve from the previous one");
  compare->add_option("--baseline-time-limit", cmp_options.baseline_time_limit_s,
                      "Cap on one baseline solve, seconds");
  compare->add_option("--out", cmp_out, "Comparison CSV")->required();
  compare->add_option("--svg", cmp_svg, "Scatter plot of master solve times");
  compare->add_option("--log", cmp_log, "Iteration log CSV of the PGM run");
  cmp_flags.attach(*compare);

  SolverFlags bench_flags;
  ExperimentConfig bench;
  std::vector<std::string> bench_algos{"gg-bl", "gg-pgm"};
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Instances x algorithms with logs and summary");
  bench_cmd->add_option("--seeds", bench.instance_seeds, "Instance seeds")->required();
  bench_cmd->add_option("--algos", bench_algos, "Algorithms")
      ->check(CLI::IsMember({"cg", "gg-bl", "gg-pgm"}));
  bench_cmd->add_option("--out", bench_out, "Output directory")->required();
  attach_generator(*bench_cmd, bench.generator);
  bench_cmd->add_option("--solver-seed", bench_flags.seed, "Seed for pricing and family construction");
  bench_flags.attach(*bench_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      save_instance(generate_instance(gen_seed, gen_params), gen_out);
      std::cout << "wrote " << gen_out << " (rng " << kRngName << ", seed " << gen_seed << ")\n";
    } else if (*solve_cmd) {
      const Instance instance = load_instance(solve_instance);
      const SolveResult result =
          solve(instance, parse_algorithm(solve_algo), solve_flags.config());
      if (!solve_log.empty()) write_iteration_log(result.log, solve_log);
      std::cout << "algorithm " << solve_algo << "\nstatus " << to_string(result.state.status)
                << "\nobjective " << result.state.objective << "\niterations "
                << result.state.iteration << "\nwall_time_s "
                << (result.log.empty() ? 0.0 : result.log.back().wall_time_s) << '\n';
      if (result.state.artificials_active()) {
        std::cout << "warning: artificial columns are active in the final master\n";
      }
    } else if (*plot) {
      std::vector<PlotSeries> series;
      for (std::size_t k = 0; k < plot_logs.size(); ++k) {
        const std::string label = k < plot_labels.size()
                                      ? plot_labels[k]
                                      : std::filesystem::path(plot_logs[k]).stem().string();
        series.push_back({label, read_iteration_log(plot_logs[k])});
      }
      write_svg_file(plot_out, render([&](std::ostream& o) { write_convergence_svg(series, o); }));
    } else if (*compare) {
      const Instance instance = load_instance(cmp_instance);
      const CompareResult result = compare_rmp(instance, cmp_flags.config(), cmp_options);
      std::ofstream out(cmp_out);
      if (!out) throw std::runtime_error("cannot write " + cmp_out);
      write_comparison_csv(result.rows, out);
      if (!cmp_log.empty()) write_iteration_log(result.run.log, cmp_log);
      if (!cmp_svg.empty()) {
        std::vector<RmpTimeSample> samples;
        for (const RmpComparison& r : result.rows) samples.push_back(r.time);
        write_svg_file(cmp_svg, render([&](std::ostream& o) { write_rmp_time_svg(samples, o); }));
      }
      std::cout << "status " << to_string(result.run.state.status) << ", "
                << result.rows.size() << " comparisons written to " << cmp_out << '\n';
    } else if (*bench_cmd) {
      for (const auto& a : bench_algos) bench.algorithms.push_back(parse_algorithm(a));
      bench.solver = bench_flags.config();
      bench.out_dir = bench_out;
      run_experiment(bench, &std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <vector>

#include "ggpgm/gg.hpp"
#include "ggpgm/instance.hpp"
#include "ggpgm/plot.hpp"

namespace ggpgm {

struct ExperimentConfig {
  std::vector<std::uint64_t> instance_seeds;
  GeneratorParams generator;
  std::vector<Algorithm> algorithms;
  GGConfig solver;
  std::filesystem::path out_dir;
};

struct SummaryRow {
  std::uint64_t instance_seed = 0;
  Algorithm algorithm = Algorithm::kGgPgm;
  double objective = 0.0;
  SolveStatus status = SolveStatus::kRunning;
  double total_time_s = 0.0;
  int iterations = 0;
  int n_families = 0;
  bool artificials_active = false;
  std::filesystem::path log_path;
};

// Generates each instance, solves it with each algorithm, and writes
// inst_<seed>.json, inst_<seed>_<algo>.csv and summary.csv into out_dir.
// Progress lines go to `progress` when non-null.
std::vector<SummaryRow> run_experiment(const ExperimentConfig& config,
                                       std::ostream* progress = nullptr);

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

struct CompareOptions {
  int every = 1;                  // compare on every k-th outer iteration
  bool warm_baseline = false;     // reuse the previous baseline basis
  double baseline_time_limit_s = std::numeric_limits<double>::infinity();
};

struct RmpComparison {
  int iteration = 0;
  int n_families = 0;
  long n_edges = 0;               // usable edges in the full master
  double pgm_objective = 0.0;
  double baseline_objective = 0.0;
  bool baseline_capped = false;   // hit the time limit; baseline_s is a lower bound
  RmpTimeSample time;
};

struct CompareResult {
  SolveResult run;
  std::vector<RmpComparison> rows;
};

// Runs GG with PGM, then re-solves the master of sampled iterations over all
// edges of the same families. Baseline solves happen after the run so they
// do not eat into its time limit.
CompareResult compare_rmp(const Instance& instance, GGConfig config,
                          const CompareOptions& options = {});

void write_comparison_csv(const std::vector<RmpComparison>& rows, std::ostream& out);

}  // namespace ggpgm

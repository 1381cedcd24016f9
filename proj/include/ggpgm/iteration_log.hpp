#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace ggpgm {

// One row per completed outer iteration.
struct IterationRecord {
  int iteration = 0;
  double wall_time_s = 0.0;           // since the solve started, at iteration end
  double rmp_objective = 0.0;
  double pricing_reduced_cost = 0.0;  // capped at 0 when pricing found nothing
  int n_families = 0;                 // columns, for plain column generation
  long n_active_edges = 0;            // variables in the master, artificials excluded
  double rmp_time_s = 0.0;
  double mu_time_s = 0.0;
  double lp_time_s = 0.0;
  double pricing_time_s = 0.0;
  int orderings_tried = 0;

  bool operator==(const IterationRecord&) const = default;
};

using IterationLog = std::vector<IterationRecord>;

// CSV with a header row and 9 significant digits.
void write_iteration_log(const IterationLog& log, std::ostream& out);
void write_iteration_log(const IterationLog& log, const std::filesystem::path& path);

// Throws std::runtime_error on a malformed file.
IterationLog read_iteration_log(std::istream& in);
IterationLog read_iteration_log(const std::filesystem::path& path);

}  // namespace ggpgm

#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ggpgm/family.hpp"
#include "ggpgm/instance.hpp"
#include "ggpgm/lp.hpp"
#include "ggpgm/rmp.hpp"

namespace ggpgm {

class PgmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Best-column values of one family under fixed duals: `plus[i]` is the
// lightest source-to-i path, `minus[j]` the lightest j-to-sink path, and
// `edge[e]` the lightest source-to-sink path through e (the reduced cost of
// the best route in the family using e). Infinite for unusable edges.
struct MuTable {
  std::vector<double> plus;
  std::vector<double> minus;
  std::vector<double> edge;

  double min_edge() const;
};

MuTable compute_mu(const FamilyGraph& graph, const Duals& duals);

// Edges with a negative value within `epsilon` of the family minimum; empty
// when the minimum is not negative.
std::vector<int> select_edges(const MuTable& mu, double epsilon);

// Sorted edge ids per family.
using PartialEdgeSets = std::vector<std::vector<int>>;

// Edges carrying flow above `threshold` in a previous solution.
PartialEdgeSets hot_start_edges(const EdgeValues& previous, double threshold = 1e-9);

GraphMaster assemble_restricted_rmp(const Instance& instance,
                                    std::span<const FamilyGraph> families,
                                    const PartialEdgeSets& edge_sets);

// Stop once every edge of every family has mu at or above this.
inline constexpr double kMuTolerance = -1e-6;

struct PgmOptions {
  double epsilon = 1e-3;
  bool parallel_mu = true;
  int max_inner_iterations = 0;  // 0 means 10 * |families| + |customers| + 100
  LpOptions lp;
};

struct PgmResult {
  explicit PgmResult(GraphMaster m) : master(std::move(m)) {}

  GraphMaster master;
  LpSolution solution;
  EdgeValues flows;
  Duals duals;
  double objective = 0.0;
  int inner_iterations = 0;
  std::vector<double> inner_objectives;
  double lp_time_s = 0.0;
  double mu_time_s = 0.0;
  double min_mu = 0.0;  // at termination
};

// Solves the master over all family edges by alternating restricted solves
// with mu-driven edge additions. `previous` (with its basis) warm-starts the
// first restricted solve.
PgmResult pgm_solve_rmp(const Instance& instance, std::span<const FamilyGraph> families,
                        const PartialEdgeSets& initial_edges, const PgmOptions& options,
                        const PgmResult* previous = nullptr);

// Worker count for parallel mu sweeps: GGPGM_THREADS when set, otherwise the
// hardware concurrency.
int mu_thread_count();

}  // namespace ggpgm

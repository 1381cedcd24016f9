#include "ggpgm/pgm.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "ggpgm/stopwatch.hpp"

namespace ggpgm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FamilyScan {
  double min_mu = kInf;
  std::vector<int> selected;
};

FamilyScan scan_family(const FamilyGraph& graph, const Duals& duals, double epsilon) {
  const MuTable mu = compute_mu(graph, duals);
  return {mu.min_edge(), select_edges(mu, epsilon)};
}

}  // namespace

double MuTable::min_edge() const {
  return edge.empty() ? kInf : *std::min_element(edge.begin(), edge.end());
}

MuTable compute_mu(const FamilyGraph& graph, const Duals& duals) {
  const int nv = graph.n_vertices();
  const int ne = graph.n_edges();
  MuTable mu;
  mu.plus.assign(nv, kInf);
  mu.minus.assign(nv, kInf);
  mu.edge.resize(ne);
  std::vector<double> weight(ne);
  for (int e = 0; e < ne; ++e) weight[e] = edge_weight(graph.edge(e), duals);

  mu.plus[graph.source()] = 0.0;
  for (int v = 0; v < nv; ++v) {
    if (mu.plus[v] == kInf) continue;
    for (int e = graph.out_begin(v); e < graph.out_end(v); ++e) {
      double& head = mu.plus[graph.edge(e).head];
      head = std::min(head, mu.plus[v] + weight[e]);
    }
  }
  mu.minus[graph.sink()] = 0.0;
  for (int v = nv - 1; v >= 0; --v) {
    for (int e = graph.out_begin(v); e < graph.out_end(v); ++e) {
      mu.minus[v] = std::min(mu.minus[v], weight[e] + mu.minus[graph.edge(e).head]);
    }
  }
  for (int e = 0; e < ne; ++e) {
    const FamilyEdge& edge = graph.edge(e);
    mu.edge[e] = mu.plus[edge.tail] + mu.minus[edge.head] + weight[e];
  }
  return mu;
}

std::vector<int> select_edges(const MuTable& mu, double epsilon) {
  std::vector<int> selected;
  const double lowest = mu.min_edge();
  if (!(lowest < 0.0)) return selected;
  const double cut = std::min(0.0, lowest + epsilon);
  for (int e = 0; e < static_cast<int>(mu.edge.size()); ++e) {
    if (mu.edge[e] < cut) selected.push_back(e);
  }
  return selected;
}

PartialEdgeSets hot_start_edges(const EdgeValues& previous, double threshold) {
  PartialEdgeSets sets(previous.size());
  for (std::size_t f = 0; f < previous.size(); ++f) {
    for (std::size_t e = 0; e < previous[f].size(); ++e) {
      if (previous[f][e] > threshold) sets[f].push_back(static_cast<int>(e));
    }
  }
  return sets;
}

GraphMaster assemble_restricted_rmp(const Instance& instance,
                                    std::span<const FamilyGraph> families,
                                    const PartialEdgeSets& edge_sets) {
  GraphMaster master(instance);
  const std::size_t n = std::min(families.size(), edge_sets.size());
  for (std::size_t f = 0; f < n; ++f) {
    for (int e : edge_sets[f]) master.add_edge(static_cast<int>(f), families[f], e);
  }
  return master;
}

int mu_thread_count() {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GGPGM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = threads > 0 ? std::min(threads, cap) : cap;
  }
  return std::max(threads, 1);
}

PgmResult pgm_solve_rmp(const Instance& instance, std::span<const FamilyGraph> families,
                        const PartialEdgeSets& initial_edges, const PgmOptions& options,
                        const PgmResult* previous) {
  const int n_families = static_cast<int>(families.size());
  const int cap = options.max_inner_iterations > 0
                      ? options.max_inner_iterations
                      : 10 * n_families + instance.n_customers() + 100;
  PgmResult result{assemble_restricted_rmp(instance, families, initial_edges)};
  std::optional<Basis> hint;
  if (previous != nullptr) {
    hint = result.master.translate_basis(previous->master, previous->solution.basis);
  }
  const int n_threads =
      options.parallel_mu ? std::min(mu_thread_count(), std::max(n_families, 1)) : 1;
  std::vector<FamilyScan> scans(n_families);

  for (int inner = 1;; ++inner) {
    if (inner > cap) {
      throw PgmError("PGM did not terminate within " + std::to_string(cap) +
                     " inner iterations (min mu " + std::to_string(result.min_mu) + ")");
    }
    Stopwatch lp_clock;
    result.solution = solve_lp(result.master.problem(), hint, options.lp);
    result.lp_time_s += lp_clock.seconds();
    if (result.solution.status != LpStatus::kOptimal) {
      throw LpError("restricted master solve ended with status " +
                    std::string(to_string(result.solution.status)) + " at inner iteration " +
                    std::to_string(inner));
    }
    result.inner_iterations = inner;
    result.inner_objectives.push_back(result.solution.objective);
    result.duals = result.master.duals(result.solution);

    Stopwatch mu_clock;
    if (n_threads > 1) {
      std::vector<std::thread> workers;
      for (int t = 0; t < n_threads; ++t) {
        workers.emplace_back([&, t] {
          for (int f = t; f < n_families; f += n_threads) {
            scans[f] = scan_family(families[f], result.duals, options.epsilon);
          }
        });
      }
      for (auto& w : workers) w.join();
    } else {
      for (int f = 0; f < n_families; ++f) {
        scans[f] = scan_family(families[f], result.duals, options.epsilon);
      }
    }
    result.mu_time_s += mu_clock.seconds();

    result.min_mu = kInf;
    for (const FamilyScan& s : scans) result.min_mu = std::min(result.min_mu, s.min_mu);
    if (result.min_mu >= kMuTolerance) break;

    int added = 0;
    for (int f = 0; f < n_families; ++f) {
      for (int e : scans[f].selected) added += result.master.add_edge(f, families[f], e) ? 1 : 0;
    }
    if (added == 0) {
      throw PgmError("PGM stalled: min mu " + std::to_string(result.min_mu) +
                     " but every selected edge is already in the restricted master");
    }
    hint = result.solution.basis;
  }
  result.objective = result.solution.objective;
  result.flows = result.master.edge_values(families, result.solution);
  return result;
}

}  // namespace ggpgm

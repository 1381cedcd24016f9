#pragma once

#include <span>
#include <vector>

#include "ggpgm/family.hpp"
#include "ggpgm/instance.hpp"
#include "ggpgm/lp.hpp"
#include "ggpgm/routes.hpp"

namespace ggpgm {

// Per family, one value per edge of its graph.
using EdgeValues = std::vector<std::vector<double>>;

// Cost of the backstop artificial columns: 10 * |N| * max_uv c_uv, above
// the cost of any set of routes that covers each customer once.
double artificial_cost(const Instance& instance);

// Master LP over family graph edges. Layout, append-only so that a basis
// from an earlier solve stays meaningful after growth:
//   variables: one artificial per customer (var u - 1 covers customer u),
//              then edge variables in insertion order;
//   rows:      fleet row, one cover row per customer, then one flow
//              conservation row (outflow - inflow = 0) per interior vertex,
//              created when its first incident edge is added.
class GraphMaster {
 public:
  explicit GraphMaster(const Instance& instance);

  const LpProblem& problem() const { return problem_; }
  int n_customers() const { return n_customers_; }
  int n_edge_vars() const { return static_cast<int>(var_family_.size()); }
  int n_flow_rows() const { return static_cast<int>(row_family_.size()); }

  // Adds the edge variable unless present or leaving an unreachable vertex;
  // returns whether it was added.
  bool add_edge(int family, const FamilyGraph& graph, int edge);
  void add_all_edges(int family, const FamilyGraph& graph);
  bool contains(int family, int edge) const;
  int var_of(int family, int edge) const;

  // Edge variable values of a solution, zero for absent edges.
  EdgeValues edge_values(std::span<const FamilyGraph> families, const LpSolution& solution) const;
  std::vector<double> artificial_values(const LpSolution& solution) const;
  Duals duals(const LpSolution& solution) const;
  // Edge ids present, per family.
  std::vector<std::vector<int>> edge_sets() const;

  // Re-expresses a basis of another master over the same families in this
  // master's indices, dropping members that do not exist here.
  Basis translate_basis(const GraphMaster& other, const Basis& basis) const;

 private:
  void ensure_family(int family, const FamilyGraph& graph);
  int flow_row(int family, int vertex);

  int n_customers_;
  LpProblem problem_;
  std::vector<std::vector<int>> var_of_edge_;    // [family][edge], -1 when absent
  std::vector<std::vector<int>> row_of_vertex_;  // [family][vertex], -1 when absent
  std::vector<int> var_family_, var_edge_;       // per edge variable
  std::vector<int> row_family_, row_vertex_;     // per flow row
};

// Every usable edge of every family.
GraphMaster assemble_full_rmp(const Instance& instance, std::span<const FamilyGraph> families);

// Plain column master: artificials first, then one variable per route.
LpProblem assemble_route_rmp(const Instance& instance, std::span<const Route> routes);

}  // namespace ggpgm

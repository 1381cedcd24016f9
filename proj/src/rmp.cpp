#include "ggpgm/rmp.hpp"

namespace ggpgm {

double artificial_cost(const Instance& instance) {
  return 10.0 * instance.n_customers() * instance.max_dist();
}

namespace {

void add_artificials(const Instance& instance, LpProblem& lp) {
  const double cost = artificial_cost(instance);
  lp.add_row(RowSense::kGreaterEqual, -instance.n_vehicles());
  for (int u = 1; u <= instance.n_customers(); ++u) {
    lp.add_row(RowSense::kGreaterEqual, 1.0);
    lp.add_term(u, lp.add_variable(cost), 1.0);
  }
}

}  // namespace

GraphMaster::GraphMaster(const Instance& instance) : n_customers_(instance.n_customers()) {
  add_artificials(instance, problem_);
}

void GraphMaster::ensure_family(int family, const FamilyGraph& graph) {
  if (family >= static_cast<int>(var_of_edge_.size())) {
    var_of_edge_.resize(family + 1);
    row_of_vertex_.resize(family + 1);
  }
  if (var_of_edge_[family].empty()) {
    var_of_edge_[family].assign(graph.n_edges(), -1);
    row_of_vertex_[family].assign(graph.n_vertices(), -1);
  }
}

int GraphMaster::flow_row(int family, int vertex) {
  int& row = row_of_vertex_[family][vertex];
  if (row < 0) {
    row = problem_.add_row(RowSense::kEqual, 0.0);
    row_family_.push_back(family);
    row_vertex_.push_back(vertex);
  }
  return row;
}

bool GraphMaster::add_edge(int family, const FamilyGraph& graph, int edge) {
  ensure_family(family, graph);
  int& var = var_of_edge_[family][edge];
  if (var >= 0 || !graph.edge_usable(edge)) return false;
  const FamilyEdge& e = graph.edge(edge);
  var = problem_.add_variable(e.cost);
  var_family_.push_back(family);
  var_edge_.push_back(edge);
  if (e.row >= 0) problem_.add_term(e.row, var, e.h_value());
  if (graph.is_interior(e.tail)) problem_.add_term(flow_row(family, e.tail), var, 1.0);
  if (graph.is_interior(e.head)) problem_.add_term(flow_row(family, e.head), var, -1.0);
  return true;
}

void GraphMaster::add_all_edges(int family, const FamilyGraph& graph) {
  for (int e = 0; e < graph.n_edges(); ++e) add_edge(family, graph, e);
}

bool GraphMaster::contains(int family, int edge) const { return var_of(family, edge) >= 0; }

int GraphMaster::var_of(int family, int edge) const {
  if (family >= static_cast<int>(var_of_edge_.size()) || var_of_edge_[family].empty()) return -1;
  return var_of_edge_[family][edge];
}

EdgeValues GraphMaster::edge_values(std::span<const FamilyGraph> families,
                                    const LpSolution& solution) const {
  EdgeValues values(families.size());
  for (std::size_t f = 0; f < families.size(); ++f) values[f].assign(families[f].n_edges(), 0.0);
  for (int k = 0; k < n_edge_vars(); ++k) {
    values[var_family_[k]][var_edge_[k]] = solution.primal[n_customers_ + k];
  }
  return values;
}

std::vector<double> GraphMaster::artificial_values(const LpSolution& solution) const {
  return {solution.primal.begin(), solution.primal.begin() + n_customers_};
}

Duals GraphMaster::duals(const LpSolution& solution) const {
  return {{solution.duals.begin(), solution.duals.begin() + n_customers_ + 1}};
}

std::vector<std::vector<int>> GraphMaster::edge_sets() const {
  std::vector<std::vector<int>> sets(var_of_edge_.size());
  for (std::size_t f = 0; f < var_of_edge_.size(); ++f) {
    for (std::size_t e = 0; e < var_of_edge_[f].size(); ++e) {
      if (var_of_edge_[f][e] >= 0) sets[f].push_back(static_cast<int>(e));
    }
  }
  return sets;
}

Basis GraphMaster::translate_basis(const GraphMaster& other, const Basis& basis) const {
  Basis out;
  for (int var : basis.structural) {
    if (var < n_customers_) {
      out.structural.push_back(var);
      continue;
    }
    const int k = var - n_customers_;
    const int mine = var_of(other.var_family_[k], other.var_edge_[k]);
    if (mine >= 0) out.structural.push_back(mine);
  }
  const int fixed_rows = n_customers_ + 1;
  for (int row : basis.logical_rows) {
    if (row < fixed_rows) {
      out.logical_rows.push_back(row);
      continue;
    }
    const int family = other.row_family_[row - fixed_rows];
    const int vertex = other.row_vertex_[row - fixed_rows];
    if (family < static_cast<int>(row_of_vertex_.size()) && !row_of_vertex_[family].empty() &&
        row_of_vertex_[family][vertex] >= 0) {
      out.logical_rows.push_back(row_of_vertex_[family][vertex]);
    }
  }
  return out;
}

GraphMaster assemble_full_rmp(const Instance& instance, std::span<const FamilyGraph> families) {
  GraphMaster master(instance);
  for (std::size_t f = 0; f < families.size(); ++f) {
    master.add_all_edges(static_cast<int>(f), families[f]);
  }
  return master;
}

LpProblem assemble_route_rmp(const Instance& instance, std::span<const Route> routes) {
  LpProblem lp;
  add_artificials(instance, lp);
  for (const Route& r : routes) {
    const int var = lp.add_variable(static_cast<double>(r.cost));
    lp.add_term(kVehicleRow, var, -1.0);
    for (int u : r.visits) lp.add_term(u, var, 1.0);
  }
  return lp;
}

}  // namespace ggpgm

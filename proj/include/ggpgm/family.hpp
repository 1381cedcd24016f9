#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ggpgm/instance.hpp"
#include "ggpgm/rng.hpp"
#include "ggpgm/routes.hpp"

namespace ggpgm {

// A total order of the customers without ties.
class Ordering {
 public:
  Ordering() = default;
  // `sequence` lists each customer 1..n exactly once; throws otherwise.
  explicit Ordering(std::vector<int> sequence);

  int size() const { return static_cast<int>(sequence_.size()); }
  const std::vector<int>& sequence() const { return sequence_; }
  int position(int customer) const { return position_[customer]; }
  // 1-based position in the list.
  int beta(int customer) const { return position_[customer] + 1; }
  // True iff u comes (not necessarily immediately) before v.
  bool precedes(int u, int v) const { return position_[u] < position_[v]; }
  std::uint64_t hash() const;

  bool operator==(const Ordering& other) const { return sequence_ == other.sequence_; }

 private:
  std::vector<int> sequence_;
  std::vector<int> position_;  // indexed by customer id; [0] unused
};

// Constraint contribution of an edge. Each CVRP family edge has at most one
// nonzero: +1 on the cover row of the customer it enters, or -1 on the fleet
// row for edges into the sink.
struct FamilyEdge {
  int tail;
  int head;
  int cost;
  int row;  // master row with the nonzero entry, -1 when none

  double h_value() const { return row == kVehicleRow ? -1.0 : 1.0; }
};

// c_ij - h_ij' pi.
inline double edge_weight(const FamilyEdge& edge, const Duals& duals) {
  if (edge.row < 0) return edge.cost;
  return edge.cost - edge.h_value() * duals.pi[edge.row];
}

// The DAG of one family: source, sink and one vertex (u, d) per customer u
// and remaining capacity d in 0..d_0 - d_u. Source/sink paths are exactly the
// routes whose consecutive customers respect the ordering.
//
// Vertex ids are a topological order: source is 0, then the vertices of each
// customer in ordering position, the sink last. Edges are grouped by tail.
class FamilyGraph {
 public:
  FamilyGraph(const Instance& instance, Ordering ordering);

  const Ordering& ordering() const { return ordering_; }

  int n_vertices() const { return static_cast<int>(vertex_customer_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  static constexpr int source() { return 0; }
  int sink() const { return n_vertices() - 1; }
  bool is_interior(int v) const { return v != source() && v != sink(); }

  int vertex_customer(int v) const { return vertex_customer_[v]; }
  int vertex_capacity(int v) const { return vertex_capacity_[v]; }
  // Vertex (u, d), or -1 when d is out of range.
  int vertex_of(int customer, int remaining) const;

  std::span<const FamilyEdge> edges() const { return edges_; }
  const FamilyEdge& edge(int e) const { return edges_[e]; }
  int out_begin(int v) const { return out_start_[v]; }
  int out_end(int v) const { return out_start_[v + 1]; }

  // Whether some source path reaches v. Edges leaving unreachable vertices
  // carry no flow and are left out of the master LPs.
  bool reachable(int v) const { return reachable_[v] != 0; }
  bool edge_usable(int e) const { return reachable_[edges_[e].tail] != 0; }
  int n_usable_edges() const { return n_usable_edges_; }

 private:
  Ordering ordering_;
  std::vector<int> vertex_customer_;  // 0 for source and sink
  std::vector<int> vertex_capacity_;
  std::vector<int> first_vertex_;     // per customer id
  int capacity_ = 0;
  std::vector<int> customer_demand_;
  std::vector<FamilyEdge> edges_;
  std::vector<int> out_start_;
  std::vector<char> reachable_;
  int n_usable_edges_ = 0;
};

FamilyGraph build_family_graph(const Instance& instance, const Ordering& ordering);

// Route customers first in visit order; every other customer, taken in random
// order, goes immediately behind its nearest route customer, or to the front
// of the list when the depot is strictly closer than every route customer.
Ordering build_ordering_from_route(const Instance& instance, const Route& route, Rng& rng);

// True iff every consecutive customer pair of the route respects the order.
bool contains_column(const Ordering& ordering, const Route& route);

// Route of a source-to-sink edge path; throws std::invalid_argument when the
// edges do not chain from source to sink.
Route column_of_path(const FamilyGraph& graph, std::span<const int> path);

struct GraphPath {
  double weight = 0.0;
  std::vector<int> edges;
};

// Minimum dual-adjusted weight source-to-sink path (one topological sweep).
GraphPath shortest_path(const FamilyGraph& graph, const Duals& duals);

// Vertex and edge list, for --dump-graphs.
void write_graph_text(const FamilyGraph& graph, std::ostream& out);

}  // namespace ggpgm

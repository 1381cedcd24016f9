#include "ggpgm/family.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ggpgm {

Ordering::Ordering(std::vector<int> sequence) : sequence_(std::move(sequence)) {
  const int n = size();
  position_.assign(n + 1, -1);
  for (int k = 0; k < n; ++k) {
    const int u = sequence_[k];
    if (u < 1 || u > n || position_[u] >= 0) {
      throw std::invalid_argument("ordering is not a permutation of 1.." +
                                  std::to_string(n));
    }
    position_[u] = k;
  }
}

std::uint64_t Ordering::hash() const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (int u : sequence_) {
    for (int byte = 0; byte < 4; ++byte) {
      h ^= static_cast<std::uint64_t>((static_cast<std::uint32_t>(u) >> (8 * byte)) & 0xffu);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

FamilyGraph::FamilyGraph(const Instance& instance, Ordering ordering)
    : ordering_(std::move(ordering)), capacity_(instance.capacity()) {
  const int n = instance.n_customers();
  if (ordering_.size() != n) {
    throw std::invalid_argument("ordering size does not match the instance");
  }
  customer_demand_.resize(n + 1, 0);
  for (int u = 1; u <= n; ++u) customer_demand_[u] = instance.demand(u);

  first_vertex_.assign(n + 1, -1);
  vertex_customer_.push_back(0);
  vertex_capacity_.push_back(capacity_);
  for (int u : ordering_.sequence()) {
    first_vertex_[u] = static_cast<int>(vertex_customer_.size());
    for (int d = capacity_ - customer_demand_[u]; d >= 0; --d) {
      vertex_customer_.push_back(u);
      vertex_capacity_.push_back(d);
    }
  }
  vertex_customer_.push_back(0);
  vertex_capacity_.push_back(0);

  const auto& seq = ordering_.sequence();
  const int sink_id = sink();
  out_start_.assign(n_vertices() + 1, 0);
  for (int u : seq) {
    edges_.push_back({source(), vertex_of(u, capacity_ - customer_demand_[u]),
                      instance.dist(0, u), u});
  }
  out_start_[1] = static_cast<int>(edges_.size());
  for (int k = 0; k < n; ++k) {
    const int u = seq[k];
    for (int d = capacity_ - customer_demand_[u]; d >= 0; --d) {
      const int from = vertex_of(u, d);
      for (int k2 = k + 1; k2 < n; ++k2) {
        const int v = seq[k2];
        const int rest = d - customer_demand_[v];
        if (rest < 0) continue;
        edges_.push_back({from, vertex_of(v, rest), instance.dist(u, v), v});
      }
      edges_.push_back({from, sink_id, instance.dist(u, 0), kVehicleRow});
      out_start_[from + 1] = static_cast<int>(edges_.size());
    }
  }
  out_start_[sink_id + 1] = static_cast<int>(edges_.size());

  reachable_.assign(n_vertices(), 0);
  reachable_[source()] = 1;
  for (int v = 0; v < n_vertices(); ++v) {
    if (!reachable_[v]) continue;
    for (int e = out_begin(v); e < out_end(v); ++e) reachable_[edges_[e].head] = 1;
  }
  for (int e = 0; e < n_edges(); ++e) n_usable_edges_ += edge_usable(e) ? 1 : 0;
}

int FamilyGraph::vertex_of(int customer, int remaining) const {
  const int top = capacity_ - customer_demand_[customer];
  if (remaining < 0 || remaining > top) return -1;
  return first_vertex_[customer] + (top - remaining);
}

FamilyGraph build_family_graph(const Instance& instance, const Ordering& ordering) {
  return FamilyGraph(instance, ordering);
}

Ordering build_ordering_from_route(const Instance& instance, const Route& route, Rng& rng) {
  if (route.visits.empty()) {
    throw std::invalid_argument("cannot build an ordering from an empty route");
  }
  const int n = instance.n_customers();
  std::vector<char> in_route(n + 1, 0);
  for (int u : route.visits) in_route[u] = 1;
  std::vector<int> rest;
  for (int u = 1; u <= n; ++u) {
    if (!in_route[u]) rest.push_back(u);
  }
  shuffle(rest, rng);

  const auto& anchors = route.visits;
  std::vector<int> front;
  std::vector<std::vector<int>> behind(anchors.size());
  for (int u : rest) {
    std::size_t nearest = 0;
    for (std::size_t k = 1; k < anchors.size(); ++k) {
      if (instance.dist(u, anchors[k]) < instance.dist(u, anchors[nearest])) nearest = k;
    }
    if (instance.dist(u, 0) < instance.dist(u, anchors[nearest])) {
      front.push_back(u);
    } else {
      behind[nearest].push_back(u);
    }
  }
  // Each insertion lands at the front / right behind its anchor, so the most
  // recent insertion ends up closest.
  std::vector<int> sequence(front.rbegin(), front.rend());
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    sequence.push_back(anchors[k]);
    sequence.insert(sequence.end(), behind[k].rbegin(), behind[k].rend());
  }
  return Ordering(std::move(sequence));
}

bool contains_column(const Ordering& ordering, const Route& route) {
  for (std::size_t k = 1; k < route.visits.size(); ++k) {
    if (!ordering.precedes(route.visits[k - 1], route.visits[k])) return false;
  }
  return true;
}

Route column_of_path(const FamilyGraph& graph, std::span<const int> path) {
  if (path.empty()) throw std::invalid_argument("empty path");
  Route route;
  int at = graph.source();
  for (int e : path) {
    if (e < 0 || e >= graph.n_edges()) throw std::invalid_argument("edge id out of range");
    const FamilyEdge& edge = graph.edge(e);
    if (edge.tail != at) throw std::invalid_argument("path edges do not chain");
    route.cost += edge.cost;
    at = edge.head;
    if (at != graph.sink()) route.visits.push_back(graph.vertex_customer(at));
  }
  if (at != graph.sink()) throw std::invalid_argument("path does not end at the sink");
  return route;
}

GraphPath shortest_path(const FamilyGraph& graph, const Duals& duals) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int nv = graph.n_vertices();
  std::vector<double> label(nv, kInf);
  std::vector<int> pred(nv, -1);
  label[graph.source()] = 0.0;
  for (int v = 0; v < nv; ++v) {
    if (label[v] == kInf) continue;
    for (int e = graph.out_begin(v); e < graph.out_end(v); ++e) {
      const FamilyEdge& edge = graph.edge(e);
      const double w = label[v] + edge_weight(edge, duals);
      if (w < label[edge.head]) {
        label[edge.head] = w;
        pred[edge.head] = e;
      }
    }
  }
  GraphPath best;
  best.weight = label[graph.sink()];
  for (int v = graph.sink(); v != graph.source();) {
    const int e = pred[v];
    best.edges.push_back(e);
    v = graph.edge(e).tail;
  }
  std::reverse(best.edges.begin(), best.edges.end());
  return best;
}

void write_graph_text(const FamilyGraph& graph, std::ostream& out) {
  out << "# ordering:";
  for (int u : graph.ordering().sequence()) out << ' ' << u;
  out << "\n# vertices " << graph.n_vertices() << " (id customer capacity)\n";
  for (int v = 0; v < graph.n_vertices(); ++v) {
    out << "v " << v << ' ';
    if (v == graph.source()) {
      out << "source\n";
    } else if (v == graph.sink()) {
      out << "sink\n";
    } else {
      out << graph.vertex_customer(v) << ' ' << graph.vertex_capacity(v) << '\n';
    }
  }
  out << "# edges " << graph.n_edges() << " (tail head cost row h)\n";
  for (const FamilyEdge& e : graph.edges()) {
    out << "e " << e.tail << ' ' << e.head << ' ' << e.cost << ' ' << e.row << ' '
        << (e.row < 0 ? 0.0 : e.h_value()) << '\n';
  }
}

}  // namespace ggpgm

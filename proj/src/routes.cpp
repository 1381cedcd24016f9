#include "ggpgm/routes.hpp"

#include <algorithm>
#include <stdexcept>

namespace ggpgm {

bool Route::covers(int customer) const {
  return std::find(visits.begin(), visits.end(), customer) != visits.end();
}

Duals Duals::uniform(const Instance& instance, double customer_value,
                     double vehicle_value) {
  Duals d{std::vector<double>(instance.n_customers() + 1, customer_value)};
  d.pi[kVehicleRow] = vehicle_value;
  return d;
}

std::int64_t route_cost(const Instance& instance, const std::vector<int>& visits) {
  if (visits.empty()) return 0;
  for (int u : visits) {
    if (u < 1 || u > instance.n_customers()) {
      throw std::out_of_range("unknown customer id " + std::to_string(u));
    }
  }
  std::int64_t cost = instance.dist(0, visits.front());
  for (std::size_t k = 1; k < visits.size(); ++k) {
    cost += instance.dist(visits[k - 1], visits[k]);
  }
  return cost + instance.dist(visits.back(), 0);
}

Route make_route(const Instance& instance, std::vector<int> visits) {
  Route r;
  r.cost = route_cost(instance, visits);
  r.visits = std::move(visits);
  return r;
}

double reduced_cost(const Route& route, const Duals& duals) {
  double rc = static_cast<double>(route.cost) + duals.vehicle();
  for (int u : route.visits) rc -= duals.customer(u);
  return rc;
}

std::string RouteCheck::describe() const {
  switch (violation) {
    case RouteViolation::kNone: return "ok";
    case RouteViolation::kUnknownCustomer:
      return "unknown customer " + std::to_string(customer);
    case RouteViolation::kDuplicateCustomer:
      return "customer " + std::to_string(customer) + " visited twice";
    case RouteViolation::kCapacityExceeded:
      return "capacity exceeded at customer " + std::to_string(customer);
  }
  return "unknown";
}

RouteCheck check_route_feasible(const Instance& instance, const std::vector<int>& visits) {
  std::vector<char> seen(instance.n_customers() + 1, 0);
  int load = 0;
  for (int u : visits) {
    if (u < 1 || u > instance.n_customers()) {
      return {RouteViolation::kUnknownCustomer, u};
    }
    if (seen[u]) return {RouteViolation::kDuplicateCustomer, u};
    seen[u] = 1;
    load += instance.demand(u);
    if (load > instance.capacity()) return {RouteViolation::kCapacityExceeded, u};
  }
  return {};
}

namespace {

void extend_routes(const Instance& instance, std::vector<int>& prefix,
                   std::vector<char>& used, int load, std::vector<Route>& out) {
  for (int u = 1; u <= instance.n_customers(); ++u) {
    if (used[u] || load + instance.demand(u) > instance.capacity()) continue;
    prefix.push_back(u);
    used[u] = 1;
    if (out.size() >= kMaxEnumeratedRoutes) {
      throw std::length_error("route enumeration exceeds " +
                              std::to_string(kMaxEnumeratedRoutes) + " routes");
    }
    out.push_back(make_route(instance, prefix));
    extend_routes(instance, prefix, used, load + instance.demand(u), out);
    used[u] = 0;
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Route> enumerate_all_routes(const Instance& instance) {
  if (instance.n_customers() > kMaxEnumerationCustomers) {
    throw std::length_error("route enumeration is limited to " +
                            std::to_string(kMaxEnumerationCustomers) + " customers");
  }
  std::vector<Route> routes;
  std::vector<int> prefix;
  std::vector<char> used(instance.n_customers() + 1, 0);
  extend_routes(instance, prefix, used, 0, routes);
  return routes;
}

LpProblem build_route_master(const Instance& instance, const std::vector<Route>& routes) {
  LpProblem lp;
  lp.add_row(RowSense::kGreaterEqual, -instance.n_vehicles());
  for (int u = 1; u <= instance.n_customers(); ++u) lp.add_row(RowSense::kGreaterEqual, 1.0);
  for (const Route& r : routes) {
    const int var = lp.add_variable(static_cast<double>(r.cost));
    lp.add_term(kVehicleRow, var, -1.0);
    for (int u : r.visits) lp.add_term(u, var, 1.0);
  }
  return lp;
}

LpSolution solve_full_mp(const Instance& instance) {
  return solve_lp(build_route_master(instance, enumerate_all_routes(instance)));
}

}  // namespace ggpgm

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ggpgm/instance.hpp"
#include "ggpgm/lp.hpp"

namespace ggpgm {

// Master-problem row layout shared by every RMP: row 0 is the fleet-size
// row (-sum theta >= -K), row u covers customer u (sum a_ul theta >= 1).
inline constexpr int kVehicleRow = 0;

// A vehicle route (column): customers in visit order, depot at both ends.
struct Route {
  std::vector<int> visits;
  std::int64_t cost = 0;

  bool covers(int customer) const;
  bool operator==(const Route&) const = default;
};

// Row duals of the master problem, indexed like the rows: pi[0] is the fleet
// row, pi[u] the cover row of customer u.
struct Duals {
  std::vector<double> pi;

  static Duals zero(const Instance& instance) {
    return {std::vector<double>(instance.n_customers() + 1, 0.0)};
  }
  static Duals uniform(const Instance& instance, double customer_value,
                       double vehicle_value = 0.0);

  double vehicle() const { return pi[kVehicleRow]; }
  double customer(int u) const { return pi[u]; }
};

// Depot-to-depot tour length; 0 for an empty visit list.
std::int64_t route_cost(const Instance& instance, const std::vector<int>& visits);

Route make_route(const Instance& instance, std::vector<int> visits);

// c_l - sum_{u covered} pi_u + pi_0.
double reduced_cost(const Route& route, const Duals& duals);

enum class RouteViolation { kNone, kUnknownCustomer, kDuplicateCustomer, kCapacityExceeded };

struct RouteCheck {
  RouteViolation violation = RouteViolation::kNone;
  int customer = 0;  // offending customer, when applicable
  bool ok() const { return violation == RouteViolation::kNone; }
  std::string describe() const;
};

RouteCheck check_route_feasible(const Instance& instance, const std::vector<int>& visits);

inline constexpr int kMaxEnumerationCustomers = 12;
inline constexpr std::size_t kMaxEnumeratedRoutes = 1'000'000;

// Every nonempty feasible route (as a sequence, so [a,b] and [b,a] are both
// present). Throws std::length_error past the size guard.
std::vector<Route> enumerate_all_routes(const Instance& instance);

// Master problem over an explicit route set: cover rows >= 1, fleet row
// >= -K. No artificial columns, so an undersized fleet comes back infeasible.
LpProblem build_route_master(const Instance& instance, const std::vector<Route>& routes);

// Exact master LP over the enumerated route set; a small-instance oracle.
LpSolution solve_full_mp(const Instance& instance);

}  // namespace ggpgm

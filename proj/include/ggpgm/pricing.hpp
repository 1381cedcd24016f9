#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ggpgm/family.hpp"
#include "ggpgm/instance.hpp"
#include "ggpgm/rng.hpp"
#include "ggpgm/routes.hpp"

namespace ggpgm {

// A priced route counts as improving only below this reduced cost.
inline constexpr double kNegativeReducedCost = -1e-6;

struct PricingResult {
  bool found = false;       // reduced_cost < kNegativeReducedCost
  Route route;              // best route seen, even when nothing was found
  double reduced_cost = 0.0;
  int orderings_tried = 0;
};

enum class PricingMode { kFirst, kBest };

std::string_view to_string(PricingMode mode);
PricingMode parse_pricing_mode(std::string_view text);

// Uniform random permutation of the customers 1..n_customers.
Ordering random_topological_order(int n_customers, Rng& rng);

// Lowest reduced cost route among those consistent with the ordering: a
// shortest path in the family graph of that ordering.
PricingResult price_over_ordering(const Instance& instance, const Duals& duals,
                                  const Ordering& ordering);

// Prices over successive random orderings. kFirst stops at the first
// improving route; kBest spends all tries and keeps the cheapest.
PricingResult heuristic_pricing(const Instance& instance, const Duals& duals, int max_tries,
                                Rng& rng, PricingMode mode = PricingMode::kFirst);

class Pricer {
 public:
  virtual ~Pricer() = default;
  virtual PricingResult price(const Instance& instance, const Duals& duals, Rng& rng) = 0;
};

class HeuristicPricer final : public Pricer {
 public:
  HeuristicPricer(int max_tries, PricingMode mode) : max_tries_(max_tries), mode_(mode) {}
  PricingResult price(const Instance& instance, const Duals& duals, Rng& rng) override;

 private:
  int max_tries_;
  PricingMode mode_;
};

// Minimum over every feasible route; small instances only.
class ExactPricer final : public Pricer {
 public:
  explicit ExactPricer(const Instance& instance) : routes_(enumerate_all_routes(instance)) {}
  PricingResult price(const Instance& instance, const Duals& duals, Rng& rng) override;

 private:
  std::vector<Route> routes_;
};

}  // namespace ggpgm

#include "ggpgm/pricing.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace ggpgm {

std::string_view to_string(PricingMode mode) {
  return mode == PricingMode::kFirst ? "first" : "best";
}

PricingMode parse_pricing_mode(std::string_view text) {
  if (text == "first") return PricingMode::kFirst;
  if (text == "best") return PricingMode::kBest;
  throw std::invalid_argument("unknown pricing mode '" + std::string(text) + "'");
}

Ordering random_topological_order(int n_customers, Rng& rng) {
  std::vector<int> sequence(n_customers);
  std::iota(sequence.begin(), sequence.end(), 1);
  shuffle(sequence, rng);
  return Ordering(std::move(sequence));
}

PricingResult price_over_ordering(const Instance& instance, const Duals& duals,
                                  const Ordering& ordering) {
  const FamilyGraph graph(instance, ordering);
  const GraphPath path = shortest_path(graph, duals);
  PricingResult result;
  result.route = column_of_path(graph, path.edges);
  result.reduced_cost = reduced_cost(result.route, duals);
  result.found = result.reduced_cost < kNegativeReducedCost;
  result.orderings_tried = 1;
  return result;
}

PricingResult heuristic_pricing(const Instance& instance, const Duals& duals, int max_tries,
                                Rng& rng, PricingMode mode) {
  if (max_tries < 1) throw std::invalid_argument("max_tries must be at least 1");
  PricingResult best;
  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    PricingResult r =
        price_over_ordering(instance, duals, random_topological_order(instance.n_customers(), rng));
    if (attempt == 1 || r.reduced_cost < best.reduced_cost) best = std::move(r);
    best.orderings_tried = attempt;
    if (best.found && mode == PricingMode::kFirst) break;
  }
  return best;
}

PricingResult HeuristicPricer::price(const Instance& instance, const Duals& duals, Rng& rng) {
  return heuristic_pricing(instance, duals, max_tries_, rng, mode_);
}

PricingResult ExactPricer::price(const Instance&, const Duals& duals, Rng&) {
  PricingResult best;
  best.orderings_tried = 1;
  for (const Route& r : routes_) {
    const double rc = reduced_cost(r, duals);
    if (best.route.visits.empty() || rc < best.reduced_cost) {
      best.route = r;
      best.reduced_cost = rc;
    }
  }
  best.found = best.reduced_cost < kNegativeReducedCost;
  return best;
}

}  // namespace ggpgm

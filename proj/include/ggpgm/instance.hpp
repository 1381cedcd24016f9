#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

namespace ggpgm {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// Travel distance between two locations: the Euclidean distance rounded up.
int distance(const Point& p, const Point& q);

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A CVRP instance. Location 0 is the depot, customers are 1..n_customers().
// Immutable once constructed.
class Instance {
 public:
  // `coords[0]` is the depot; `demand` holds one entry per customer.
  Instance(std::vector<Point> coords, std::vector<int> demand, int capacity,
           int n_vehicles);

  int n_customers() const { return static_cast<int>(coords_.size()) - 1; }
  int n_locations() const { return static_cast<int>(coords_.size()); }
  int capacity() const { return capacity_; }
  int n_vehicles() const { return n_vehicles_; }

  const Point& coord(int location) const { return coords_[location]; }
  const std::vector<Point>& coords() const { return coords_; }

  // Demand of customer u (1-based); demand(0) is 0.
  int demand(int u) const { return demand_[u]; }
  int total_demand() const;

  int dist(int u, int v) const { return dist_[static_cast<std::size_t>(u) * coords_.size() + v]; }
  int max_dist() const { return max_dist_; }

  bool operator==(const Instance& other) const;

 private:
  std::vector<Point> coords_;
  std::vector<int> demand_;  // index 0 is the depot
  int capacity_;
  int n_vehicles_;
  std::vector<int> dist_;
  int max_dist_ = 0;
};

struct GeneratorParams {
  int n_customers = 150;
  double grid_size = 50.0;
  int capacity = 6;
  int n_vehicles = 40;
  int demand = 1;
};

// Depot then customers, each uniform on [0, grid_size]^2, uniform demand.
Instance generate_instance(std::uint64_t seed, const GeneratorParams& params);

void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

}  // namespace ggpgm

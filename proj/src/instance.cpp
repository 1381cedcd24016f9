#include "ggpgm/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "ggpgm/rng.hpp"
#include "json.hpp"

namespace ggpgm {

int distance(const Point& p, const Point& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return static_cast<int>(std::ceil(std::sqrt(dx * dx + dy * dy)));
}

Instance::Instance(std::vector<Point> coords, std::vector<int> demand,
                   int capacity, int n_vehicles)
    : coords_(std::move(coords)), capacity_(capacity), n_vehicles_(n_vehicles) {
  if (coords_.size() < 2) {
    throw InstanceError("instance needs a depot and at least one customer");
  }
  if (demand.size() + 1 != coords_.size()) {
    throw InstanceError("demand list has " + std::to_string(demand.size()) +
                        " entries for " + std::to_string(coords_.size() - 1) +
                        " customers");
  }
  if (capacity_ < 1) throw InstanceError("capacity must be positive");
  if (n_vehicles_ < 1) throw InstanceError("fleet size must be positive");
  for (std::size_t u = 0; u < demand.size(); ++u) {
    if (demand[u] < 1) {
      throw InstanceError("customer " + std::to_string(u + 1) +
                          " has nonpositive demand");
    }
    if (demand[u] > capacity_) {
      throw InstanceError("customer " + std::to_string(u + 1) +
                          " demand exceeds vehicle capacity");
    }
  }
  for (const Point& p : coords_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InstanceError("non-finite coordinate");
    }
  }
  demand_.reserve(demand.size() + 1);
  demand_.push_back(0);
  demand_.insert(demand_.end(), demand.begin(), demand.end());

  const std::size_t n = coords_.size();
  dist_.assign(n * n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const int d = distance(coords_[u], coords_[v]);
      dist_[u * n + v] = d;
      dist_[v * n + u] = d;
      max_dist_ = std::max(max_dist_, d);
    }
  }
}

int Instance::total_demand() const {
  return std::accumulate(demand_.begin(), demand_.end(), 0);
}

bool Instance::operator==(const Instance& other) const {
  return coords_ == other.coords_ && demand_ == other.demand_ &&
         capacity_ == other.capacity_ && n_vehicles_ == other.n_vehicles_;
}

Instance generate_instance(std::uint64_t seed, const GeneratorParams& params) {
  if (params.n_customers < 1) throw InstanceError("n_customers must be >= 1");
  if (!(params.grid_size > 0.0)) throw InstanceError("grid_size must be > 0");
  if (params.demand < 1) throw InstanceError("demand must be >= 1");
  if (params.capacity < params.demand) {
    throw InstanceError("capacity must be >= demand");
  }
  if (params.n_vehicles < 1) throw InstanceError("n_vehicles must be >= 1");

  Rng rng(seed);
  std::vector<Point> coords(params.n_customers + 1);
  for (Point& p : coords) {
    p.x = uniform01(rng) * params.grid_size;
    p.y = uniform01(rng) * params.grid_size;
  }
  return Instance(std::move(coords),
                  std::vector<int>(params.n_customers, params.demand),
                  params.capacity, params.n_vehicles);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  const int demand = instance.demand(1);
  for (int u = 2; u <= instance.n_customers(); ++u) {
    if (instance.demand(u) != demand) {
      throw InstanceError("instance files store a single uniform demand");
    }
  }
  nlohmann::json doc;
  doc["capacity"] = instance.capacity();
  doc["n_vehicles"] = instance.n_vehicles();
  doc["demand"] = demand;
  doc["depot"] = {instance.coord(0).x, instance.coord(0).y};
  auto customers = nlohmann::json::array();
  for (int u = 1; u <= instance.n_customers(); ++u) {
    customers.push_back({instance.coord(u).x, instance.coord(u).y});
  }
  doc["customers"] = std::move(customers);

  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw InstanceError("failed writing " + path.string());
}

namespace {

Point parse_point(const nlohmann::json& value, const std::string& what) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
      !value[1].is_number()) {
    throw InstanceError(what + " must be an [x, y] pair");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

int parse_positive_int(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw InstanceError(std::string("missing field '") + key + "'");
  }
  const auto& value = doc[key];
  if (!value.is_number_integer()) {
    throw InstanceError(std::string("field '") + key + "' must be an integer");
  }
  return value.get<int>();
}

}  // namespace

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError("malformed instance file " + path.string() + ": " +
                        e.what());
  }
  if (!doc.is_object()) throw InstanceError("instance file must hold an object");

  const int capacity = parse_positive_int(doc, "capacity");
  const int n_vehicles = parse_positive_int(doc, "n_vehicles");
  const int demand = parse_positive_int(doc, "demand");
  if (!doc.contains("depot")) throw InstanceError("missing field 'depot'");
  if (!doc.contains("customers") || !doc["customers"].is_array()) {
    throw InstanceError("missing customer list");
  }

  std::vector<Point> coords;
  coords.push_back(parse_point(doc["depot"], "depot"));
  for (const auto& c : doc["customers"]) {
    coords.push_back(parse_point(c, "customer"));
  }
  const std::size_t n = coords.size() - 1;
  return Instance(std::move(coords), std::vector<int>(n, demand), capacity,
                  n_vehicles);
}

}  // namespace ggpgm

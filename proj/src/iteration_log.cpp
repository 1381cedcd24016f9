#include "ggpgm/iteration_log.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ggpgm {
namespace {

constexpr const char* kHeader =
    "iteration,wall_time_s,rmp_objective,pricing_reduced_cost,n_families,n_active_edges,"
    "rmp_time_s,mu_time_s,lp_time_s,pricing_time_s,orderings_tried";
constexpr int kColumns = 11;

std::string real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

}  // namespace

void write_iteration_log(const IterationLog& log, std::ostream& out) {
  out << kHeader << '\n';
  for (const IterationRecord& r : log) {
    out << r.iteration << ',' << real(r.wall_time_s) << ',' << real(r.rmp_objective) << ','
        << real(r.pricing_reduced_cost) << ',' << r.n_families << ',' << r.n_active_edges << ','
        << real(r.rmp_time_s) << ',' << real(r.mu_time_s) << ',' << real(r.lp_time_s) << ','
        << real(r.pricing_time_s) << ',' << r.orderings_tried << '\n';
  }
}

void write_iteration_log(const IterationLog& log, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_iteration_log(log, out);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

IterationLog read_iteration_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::runtime_error("iteration log: missing or unexpected header");
  }
  IterationLog log;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != kColumns) {
      throw std::runtime_error("iteration log line " + std::to_string(line_no) + ": expected " +
                               std::to_string(kColumns) + " fields");
    }
    try {
      IterationRecord r;
      r.iteration = std::stoi(cells[0]);
      r.wall_time_s = std::stod(cells[1]);
      r.rmp_objective = std::stod(cells[2]);
      r.pricing_reduced_cost = std::stod(cells[3]);
      r.n_families = std::stoi(cells[4]);
      r.n_active_edges = std::stol(cells[5]);
      r.rmp_time_s = std::stod(cells[6]);
      r.mu_time_s = std::stod(cells[7]);
      r.lp_time_s = std::stod(cells[8]);
      r.pricing_time_s = std::stod(cells[9]);
      r.orderings_tried = std::stoi(cells[10]);
      log.push_back(r);
    } catch (const std::logic_error&) {
      throw std::runtime_error("iteration log line " + std::to_string(line_no) +
                               ": bad number");
    }
  }
  return log;
}

IterationLog read_iteration_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_iteration_log(in);
}

}  // namespace ggpgm

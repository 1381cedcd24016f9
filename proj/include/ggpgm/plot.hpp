#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "ggpgm/iteration_log.hpp"

namespace ggpgm {

struct PlotSeries {
  std::string label;
  IterationLog log;
};

// Two panels against wall time, one dot per completed iteration: master
// objective + 1 and (-pricing reduced cost) + 1, both on a log y axis.
// Throws std::invalid_argument when there is no series or a log is empty.
void write_convergence_svg(std::span<const PlotSeries> series, std::ostream& out);

struct RmpTimeSample {
  int iteration = 0;
  double baseline_s = 0.0;
  double pgm_lp_s = 0.0;
  double pgm_mu_s = 0.0;
  double pgm_total_s() const { return pgm_lp_s + pgm_mu_s; }
};

// Per-iteration master solve time, baseline on x and PGM on y (total, LP
// part, mu part), log-log with the y = x line.
void write_rmp_time_svg(std::span<const RmpTimeSample> samples, std::ostream& out);

void write_svg_file(const std::filesystem::path& path, const std::string& svg);

}  // namespace ggpgm

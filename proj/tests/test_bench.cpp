#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "ggpgm/experiment.hpp"
#include "ggpgm/iteration_log.hpp"
#include "ggpgm/plot.hpp"
#include "test_support.hpp"

namespace ggpgm {
namespace {

IterationLog sample_log() {
  IterationLog log;
  for (int k = 1; k <= 5; ++k) {
    IterationRecord r;
    r.iteration = k;
    r.wall_time_s = 0.1 * k + 1.0 / 3.0;
    r.rmp_objective = 1000.0 / k + 0.123456789123;
    r.pricing_reduced_cost = -10.0 / (k * k);
    r.n_families = k;
    r.n_active_edges = 1000L * k;
    r.rmp_time_s = 0.01 * k;
    r.mu_time_s = 0.002 * k;
    r.lp_time_s = 0.008 * k;
    r.pricing_time_s = 1e-4;
    r.orderings_tried = k;
    log.push_back(r);
  }
  log.back().pricing_reduced_cost = 0.0;
  return log;
}

std::string to_csv(const IterationLog& log) {
  std::ostringstream out;
  write_iteration_log(log, out);
  return out.str();
}

TEST(IterationLogCsv, HeaderAndRowCount) {
  const std::string text = to_csv(sample_log());
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header,
            "iteration,wall_time_s,rmp_objective,pricing_reduced_cost,n_families,"
            "n_active_edges,rmp_time_s,mu_time_s,lp_time_s,pricing_time_s,orderings_tried");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(IterationLogCsv, RoundTripIsByteIdentical) {
  const std::string first = to_csv(sample_log());
  std::istringstream in(first);
  const IterationLog back = read_iteration_log(in);
  ASSERT_EQ(back.size(), 5u);
  EXPECT_EQ(to_csv(back), first);
  const IterationLog original = sample_log();
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].iteration, original[k].iteration);
    EXPECT_EQ(back[k].n_active_edges, original[k].n_active_edges);
    EXPECT_NEAR(back[k].rmp_objective, original[k].rmp_objective,
                1e-8 * std::abs(original[k].rmp_objective));
  }
}

TEST(IterationLogCsv, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "ggpgm_log_test.csv";
  write_iteration_log(sample_log(), path);
  EXPECT_EQ(to_csv(read_iteration_log(path)), to_csv(sample_log()));
  std::filesystem::remove(path);
  EXPECT_THROW(read_iteration_log(path), std::runtime_error);
}

TEST(IterationLogCsv, RejectsMalformedInput) {
  for (const char* bad : {"", "wrong,header\n1,2\n",
                          "iteration,wall_time_s,rmp_objective,pricing_reduced_cost,n_families,"
                          "n_active_edges,rmp_time_s,mu_time_s,lp_time_s,pricing_time_s,"
                          "orderings_tried\n1,2,3\n",
                          "iteration,wall_time_s,rmp_objective,pricing_reduced_cost,n_families,"
                          "n_active_edges,rmp_time_s,mu_time_s,lp_time_s,pricing_time_s,"
                          "orderings_tried\n1,x,3,4,5,6,7,8,9,10,11\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_iteration_log(in), std::runtime_error) << bad;
  }
}

// Start and end tags of every non-self-closing element must nest.
bool tags_balanced(const std::string& svg) {
  static const std::regex tag(R"(<(/?)([a-zA-Z]+)[^>]*?(/?)>)");
  std::vector<std::string> stack;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator();
       ++it) {
    const auto& m = *it;
    if (m[3].length() > 0) continue;
    if (m[1].length() == 0) {
      stack.push_back(m[2]);
    } else {
      if (stack.empty() || stack.back() != m[2]) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

TEST(ConvergenceSvg, IsWellFormedWithOneDotPerIteration) {
  std::vector<PlotSeries> series{{"gg-pgm", sample_log()}, {"cg", sample_log()}};
  series[1].log.pop_back();
  std::ostringstream out;
  write_convergence_svg(series, out);
  const std::string svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_TRUE(tags_balanced(svg));
  EXPECT_EQ(count(svg, "r=\"2.5\""), 2u * (5 + 4));
  EXPECT_NE(svg.find("gg-pgm"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg.find("inf"), std::string::npos);
}

TEST(ConvergenceSvg, RejectsEmptyInput) {
  std::ostringstream out;
  EXPECT_THROW(write_convergence_svg({}, out), std::invalid_argument);
  std::vector<PlotSeries> empty{{"x", {}}};
  EXPECT_THROW(write_convergence_svg(empty, out), std::invalid_argument);
}

TEST(RmpTimeSvg, IsWellFormed) {
  const std::vector<RmpTimeSample> samples{{1, 0.5, 0.05, 0.01}, {2, 2.0, 0.2, 0.05},
                                           {3, 10.0, 0.5, 0.1}};
  std::ostringstream out;
  write_rmp_time_svg(samples, out);
  const std::string svg = out.str();
  EXPECT_TRUE(tags_balanced(svg));
  EXPECT_EQ(count(svg, "r=\"2.5\""), 9u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
}

TEST(RunExperiment, WritesEveryArtifact) {
  const auto dir = std::filesystem::temp_directory_path() / "ggpgm_experiment_test";
  std::filesystem::remove_all(dir);
  ExperimentConfig config;
  config.instance_seeds = {1, 2};
  config.generator.n_customers = 10;
  config.generator.capacity = 3;
  config.generator.n_vehicles = 10;
  config.algorithms = {Algorithm::kCg, Algorithm::kGgPgm};
  config.solver.time_limit_s = 30.0;
  config.out_dir = dir;
  const auto rows = run_experiment(config);
  ASSERT_EQ(rows.size(), 4u);
  for (std::uint64_t seed : {1, 2}) {
    EXPECT_TRUE(std::filesystem::exists(dir / ("inst_" + std::to_string(seed) + ".json")));
  }
  for (const SummaryRow& row : rows) {
    EXPECT_TRUE(std::filesystem::exists(row.log_path));
    EXPECT_EQ(read_iteration_log(row.log_path).size(), static_cast<std::size_t>(row.iterations));
    EXPECT_EQ(row.status, SolveStatus::kConvergedApprox);
  }
  std::ifstream summary(dir / "summary.csv");
  int lines = 0;
  for (std::string line; std::getline(summary, line);) ++lines;
  EXPECT_EQ(lines, 5);
  // The saved instance reloads to the generated one.
  EXPECT_EQ(load_instance(dir / "inst_1.json").n_customers(), 10);
  std::filesystem::remove_all(dir);
}

TEST(CompareRmp, BaselineMatchesPgmAtSampledIterations) {
  const Instance inst = testing::random_instance(3, 20, 4, 20);
  GGConfig config;
  config.time_limit_s = 60.0;
  CompareOptions options;
  options.every = 2;
  options.warm_baseline = true;
  const CompareResult r = compare_rmp(inst, config, options);
  ASSERT_FALSE(r.rows.empty());
  for (const RmpComparison& row : r.rows) {
    EXPECT_EQ((row.iteration - 1) % 2, 0);
    EXPECT_FALSE(row.baseline_capped);
    EXPECT_NEAR(row.baseline_objective, row.pgm_objective, 1e-6 * (1 + row.pgm_objective));
    EXPECT_EQ(row.pgm_objective, r.run.log[row.iteration - 1].rmp_objective);
  }
  std::ostringstream csv;
  write_comparison_csv(r.rows, csv);
  EXPECT_EQ(count(csv.str(), "\n"), r.rows.size() + 1);
}

TEST(CompareRmp, TinyTimeCapMarksRowsCapped) {
  const Instance inst = testing::random_instance(4, 30, 4, 30);
  GGConfig config;
  config.time_limit_s = 60.0;
  CompareOptions options;
  options.every = 5;
  options.baseline_time_limit_s = 1e-9;
  const CompareResult r = compare_rmp(inst, config, options);
  bool any_capped = false;
  for (const RmpComparison& row : r.rows) {
    if (row.baseline_capped) {
      any_capped = true;
      EXPECT_TRUE(std::isnan(row.baseline_objective));
    }
  }
  EXPECT_TRUE(any_capped);
}

}  // namespace
}  // namespace ggpgm

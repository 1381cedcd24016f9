#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ggpgm/lp.hpp"
#include "ggpgm/rng.hpp"
#include "ggpgm/routes.hpp"
#include "test_support.hpp"

namespace ggpgm {
namespace {

TEST(SolveLp, SingleVariable) {
  LpProblem lp;
  const int x = lp.add_variable(1.0);
  lp.add_row(RowSense::kGreaterEqual, 3.0, {{x, 1.0}});
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.primal[0], 3.0, 1e-12);
  EXPECT_NEAR(s.duals[0], 1.0, 1e-12);
  EXPECT_NEAR(s.objective, 3.0, 1e-12);
}

TEST(SolveLp, DegenerateSymmetricOptimum) {
  LpProblem lp;
  lp.add_variable(1.0);
  lp.add_variable(1.0);
  lp.add_row(RowSense::kGreaterEqual, 1.0, {{0, 1.0}, {1, 1.0}});
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
  EXPECT_NEAR(s.duals[0], 1.0, 1e-12);
  EXPECT_NEAR(s.primal[0] + s.primal[1], 1.0, 1e-12);
}

TEST(SolveLp, EqualityRowsHaveFreeDuals) {
  // The equality row pins the objective x - y at -2.
  LpProblem lp;
  lp.add_variable(1.0);
  lp.add_variable(-1.0);
  lp.add_row(RowSense::kEqual, -2.0, {{0, 1.0}, {1, -1.0}});
  lp.add_row(RowSense::kGreaterEqual, 1.0, {{1, 1.0}});
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -2.0, 1e-12);
  EXPECT_NEAR(s.duals[0], 1.0, 1e-12);
  EXPECT_TRUE(check_solution(lp, s).within(s.tolerances));
}

TEST(SolveLp, DetectsInfeasibleAndUnbounded) {
  LpProblem infeasible;
  infeasible.add_variable(1.0);
  infeasible.add_row(RowSense::kEqual, -1.0, {{0, 1.0}});
  EXPECT_EQ(solve_lp(infeasible).status, LpStatus::kInfeasible);

  LpProblem unbounded;
  unbounded.add_variable(-1.0);
  unbounded.add_row(RowSense::kGreaterEqual, 1.0, {{0, 1.0}});
  EXPECT_EQ(solve_lp(unbounded).status, LpStatus::kUnbounded);
}

TEST(SolveLp, RejectsMalformedProblems) {
  LpProblem empty;
  empty.add_row(RowSense::kGreaterEqual, 0.0);
  EXPECT_THROW(solve_lp(empty), LpError);
  LpProblem bad;
  bad.add_variable(1.0);
  bad.add_row(RowSense::kGreaterEqual, 1.0, {{3, 1.0}});
  EXPECT_THROW(solve_lp(bad), LpError);
  LpProblem dup;
  dup.add_variable(1.0);
  dup.add_row(RowSense::kGreaterEqual, 1.0, {{0, 1.0}, {0, 2.0}});
  EXPECT_THROW(dup.validate(), LpError);
}

TEST(SolveLp, ThreeCustomerMasterMatchesBasicSolutionEnumeration) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = testing::random_instance(seed, 3, 2, 3);
    const LpProblem lp = build_route_master(inst, enumerate_all_routes(inst));
    const LpSolution s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_NEAR(s.objective, testing::brute_force_lp(lp), 1e-9);
    EXPECT_TRUE(check_solution(lp, s).within(s.tolerances));
  }
}

LpProblem random_covering_lp(Rng& rng, int rows, int vars) {
  LpProblem lp;
  for (int j = 0; j < vars; ++j) lp.add_variable(1.0 + 9.0 * uniform01(rng));
  for (int i = 0; i < rows; ++i) {
    std::vector<LpTerm> terms;
    for (int j = 0; j < vars; ++j) {
      if (uniform01(rng) < 0.4) terms.push_back({j, std::round(1.0 + 3.0 * uniform01(rng))});
    }
    if (terms.empty()) terms.push_back({static_cast<int>(uniform_index(rng, vars)), 1.0});
    const bool equality = uniform01(rng) < 0.2;
    lp.add_row(equality ? RowSense::kEqual : RowSense::kGreaterEqual,
               std::round(1.0 + 4.0 * uniform01(rng)), std::move(terms));
  }
  return lp;
}

TEST(SolveLp, RandomSmallLpsMatchEnumerationAndCertify) {
  Rng rng(77);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const LpProblem lp = random_covering_lp(rng, 1 + trial % 4, 2 + trial % 5);
    const LpSolution s = solve_lp(lp);
    const double oracle = testing::brute_force_lp(lp);
    if (std::isnan(oracle)) {
      EXPECT_EQ(s.status, LpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(s.status, LpStatus::kOptimal) << "trial " << trial;
    ++optimal;
    EXPECT_NEAR(s.objective, oracle, 1e-8 * (1 + std::abs(oracle))) << "trial " << trial;
    const ResidualReport r = check_solution(lp, s);
    EXPECT_TRUE(r.within(s.tolerances)) << "trial " << trial;
    for (int i = 0; i < lp.n_rows(); ++i) {
      if (lp.rows[i].sense == RowSense::kGreaterEqual) {
        EXPECT_GE(s.duals[i], -1e-12);
      }
    }
  }
  EXPECT_GT(optimal, 100);
}

TEST(SolveLp, WarmHintReachesSameOptimum) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    LpProblem lp = random_covering_lp(rng, 6, 12);
    const LpSolution first = solve_lp(lp);
    if (first.status != LpStatus::kOptimal) continue;
    // Grow the problem by appending variables, then warm start.
    for (int k = 0; k < 4; ++k) {
      const int var = lp.add_variable(0.5 + uniform01(rng));
      lp.add_term(static_cast<int>(uniform_index(rng, lp.n_rows())), var, 1.0);
    }
    const LpSolution cold = solve_lp(lp);
    const LpSolution warm = solve_lp(lp, first.basis);
    ASSERT_EQ(cold.status, LpStatus::kOptimal);
    ASSERT_EQ(warm.status, LpStatus::kOptimal);
    EXPECT_NEAR(warm.objective, cold.objective, 1e-9 * (1 + std::abs(cold.objective)));
    EXPECT_LE(warm.objective, first.objective + 1e-9);
  }
}

TEST(CheckSolution, FlagsPerturbationsAndZeroDuals) {
  LpProblem lp;
  lp.add_variable(1.0);
  lp.add_row(RowSense::kGreaterEqual, 3.0, {{0, 1.0}});
  LpSolution s = solve_lp(lp);
  ASSERT_TRUE(check_solution(lp, s).within(s.tolerances));

  LpSolution bumped = s;
  bumped.primal[0] += 1.0;
  const ResidualReport r = check_solution(lp, bumped);
  EXPECT_LE(r.primal_infeasibility, 1e-12);
  EXPECT_GT(r.complementarity, 1e-3);

  LpSolution zeroed = s;
  zeroed.duals[0] = 0.0;
  const ResidualReport z = check_solution(lp, zeroed);
  EXPECT_EQ(z.dual_objective, 0.0);
  EXPECT_GT(z.duality_gap, 0.5);
}

TEST(WriteLpText, ListsRowsAndObjective) {
  LpProblem lp;
  lp.add_variable(2.0);
  lp.add_variable(1.0);
  lp.add_row(RowSense::kGreaterEqual, 1.0, {{0, 1.0}, {1, 1.0}});
  lp.add_row(RowSense::kEqual, 0.0, {{0, 1.0}, {1, -1.0}});
  std::ostringstream out;
  write_lp_text(lp, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find(">="), std::string::npos);
  EXPECT_NE(text.find(" = 0"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace ggpgm

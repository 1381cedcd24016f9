#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ggpgm {

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RowSense { kGreaterEqual, kEqual };

struct LpTerm {
  int var;
  double value;
};

struct LpRow {
  RowSense sense = RowSense::kGreaterEqual;
  double rhs = 0.0;
  std::vector<LpTerm> terms;
};

// min c'x  s.t.  each row  a'x >= rhs  or  a'x = rhs,  x >= 0.
struct LpProblem {
  std::vector<double> objective;
  std::vector<LpRow> rows;

  int n_vars() const { return static_cast<int>(objective.size()); }
  int n_rows() const { return static_cast<int>(rows.size()); }
  std::size_t n_nonzeros() const;

  int add_variable(double cost);
  int add_row(RowSense sense, double rhs, std::vector<LpTerm> terms = {});
  void add_term(int row, int var, double value) {
    rows[row].terms.push_back({var, value});
  }

  // Throws LpError on out-of-range variables or duplicate (row, var) entries.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(LpStatus status);

struct LpTolerances {
  double primal_feasibility = 1e-9;
  double dual_feasibility = 1e-7;
  double complementarity = 1e-7;
  double duality_gap = 1e-7;
};

// Basic variables, split so that indices stay meaningful when a problem grows
// by appending variables and rows.
struct Basis {
  std::vector<int> structural;
  std::vector<int> logical_rows;
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> primal;  // one per variable, >= 0
  std::vector<double> duals;   // one per row; >= 0 on >= rows, free on = rows
  double objective = 0.0;
  Basis basis;
  long iterations = 0;
  LpTolerances tolerances;
};

struct LpOptions {
  long max_iterations = 0;  // 0 picks a size-dependent default
  double time_limit_s = std::numeric_limits<double>::infinity();
  int refactor_interval = 100;
};

struct ResidualReport {
  double primal_infeasibility = 0.0;  // max over rows of violation / (1 + |rhs|)
  double dual_infeasibility = 0.0;    // negative reduced costs and row-dual signs
  double complementarity = 0.0;       // |x_j d_j| and |y_i s_i|, / (1 + |obj|)
  double duality_gap = 0.0;           // |c'x - b'y| / (1 + |c'x|)
  double primal_objective = 0.0;
  double dual_objective = 0.0;

  bool within(const LpTolerances& tol) const;
};

ResidualReport check_solution(const LpProblem& problem, const LpSolution& solution);

class LpBackend {
 public:
  virtual ~LpBackend() = default;
  virtual std::string_view name() const = 0;
  virtual LpSolution solve(const LpProblem& problem,
                           const std::optional<Basis>& warm_hint,
                           const LpOptions& options) = 0;
};

// Bounded primal revised simplex over a sparse LU factorization of the basis
// with product-form updates. Stateless; safe to use from several threads.
class SimplexBackend final : public LpBackend {
 public:
  std::string_view name() const override { return "bundled-simplex"; }
  LpSolution solve(const LpProblem& problem, const std::optional<Basis>& warm_hint,
                   const LpOptions& options) override;
};

// Solves with the bundled backend and certifies optimal answers with
// check_solution; a warm-started answer that fails is re-solved cold, and a
// cold failure throws LpError.
LpSolution solve_lp(const LpProblem& problem,
                    const std::optional<Basis>& warm_hint = std::nullopt,
                    const LpOptions& options = {});

// CPLEX-style LP text, for debugging dumps.
void write_lp_text(const LpProblem& problem, std::ostream& out);

}  // namespace ggpgm

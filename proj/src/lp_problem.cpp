#include <algorithm>
#include <cmath>
#include <ostream>

#include "ggpgm/lp.hpp"

namespace ggpgm {

std::size_t LpProblem::n_nonzeros() const {
  std::size_t nnz = 0;
  for (const LpRow& row : rows) nnz += row.terms.size();
  return nnz;
}

int LpProblem::add_variable(double cost) {
  objective.push_back(cost);
  return n_vars() - 1;
}

int LpProblem::add_row(RowSense sense, double rhs, std::vector<LpTerm> terms) {
  rows.push_back({sense, rhs, std::move(terms)});
  return n_rows() - 1;
}

void LpProblem::validate() const {
  std::vector<int> last_row(objective.size(), -1);
  for (int i = 0; i < n_rows(); ++i) {
    for (const LpTerm& t : rows[i].terms) {
      if (t.var < 0 || t.var >= n_vars()) {
        throw LpError("row " + std::to_string(i) + " references variable " +
                      std::to_string(t.var) + " of " + std::to_string(n_vars()));
      }
      if (last_row[t.var] == i) {
        throw LpError("duplicate coefficient for variable " +
                      std::to_string(t.var) + " in row " + std::to_string(i));
      }
      last_row[t.var] = i;
      if (!std::isfinite(t.value)) throw LpError("non-finite coefficient");
    }
    if (!std::isfinite(rows[i].rhs)) throw LpError("non-finite right-hand side");
  }
  for (double c : objective) {
    if (!std::isfinite(c)) throw LpError("non-finite objective coefficient");
  }
}

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

bool ResidualReport::within(const LpTolerances& tol) const {
  return primal_infeasibility <= tol.primal_feasibility &&
         dual_infeasibility <= tol.dual_feasibility &&
         complementarity <= tol.complementarity && duality_gap <= tol.duality_gap;
}

ResidualReport check_solution(const LpProblem& problem, const LpSolution& solution) {
  if (static_cast<int>(solution.primal.size()) != problem.n_vars() ||
      static_cast<int>(solution.duals.size()) != problem.n_rows()) {
    throw LpError("solution dimensions do not match the problem");
  }
  ResidualReport report;
  const auto& x = solution.primal;
  const auto& y = solution.duals;

  std::vector<double> reduced(problem.objective);
  for (int j = 0; j < problem.n_vars(); ++j) {
    report.primal_objective += problem.objective[j] * x[j];
    report.primal_infeasibility = std::max(report.primal_infeasibility, -x[j]);
  }
  std::vector<double> slack(problem.rows.size());
  for (int i = 0; i < problem.n_rows(); ++i) {
    const LpRow& row = problem.rows[i];
    double activity = 0.0;
    for (const LpTerm& t : row.terms) {
      activity += t.value * x[t.var];
      reduced[t.var] -= y[i] * t.value;
    }
    slack[i] = activity - row.rhs;
    const double violation = row.sense == RowSense::kEqual
                                 ? std::abs(slack[i])
                                 : std::max(0.0, -slack[i]);
    report.primal_infeasibility =
        std::max(report.primal_infeasibility, violation / (1.0 + std::abs(row.rhs)));
    report.dual_objective += row.rhs * y[i];
    if (row.sense == RowSense::kGreaterEqual) {
      report.dual_infeasibility = std::max(report.dual_infeasibility, -y[i]);
    }
  }

  const double scale = 1.0 + std::abs(report.primal_objective);
  for (int j = 0; j < problem.n_vars(); ++j) {
    report.dual_infeasibility = std::max(
        report.dual_infeasibility, -reduced[j] / (1.0 + std::abs(problem.objective[j])));
    report.complementarity =
        std::max(report.complementarity, std::abs(x[j] * reduced[j]) / scale);
  }
  for (int i = 0; i < problem.n_rows(); ++i) {
    if (problem.rows[i].sense == RowSense::kGreaterEqual) {
      report.complementarity =
          std::max(report.complementarity, std::abs(y[i] * slack[i]) / scale);
    }
  }
  report.duality_gap =
      std::abs(report.primal_objective - report.dual_objective) / scale;
  return report;
}

void write_lp_text(const LpProblem& problem, std::ostream& out) {
  out.precision(17);
  out << "Minimize\n obj:";
  for (int j = 0; j < problem.n_vars(); ++j) {
    const double c = problem.objective[j];
    out << (c < 0 ? " - " : " + ") << std::abs(c) << " x" << j;
    if (j % 8 == 7) out << "\n";
  }
  out << "\nSubject To\n";
  for (int i = 0; i < problem.n_rows(); ++i) {
    const LpRow& row = problem.rows[i];
    out << " r" << i << ":";
    if (row.terms.empty()) out << " 0 x0";
    for (std::size_t k = 0; k < row.terms.size(); ++k) {
      const LpTerm& t = row.terms[k];
      out << (t.value < 0 ? " - " : " + ") << std::abs(t.value) << " x" << t.var;
      if (k % 8 == 7) out << "\n  ";
    }
    out << (row.sense == RowSense::kEqual ? " = " : " >= ") << row.rhs << "\n";
  }
  out << "End\n";
}

}  // namespace ggpgm

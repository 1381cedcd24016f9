#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ggpgm/lp.hpp"
#include "lu_factor.hpp"

namespace ggpgm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kHarrisTol = 5e-10;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;

struct Eta {
  int position;
  double pivot;
  std::vector<int> index;
  std::vector<double> value;
};

// Primal simplex over variables [structurals | logicals]. Row i has the
// logical column -e_i: a surplus in [0, inf) for >= rows and a variable fixed
// at 0 for = rows. Every nonbasic variable sits at 0. Phase 1 minimizes the
// sum of bound violations of the basic variables.
class Simplex {
 public:
  Simplex(const LpProblem& problem, const LpOptions& options)
      : m_(problem.n_rows()), n_(problem.n_vars()), options_(options) {
    std::vector<int> count(n_ + 1, 0);
    for (const LpRow& row : problem.rows) {
      for (const LpTerm& t : row.terms) ++count[t.var + 1];
    }
    for (int j = 0; j < n_; ++j) count[j + 1] += count[j];
    col_start_ = count;
    col_row_.resize(col_start_[n_]);
    col_val_.resize(col_start_[n_]);
    for (int i = 0; i < m_; ++i) {
      for (const LpTerm& t : problem.rows[i].terms) {
        const int p = count[t.var]++;
        col_row_[p] = i;
        col_val_[p] = t.value;
      }
    }
    cost_.assign(n_ + m_, 0.0);
    std::copy(problem.objective.begin(), problem.objective.end(), cost_.begin());
    upper_.assign(n_ + m_, kInf);
    rhs_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      rhs_[i] = problem.rows[i].rhs;
      if (problem.rows[i].sense == RowSense::kEqual) upper_[n_ + i] = 0.0;
    }
    max_iterations_ = options.max_iterations > 0
                          ? options.max_iterations
                          : 10000 + 20L * (static_cast<long>(m_) + n_);
  }

  LpSolution run(const std::optional<Basis>& hint);

 private:
  bool is_logical(int var) const { return var >= n_; }
  double column_dot(int var, const std::vector<double>& y) const {
    if (is_logical(var)) return -y[var - n_];
    double s = 0.0;
    for (int p = col_start_[var]; p < col_start_[var + 1]; ++p) s += col_val_[p] * y[col_row_[p]];
    return s;
  }

  void set_initial_basis(const std::optional<Basis>& hint);
  void refactor();
  void compute_primal();
  void ftran(int var, std::vector<double>& alpha);
  void btran(std::vector<double>& c, std::vector<double>& y);
  int price(bool phase1, double* d_out);
  int ratio_test(bool phase1, double* theta);
  void pivot(int entering, int leave_pos, double theta);
  bool out_of_time() const;

  int m_;
  int n_;
  LpOptions options_;
  long max_iterations_;
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  std::vector<double> cost_;
  std::vector<double> upper_;
  std::vector<double> rhs_;

  std::vector<int> head_;      // position -> variable
  std::vector<int> position_;  // variable -> position, -1 when nonbasic
  std::vector<double> xb_;
  std::vector<double> y_;
  std::vector<double> alpha_;
  std::vector<double> work_;
  std::vector<double> cb_;
  detail::LuFactor lu_;
  std::vector<Eta> etas_;

  bool bland_ = false;
  long degenerate_run_ = 0;
  int price_cursor_ = 0;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void Simplex::set_initial_basis(const std::optional<Basis>& hint) {
  head_.assign(m_, -1);
  position_.assign(n_ + m_, -1);
  int filled = 0;
  if (hint) {
    auto take = [&](int var) {
      if (filled < m_ && position_[var] < 0) {
        position_[var] = filled;
        head_[filled++] = var;
      }
    };
    for (int j : hint->structural) {
      if (j >= 0 && j < n_) take(j);
    }
    for (int i : hint->logical_rows) {
      if (i >= 0 && i < m_) take(n_ + i);
    }
  } else {
    for (int i = 0; i < m_; ++i) {
      position_[n_ + i] = i;
      head_[i] = n_ + i;
    }
  }
}

void Simplex::refactor() {
  static const double kMinusOneValue[1] = {-1.0};
  std::vector<detail::ColumnView> columns(m_);
  std::vector<int> logical_row(m_);
  for (int pos = 0; pos < m_; ++pos) {
    const int var = head_[pos];
    if (var < 0) continue;
    if (is_logical(var)) {
      logical_row[pos] = var - n_;
      columns[pos] = {&logical_row[pos], kMinusOneValue, 1};
    } else {
      columns[pos] = {col_row_.data() + col_start_[var], col_val_.data() + col_start_[var],
                      col_start_[var + 1] - col_start_[var]};
    }
  }
  const auto replaced = lu_.factorize(m_, columns);
  for (const auto& [pos, row] : replaced) {
    if (head_[pos] >= 0) position_[head_[pos]] = -1;
    head_[pos] = n_ + row;
    position_[n_ + row] = pos;
  }
  etas_.clear();
  compute_primal();
}

void Simplex::compute_primal() {
  work_ = rhs_;
  lu_.solve(work_, xb_);
}

void Simplex::ftran(int var, std::vector<double>& alpha) {
  work_.assign(m_, 0.0);
  if (is_logical(var)) {
    work_[var - n_] = -1.0;
  } else {
    for (int p = col_start_[var]; p < col_start_[var + 1]; ++p) work_[col_row_[p]] = col_val_[p];
  }
  lu_.solve(work_, alpha);
  for (const Eta& eta : etas_) {
    const double xp = alpha[eta.position] / eta.pivot;
    alpha[eta.position] = xp;
    if (xp == 0.0) continue;
    for (std::size_t k = 0; k < eta.index.size(); ++k) alpha[eta.index[k]] -= eta.value[k] * xp;
  }
}

void Simplex::btran(std::vector<double>& c, std::vector<double>& y) {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = c[it->position];
    for (std::size_t k = 0; k < it->index.size(); ++k) s -= it->value[k] * c[it->index[k]];
    c[it->position] = s / it->pivot;
  }
  lu_.solve_transposed(c, y);
}

// Entering variable with negative reduced cost, or -1. Partial pricing over
// cyclic segments; Bland's smallest-index rule while cycling is suspected.
int Simplex::price(bool phase1, double* d_out) {
  const int total = n_ + m_;
  auto reduced = [&](int j) {
    const double c = phase1 ? 0.0 : cost_[j];
    return c - column_dot(j, y_);
  };
  if (bland_) {
    for (int j = 0; j < total; ++j) {
      if (position_[j] >= 0 || upper_[j] == 0.0) continue;
      const double d = reduced(j);
      if (d < -kDualTol) {
        *d_out = d;
        return j;
      }
    }
    return -1;
  }
  const int segment = std::min(total, 5000);
  int best = -1;
  double best_d = -kDualTol;
  int scanned = 0;
  int j = price_cursor_ % total;
  while (scanned < total) {
    if (position_[j] < 0 && upper_[j] != 0.0) {
      const double d = reduced(j);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    ++scanned;
    if (++j == total) j = 0;
    if (best >= 0 && scanned >= segment) break;
  }
  price_cursor_ = j;
  *d_out = best_d;
  return best;
}

// Leaving position for the current alpha_, or -1 when the step is unbounded.
int Simplex::ratio_test(bool phase1, double* theta) {
  int leave = -1;
  double best_ratio = kInf;
  double best_alpha = 0.0;
  if (phase1 || bland_) {
    for (int pos = 0; pos < m_; ++pos) {
      const double a = alpha_[pos];
      if (std::abs(a) <= kPivotTol) continue;
      const int var = head_[pos];
      const double x = xb_[pos];
      const double u = upper_[var];
      double ratio = kInf;
      if (x < -kPrimalTol) {
        if (a < 0) ratio = -x / -a;  // reaches its lower bound
      } else if (x > u + kPrimalTol) {
        if (a > 0) ratio = (x - u) / a;  // reaches its upper bound
      } else if (a > 0) {
        ratio = std::max(x, 0.0) / a;
      } else if (u < kInf) {
        ratio = std::max(u - x, 0.0) / -a;
      }
      if (ratio == kInf) continue;
      const bool better =
          ratio < best_ratio - kDegenerateStep ||
          (ratio <= best_ratio + kDegenerateStep &&
           (bland_ ? (leave < 0 || var < head_[leave]) : std::abs(a) > best_alpha));
      if (better) {
        best_ratio = std::min(ratio, best_ratio);
        best_alpha = std::abs(a);
        leave = pos;
      }
    }
    if (leave >= 0) {
      const double a = alpha_[leave];
      const double x = xb_[leave];
      const double u = upper_[head_[leave]];
      if (x < -kPrimalTol) {
        *theta = -x / -a;
      } else if (x > u + kPrimalTol) {
        *theta = (x - u) / a;
      } else {
        *theta = a > 0 ? std::max(x, 0.0) / a : std::max(u - x, 0.0) / -a;
      }
    }
    return leave;
  }

  // Harris two-pass test.
  double bound = kInf;
  for (int pos = 0; pos < m_; ++pos) {
    const double a = alpha_[pos];
    if (a > kPivotTol) {
      bound = std::min(bound, (xb_[pos] + kHarrisTol) / a);
    } else if (a < -kPivotTol) {
      const double u = upper_[head_[pos]];
      if (u < kInf) bound = std::min(bound, (u - xb_[pos] + kHarrisTol) / -a);
    }
  }
  if (bound == kInf) return -1;
  for (int pos = 0; pos < m_; ++pos) {
    const double a = alpha_[pos];
    double ratio = kInf;
    if (a > kPivotTol) {
      ratio = xb_[pos] / a;
    } else if (a < -kPivotTol) {
      const double u = upper_[head_[pos]];
      if (u < kInf) ratio = (u - xb_[pos]) / -a;
    }
    if (ratio <= bound && std::abs(a) > best_alpha) {
      best_alpha = std::abs(a);
      best_ratio = ratio;
      leave = pos;
    }
  }
  *theta = std::max(best_ratio, 0.0);
  return leave;
}

void Simplex::pivot(int entering, int leave_pos, double theta) {
  if (theta != 0.0) {
    for (int pos = 0; pos < m_; ++pos) xb_[pos] -= theta * alpha_[pos];
  }
  xb_[leave_pos] = theta;
  const int leaving = head_[leave_pos];
  position_[leaving] = -1;
  head_[leave_pos] = entering;
  position_[entering] = leave_pos;

  Eta eta;
  eta.position = leave_pos;
  eta.pivot = alpha_[leave_pos];
  for (int pos = 0; pos < m_; ++pos) {
    if (pos != leave_pos && alpha_[pos] != 0.0) {
      eta.index.push_back(pos);
      eta.value.push_back(alpha_[pos]);
    }
  }
  etas_.push_back(std::move(eta));
}

bool Simplex::out_of_time() const {
  if (options_.time_limit_s == kInf) return false;
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
  return elapsed.count() > options_.time_limit_s;
}

LpSolution Simplex::run(const std::optional<Basis>& hint) {
  LpSolution solution;
  set_initial_basis(hint);
  refactor();

  long iterations = 0;
  bool fresh = true;
  bool phase1 = false;
  cb_.resize(m_);
  while (true) {
    if (static_cast<int>(etas_.size()) >= options_.refactor_interval) {
      refactor();
      fresh = true;
    }
    phase1 = false;
    for (int pos = 0; pos < m_; ++pos) {
      const int var = head_[pos];
      const double x = xb_[pos];
      if (x < -kPrimalTol) {
        cb_[pos] = -1.0;
        phase1 = true;
      } else if (x > upper_[var] + kPrimalTol) {
        cb_[pos] = 1.0;
        phase1 = true;
      } else {
        cb_[pos] = 0.0;
      }
    }
    if (!phase1) {
      for (int pos = 0; pos < m_; ++pos) cb_[pos] = cost_[head_[pos]];
    }
    btran(cb_, y_);

    double d = 0.0;
    const int entering = price(phase1, &d);
    if (entering < 0) {
      if (!fresh) {
        refactor();
        fresh = true;
        continue;
      }
      solution.status = phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;
      break;
    }
    ftran(entering, alpha_);
    double theta = 0.0;
    const int leave = ratio_test(phase1, &theta);
    if (leave < 0) {
      if (!fresh) {
        refactor();
        fresh = true;
        continue;
      }
      solution.status = LpStatus::kUnbounded;
      break;
    }
    pivot(entering, leave, theta);
    fresh = false;
    ++iterations;

    if (theta <= kDegenerateStep) {
      if (++degenerate_run_ > 3L * m_) bland_ = true;
    } else {
      degenerate_run_ = 0;
      bland_ = false;
    }
    if (iterations >= max_iterations_ || ((iterations & 63) == 0 && out_of_time())) {
      solution.status = LpStatus::kIterationLimit;
      break;
    }
  }

  solution.iterations = iterations;
  solution.primal.assign(n_, 0.0);
  solution.duals.assign(m_, 0.0);
  for (int pos = 0; pos < m_; ++pos) {
    const int var = head_[pos];
    if (is_logical(var)) {
      solution.basis.logical_rows.push_back(var - n_);
    } else {
      solution.basis.structural.push_back(var);
      solution.primal[var] = std::max(xb_[pos], 0.0);
    }
  }
  if (solution.status == LpStatus::kOptimal) solution.duals = y_;
  double objective = 0.0;
  for (int j = 0; j < n_; ++j) objective += cost_[j] * solution.primal[j];
  solution.objective = objective;
  return solution;
}

}  // namespace

LpSolution SimplexBackend::solve(const LpProblem& problem,
                                 const std::optional<Basis>& warm_hint,
                                 const LpOptions& options) {
  if (problem.n_vars() < 1) throw LpError("LP has no variables");
  for (const LpRow& row : problem.rows) {
    for (const LpTerm& t : row.terms) {
      if (t.var < 0 || t.var >= problem.n_vars()) {
        throw LpError("row references variable " + std::to_string(t.var) +
                      " outside [0, " + std::to_string(problem.n_vars()) + ")");
      }
    }
  }
  Simplex simplex(problem, options);
  return simplex.run(warm_hint);
}

LpSolution solve_lp(const LpProblem& problem, const std::optional<Basis>& warm_hint,
                    const LpOptions& options) {
  SimplexBackend backend;
  LpSolution solution = backend.solve(problem, warm_hint, options);
  if (solution.status != LpStatus::kOptimal) return solution;
  ResidualReport report = check_solution(problem, solution);
  if (!report.within(solution.tolerances) && warm_hint) {
    solution = backend.solve(problem, std::nullopt, options);
    if (solution.status != LpStatus::kOptimal) return solution;
    report = check_solution(problem, solution);
  }
  if (!report.within(solution.tolerances)) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "optimal basis failed certification: primal %.3g, dual %.3g, "
                  "complementarity %.3g, gap %.3g",
                  report.primal_infeasibility, report.dual_infeasibility,
                  report.complementarity, report.duality_gap);
    throw LpError(buf);
  }
  return solution;
}

}  // namespace ggpgm

#include "lu_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ggpgm::detail {
namespace {

constexpr double kDropTolerance = 1e-13;
constexpr double kSingularTolerance = 1e-9;
constexpr double kThreshold = 0.1;

}  // namespace

double LuFactor::find_in_row(int row, int col) const {
  for (const Entry& e : rows_[row]) {
    if (e.index == col) return e.value;
  }
  return 0.0;
}

double LuFactor::column_max(int col) const {
  double col_max = 0.0;
  for (int r : col_pattern_[col]) {
    if (!row_active_[r]) continue;
    col_max = std::max(col_max, std::abs(find_in_row(r, col)));
  }
  return col_max;
}

// Row of column `col` with an acceptable pivot (threshold partial pivoting)
// and the fewest active entries; -1 when the column is numerically empty.
int LuFactor::pick_pivot_row(int col, double* value) const {
  const double col_max = column_max(col);
  if (col_max < kSingularTolerance) return -1;
  int best = -1;
  int best_count = std::numeric_limits<int>::max();
  double best_abs = 0.0;
  for (int r : col_pattern_[col]) {
    if (!row_active_[r]) continue;
    const double v = find_in_row(r, col);
    const double a = std::abs(v);
    if (a < kThreshold * col_max) continue;
    if (row_count_[r] < best_count || (row_count_[r] == best_count && a > best_abs)) {
      best = r;
      best_count = row_count_[r];
      best_abs = a;
      *value = v;
    }
  }
  return best;
}

std::vector<std::pair<int, int>> LuFactor::factorize(
    int m, const std::vector<ColumnView>& columns) {
  m_ = m;
  pivot_row_.clear();
  pivot_col_.clear();
  pivot_value_.clear();
  l_start_.assign(1, 0);
  l_row_.clear();
  l_mult_.clear();
  u_start_.assign(1, 0);
  u_col_.clear();
  u_value_.clear();

  rows_.resize(m);
  col_pattern_.resize(m);
  for (int i = 0; i < m; ++i) {
    rows_[i].clear();
    col_pattern_[i].clear();
  }
  row_count_.assign(m, 0);
  col_count_.assign(m, 0);
  row_active_.assign(m, 1);
  col_active_.assign(m, 1);
  position_of_col_.assign(m, -1);
  col_singletons_.clear();
  row_singletons_.clear();

  for (int j = 0; j < m; ++j) {
    const ColumnView& c = columns[j];
    for (int k = 0; k < c.size; ++k) {
      if (std::abs(c.values[k]) <= kDropTolerance) continue;
      rows_[c.rows[k]].push_back({j, c.values[k]});
      col_pattern_[j].push_back(c.rows[k]);
      ++row_count_[c.rows[k]];
      ++col_count_[j];
    }
  }
  for (int j = 0; j < m; ++j) {
    if (col_count_[j] == 1) col_singletons_.push_back(j);
  }
  for (int i = 0; i < m; ++i) {
    if (row_count_[i] == 1) row_singletons_.push_back(i);
  }

  std::vector<int> active_cols(m);
  for (int j = 0; j < m; ++j) active_cols[j] = j;
  std::vector<int> dropped;

  int remaining = m;
  while (remaining > 0) {
    int prow = -1;
    int pcol = -1;
    double pval = 0.0;

    while (!col_singletons_.empty() && pcol < 0) {
      const int j = col_singletons_.back();
      col_singletons_.pop_back();
      if (!col_active_[j] || col_count_[j] != 1) continue;
      for (int r : col_pattern_[j]) {
        if (!row_active_[r]) continue;
        const double v = find_in_row(r, j);
        if (v != 0.0) {
          prow = r;
          pcol = j;
          pval = v;
          break;
        }
      }
    }
    while (pcol < 0 && !row_singletons_.empty()) {
      const int i = row_singletons_.back();
      row_singletons_.pop_back();
      if (!row_active_[i] || row_count_[i] != 1) continue;
      const Entry& e = rows_[i].front();
      if (std::abs(e.value) >= kThreshold * column_max(e.index)) {
        prow = i;
        pcol = e.index;
        pval = e.value;
      }
    }
    if (pcol < 0) {
      // Minimum column count search over the active columns.
      std::size_t k = 0;
      int best_count = std::numeric_limits<int>::max();
      while (k < active_cols.size()) {
        const int j = active_cols[k];
        if (!col_active_[j]) {
          active_cols[k] = active_cols.back();
          active_cols.pop_back();
          continue;
        }
        if (col_count_[j] == 0) {
          drop_column(j);
          dropped.push_back(j);
          --remaining;
          active_cols[k] = active_cols.back();
          active_cols.pop_back();
          continue;
        }
        if (col_count_[j] < best_count) {
          best_count = col_count_[j];
          pcol = j;
        }
        ++k;
      }
      if (pcol < 0) break;
      prow = pick_pivot_row(pcol, &pval);
      if (prow < 0) {
        drop_column(pcol);
        dropped.push_back(pcol);
        --remaining;
        continue;
      }
    }
    eliminate(prow, pcol, pval);
    --remaining;
  }

  // Fill the positions of dependent columns with logicals of unpivoted rows.
  std::vector<std::pair<int, int>> replacements;
  std::size_t next = 0;
  for (int i = 0; i < m; ++i) {
    if (!row_active_[i]) continue;
    const int pos = dropped[next++];
    replacements.emplace_back(pos, i);
    row_active_[i] = 0;
    pivot_row_.push_back(i);
    pivot_col_.push_back(pos);
    pivot_value_.push_back(-1.0);
    l_start_.push_back(static_cast<int>(l_row_.size()));
    u_start_.push_back(static_cast<int>(u_col_.size()));
  }
  return replacements;
}

// A dependent column leaves the active submatrix without a pivot; its
// position is later filled by a logical column.
void LuFactor::drop_column(int col) {
  col_active_[col] = 0;
  for (int r : col_pattern_[col]) {
    if (!row_active_[r]) continue;
    auto& row = rows_[r];
    auto it = std::find_if(row.begin(), row.end(),
                           [col](const Entry& e) { return e.index == col; });
    if (it == row.end()) continue;
    *it = row.back();
    row.pop_back();
    if (--row_count_[r] == 1) row_singletons_.push_back(r);
  }
}

void LuFactor::eliminate(int prow, int pcol, double pval) {
  pivot_row_.push_back(prow);
  pivot_col_.push_back(pcol);
  pivot_value_.push_back(pval);
  row_active_[prow] = 0;
  col_active_[pcol] = 0;

  // U part: the rest of the pivot row.
  const std::size_t u_begin = u_col_.size();
  for (const Entry& e : rows_[prow]) {
    if (e.index == pcol) continue;
    u_col_.push_back(e.index);
    u_value_.push_back(e.value);
    if (--col_count_[e.index] == 1) col_singletons_.push_back(e.index);
  }
  const std::size_t u_end = u_col_.size();
  u_start_.push_back(static_cast<int>(u_end));

  for (int r : col_pattern_[pcol]) {
    if (!row_active_[r]) continue;
    auto& row = rows_[r];
    auto it = std::find_if(row.begin(), row.end(),
                           [pcol](const Entry& e) { return e.index == pcol; });
    if (it == row.end()) continue;
    const double mult = it->value / pval;
    *it = row.back();
    row.pop_back();
    --row_count_[r];
    l_row_.push_back(r);
    l_mult_.push_back(mult);

    for (std::size_t k = 0; k < row.size(); ++k) position_of_col_[row[k].index] = static_cast<int>(k);
    for (std::size_t k = u_begin; k < u_end; ++k) {
      const int c = u_col_[k];
      const int p = position_of_col_[c];
      if (p >= 0) {
        row[p].value -= mult * u_value_[k];
      } else {
        position_of_col_[c] = static_cast<int>(row.size());
        row.push_back({c, -mult * u_value_[k]});
        col_pattern_[c].push_back(r);
        ++col_count_[c];
        ++row_count_[r];
      }
    }
    // Drop cancelled entries.
    std::size_t out = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      position_of_col_[row[k].index] = -1;
      if (std::abs(row[k].value) <= kDropTolerance) {
        if (--col_count_[row[k].index] == 1) col_singletons_.push_back(row[k].index);
        --row_count_[r];
      } else {
        row[out++] = row[k];
      }
    }
    row.resize(out);
    if (row_count_[r] == 1) row_singletons_.push_back(r);
  }
  l_start_.push_back(static_cast<int>(l_row_.size()));
  for (std::size_t k = u_begin; k < u_end; ++k) {
    if (col_count_[u_col_[k]] == 1) col_singletons_.push_back(u_col_[k]);
  }
}

void LuFactor::solve(std::vector<double>& rhs, std::vector<double>& x) const {
  const int steps = static_cast<int>(pivot_row_.size());
  for (int k = 0; k < steps; ++k) {
    const double v = rhs[pivot_row_[k]];
    if (v == 0.0) continue;
    for (int p = l_start_[k]; p < l_start_[k + 1]; ++p) rhs[l_row_[p]] -= l_mult_[p] * v;
  }
  x.assign(m_, 0.0);
  for (int k = steps - 1; k >= 0; --k) {
    double s = rhs[pivot_row_[k]];
    for (int p = u_start_[k]; p < u_start_[k + 1]; ++p) s -= u_value_[p] * x[u_col_[p]];
    x[pivot_col_[k]] = s / pivot_value_[k];
  }
}

void LuFactor::solve_transposed(std::vector<double>& rhs, std::vector<double>& y) const {
  const int steps = static_cast<int>(pivot_row_.size());
  y.assign(m_, 0.0);
  for (int k = 0; k < steps; ++k) {
    const double w = rhs[pivot_col_[k]] / pivot_value_[k];
    y[pivot_row_[k]] = w;
    if (w == 0.0) continue;
    for (int p = u_start_[k]; p < u_start_[k + 1]; ++p) rhs[u_col_[p]] -= u_value_[p] * w;
  }
  for (int k = steps - 1; k >= 0; --k) {
    double s = 0.0;
    for (int p = l_start_[k]; p < l_start_[k + 1]; ++p) s += l_mult_[p] * y[l_row_[p]];
    y[pivot_row_[k]] -= s;
  }
}

}  // namespace ggpgm::detail

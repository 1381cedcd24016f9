#pragma once

#include <utility>
#include <vector>

namespace ggpgm::detail {

struct ColumnView {
  const int* rows = nullptr;
  const double* values = nullptr;
  int size = 0;
};

// Sparse LU factorization of a square basis matrix, stored as the sequence of
// elimination steps of right-looking Gaussian elimination. Pivots are chosen
// by singleton detection first, then minimum column count with threshold
// partial pivoting.
//
// Solves index right-hand sides by row and solutions by column position.
class LuFactor {
 public:
  // Column positions whose column was numerically dependent (or empty) are
  // re-assigned the logical column -e_row of a row left without a pivot. The
  // pairs (position, row) of those substitutions are returned; the factor is
  // always complete.
  std::vector<std::pair<int, int>> factorize(int m, const std::vector<ColumnView>& columns);

  // Solve B x = b. `rhs` (by row) is overwritten; `x` is resized to m.
  void solve(std::vector<double>& rhs, std::vector<double>& x) const;
  // Solve B' y = c. `rhs` (by position) is overwritten; `y` is resized to m.
  void solve_transposed(std::vector<double>& rhs, std::vector<double>& y) const;

  int dimension() const { return m_; }
  std::size_t nonzeros() const { return l_row_.size() + u_col_.size() + m_; }

 private:
  struct Entry {
    int index;
    double value;
  };

  void eliminate(int pivot_row, int pivot_col, double pivot_value);
  void drop_column(int col);
  double column_max(int col) const;
  double find_in_row(int row, int col) const;
  int pick_pivot_row(int col, double* value) const;

  int m_ = 0;
  // Elimination sequence.
  std::vector<int> pivot_row_;
  std::vector<int> pivot_col_;
  std::vector<double> pivot_value_;
  std::vector<int> l_start_;  // multipliers for rows eliminated at step k
  std::vector<int> l_row_;
  std::vector<double> l_mult_;
  std::vector<int> u_start_;  // remaining entries of pivot row k
  std::vector<int> u_col_;
  std::vector<double> u_value_;

  // Active submatrix workspace, reused across factorizations.
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<int>> col_pattern_;
  std::vector<int> row_count_;
  std::vector<int> col_count_;
  std::vector<char> row_active_;
  std::vector<char> col_active_;
  std::vector<int> col_singletons_;
  std::vector<int> row_singletons_;
  std::vector<int> position_of_col_;  // scatter map for merging rows
};

}  // namespace ggpgm::detail

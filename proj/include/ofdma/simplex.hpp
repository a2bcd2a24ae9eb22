#pragma once

#include <cstddef>
#include <vector>

namespace ofdma {

// Dense tableau simplex for
//     maximize c^T x  subject to  A x = b,  x >= 0,
// started from a caller-supplied basis whose columns form an identity in A
// (so b >= 0 is a feasible basic solution). Columns can be forced to zero
// after an optimum is reached; primal feasibility is then restored with
// dual simplex pivots, which is what makes branch-and-bound re-solves cheap.
class DenseSimplex {
 public:
  // kStalled: the pivot budget ran out (numerical trouble); the caller should
  // rebuild the problem from scratch.
  enum class Status { kOptimal, kInfeasible, kUnbounded, kStalled };

  DenseSimplex(std::size_t rows, std::size_t cols, std::vector<double> a_row_major,
               std::vector<double> b, std::vector<double> c, std::vector<std::size_t> basis);

  // Replaces the objective and recomputes reduced costs for the current basis.
  void set_objective(std::vector<double> c);

  // Primal simplex from the current (primal feasible) basis.
  Status optimize();

  // Forces column j to zero and bars it from re-entering. Requires the basis to
  // be optimal for the current objective; leaves it optimal again, or reports
  // kInfeasible when no x >= 0 with x_j = 0 satisfies the rows.
  Status fix_at_zero(std::size_t j);

  // Appends the row  sum_j coeffs[j] x_j <= rhs  (or >= when !less_equal)
  // with a fresh slack column, then re-optimizes with dual simplex pivots.
  // `coeffs` covers a prefix of the columns; the rest get coefficient zero.
  // Requires an optimal basis.
  Status add_constraint(const std::vector<double>& coeffs, double rhs, bool less_equal);

  double objective_value() const { return z_; }
  std::vector<double> primal() const;
  bool is_forbidden(std::size_t j) const { return forbidden_[j]; }
  bool is_basic(std::size_t j) const { return basic_row_[j] >= 0; }
  // z_j - c_j: how much the objective drops per unit of nonbasic column j.
  double reduced_cost(std::size_t j) const { return d_[j]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  long pivots() const { return pivots_; }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * n_ + j]; }
  void pivot(std::size_t row, std::size_t col);
  Status restore_primal_feasibility();

  std::size_t m_;
  std::size_t n_;
  std::vector<double> t_;    // B^{-1} A
  std::vector<double> rhs_;  // B^{-1} b
  std::vector<double> c_;
  std::vector<double> d_;    // reduced costs z_j - c_j; optimal when all >= 0
  double z_ = 0.0;
  std::vector<std::size_t> basis_;
  std::vector<long> basic_row_;  // row of a basic column, -1 if nonbasic
  std::vector<char> forbidden_;
  long pivots_ = 0;
};

}  // namespace ofdma

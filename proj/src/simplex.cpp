#include "ofdma/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ofdma {
namespace {
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kRatioTieTol = 1e-9;
constexpr long kBlandAfter = 50;  // degenerate pivots before switching to Bland's rule
constexpr long kIterationFactor = 20;  // pivot budget per row + column before giving up
}  // namespace

DenseSimplex::DenseSimplex(std::size_t rows, std::size_t cols, std::vector<double> a_row_major,
                           std::vector<double> b, std::vector<double> c,
                           std::vector<std::size_t> basis)
    : m_(rows), n_(cols), t_(std::move(a_row_major)), rhs_(std::move(b)), basis_(std::move(basis)),
      basic_row_(cols, -1), forbidden_(cols, 0) {
  if (t_.size() != m_ * n_ || rhs_.size() != m_ || basis_.size() != m_) {
    throw std::invalid_argument("DenseSimplex: inconsistent dimensions");
  }
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t j = basis_[i];
    if (j >= n_ || std::abs(at(i, j) - 1.0) > 1e-12 || rhs_[i] < -kFeasTol) {
      throw std::invalid_argument("DenseSimplex: initial basis must be a feasible identity");
    }
    basic_row_[j] = static_cast<long>(i);
  }
  set_objective(std::move(c));
}

void DenseSimplex::set_objective(std::vector<double> c) {
  if (c.size() != n_) throw std::invalid_argument("DenseSimplex: objective size mismatch");
  c_ = std::move(c);
  d_.assign(n_, 0.0);
  z_ = 0.0;
  for (std::size_t j = 0; j < n_; ++j) d_[j] = -c_[j];
  for (std::size_t i = 0; i < m_; ++i) {
    const double cb = c_[basis_[i]];
    if (cb == 0.0) continue;
    z_ += cb * rhs_[i];
    for (std::size_t j = 0; j < n_; ++j) d_[j] += cb * at(i, j);
  }
}

void DenseSimplex::pivot(std::size_t row, std::size_t col) {
  ++pivots_;
  const double inv = 1.0 / at(row, col);
  double* prow = &t_[row * n_];
  for (std::size_t j = 0; j < n_; ++j) prow[j] *= inv;
  rhs_[row] *= inv;
  prow[col] = 1.0;

  for (std::size_t i = 0; i < m_; ++i) {
    if (i == row) continue;
    double* r = &t_[i * n_];
    const double f = r[col];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j < n_; ++j) r[j] -= f * prow[j];
    r[col] = 0.0;
    rhs_[i] -= f * rhs_[row];
    if (std::abs(rhs_[i]) < 1e-13) rhs_[i] = 0.0;
  }
  const double f = d_[col];
  if (f != 0.0) {
    for (std::size_t j = 0; j < n_; ++j) d_[j] -= f * prow[j];
    d_[col] = 0.0;
    z_ -= f * rhs_[row];
  }
  basic_row_[basis_[row]] = -1;
  basis_[row] = col;
  basic_row_[col] = static_cast<long>(row);
}

DenseSimplex::Status DenseSimplex::optimize() {
  long degenerate = 0;
  const long limit = kIterationFactor * static_cast<long>(m_ + n_);
  for (long iterations = 0;; ++iterations) {
    if (iterations > limit) return Status::kStalled;
    const bool bland = degenerate > kBlandAfter;
    std::size_t enter = n_;
    double best = -kCostTol;
    for (std::size_t j = 0; j < n_; ++j) {
      if (forbidden_[j] || basic_row_[j] >= 0) continue;
      if (d_[j] < best) {
        enter = j;
        if (bland) break;
        best = d_[j];
      }
    }
    if (enter == n_) return Status::kOptimal;

    std::size_t leave = m_;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = at(i, enter);
      if (a <= kPivotTol) continue;
      const double q = std::max(rhs_[i], 0.0) / a;
      if (q < ratio - 1e-12 || (q <= ratio + 1e-12 && leave < m_ && basis_[i] < basis_[leave])) {
        ratio = std::min(ratio, q);
        leave = i;
      }
    }
    if (leave == m_) return Status::kUnbounded;
    degenerate = ratio <= 1e-12 ? degenerate + 1 : 0;
    pivot(leave, enter);
  }
}

DenseSimplex::Status DenseSimplex::restore_primal_feasibility() {
  // Dual simplex: most negative basic value leaves. Among columns tied in the
  // ratio test the largest pivot element wins, which keeps the tableau well
  // conditioned on dual-degenerate problems (e.g. a zero objective).
  const long limit = kIterationFactor * static_cast<long>(m_ + n_);
  for (long iterations = 0;; ++iterations) {
    if (iterations > limit) return Status::kStalled;
    std::size_t leave = m_;
    double worst = -kFeasTol;
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs_[i] < worst) {
        worst = rhs_[i];
        leave = i;
      }
    }
    if (leave == m_) return Status::kOptimal;

    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n_; ++j) {
      if (forbidden_[j] || basic_row_[j] >= 0) continue;
      const double a = at(leave, j);
      if (a >= -kPivotTol) continue;
      ratio = std::min(ratio, std::max(d_[j], 0.0) / -a);
    }
    if (ratio == std::numeric_limits<double>::infinity()) return Status::kInfeasible;
    std::size_t enter = n_;
    double largest = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (forbidden_[j] || basic_row_[j] >= 0) continue;
      const double a = at(leave, j);
      if (a >= -kPivotTol) continue;
      if (std::max(d_[j], 0.0) / -a <= ratio + kRatioTieTol && -a > largest) {
        largest = -a;
        enter = j;
      }
    }
    pivot(leave, enter);
  }
}

DenseSimplex::Status DenseSimplex::fix_at_zero(std::size_t j) {
  if (j >= n_) throw std::out_of_range("DenseSimplex::fix_at_zero");
  if (forbidden_[j]) return Status::kOptimal;
  forbidden_[j] = 1;
  const long row_l = basic_row_[j];
  if (row_l < 0) return Status::kOptimal;

  const auto row = static_cast<std::size_t>(row_l);
  const double v = rhs_[row];
  // x_j = v - sum_l a_l x_l. Push x_j down by raising a column with a_l > 0,
  // chosen by the dual ratio test so reduced costs stay non-negative.
  std::size_t enter = n_;
  double ratio = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < n_; ++l) {
    if (forbidden_[l] || basic_row_[l] >= 0) continue;
    const double a = at(row, l);
    if (a <= kPivotTol) continue;
    const double q = std::max(d_[l], 0.0) / a;
    if (q < ratio - 1e-12) {
      ratio = q;
      enter = l;
    }
  }
  if (enter == n_) {
    if (v > kFeasTol) return Status::kInfeasible;
    // x_j is pinned at zero only if every column with a_l < 0 in its row stays
    // at zero as well.
    for (std::size_t l = 0; l < n_; ++l) {
      if (basic_row_[l] < 0 && at(row, l) < -kPivotTol) forbidden_[l] = 1;
    }
    rhs_[row] = 0.0;
    return Status::kOptimal;
  }
  pivot(row, enter);
  const Status s = restore_primal_feasibility();
  if (s != Status::kOptimal) return s;
  // Clean up any reduced-cost drift left by the dual pivots.
  return optimize();
}

DenseSimplex::Status DenseSimplex::add_constraint(const std::vector<double>& coeffs, double rhs,
                                                  bool less_equal) {
  if (coeffs.size() > n_) {
    throw std::invalid_argument("DenseSimplex::add_constraint: too many coefficients");
  }
  // Stored as  sign * a x + s = sign * rhs  with the slack s basic.
  const double sign = less_equal ? 1.0 : -1.0;
  const std::size_t new_n = n_ + 1;
  const std::size_t new_m = m_ + 1;

  std::vector<double> row(new_n, 0.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) row[j] = sign * coeffs[j];
  double row_rhs = sign * rhs;
  // Eliminate the basic columns so the row is expressed in the current basis.
  for (std::size_t i = 0; i < m_; ++i) {
    const double f = row[basis_[i]];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j < n_; ++j) row[j] -= f * at(i, j);
    row_rhs -= f * rhs_[i];
  }
  for (std::size_t i = 0; i < m_; ++i) row[basis_[i]] = 0.0;
  row[n_] = 1.0;

  std::vector<double> t(new_m * new_n, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    std::copy(&t_[i * n_], &t_[i * n_] + n_, &t[i * new_n]);
  }
  std::copy(row.begin(), row.end(), &t[m_ * new_n]);
  t_ = std::move(t);
  rhs_.push_back(row_rhs);
  c_.push_back(0.0);
  d_.push_back(0.0);
  forbidden_.push_back(0);
  basic_row_.push_back(static_cast<long>(m_));
  basis_.push_back(n_);
  m_ = new_m;
  n_ = new_n;

  const Status s = restore_primal_feasibility();
  if (s != Status::kOptimal) return s;
  return optimize();
}

std::vector<double> DenseSimplex::primal() const {
  std::vector<double> x(n_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) x[basis_[i]] = std::max(rhs_[i], 0.0);
  return x;
}

}  // namespace ofdma

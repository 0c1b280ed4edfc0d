#include "einsolv/lp.hpp"

#include "einsolv/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace einsolv::lp {

namespace {

class Tableau {
 public:
  Tableau(const Matrix& a, const Vector& b, double tol) : rows_(static_cast<int>(a.rows())), tol_(tol) {
    const int n = static_cast<int>(a.cols());
    cols_ = n + rows_;  // structural + one artificial per row
    t_ = Matrix::Zero(rows_, cols_ + 1);
    t_.leftCols(n) = a;
    for (int r = 0; r < rows_; ++r) {
      t_(r, n + r) = 1.0;
      t_(r, cols_) = b(r);
    }
    basis_.resize(rows_);
    for (int r = 0; r < rows_; ++r) basis_[r] = n + r;
    structural_ = n;
  }

  // Maximize cost.x over the current feasible tableau; cost has length cols_.
  Status optimize(const Vector& cost, const std::vector<bool>& allowed) {
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        if (reduced_cost(cost, j) > tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::optimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        if (t_(r, enter) > tol_) {
          const double ratio = t_(r, cols_) / t_(r, enter);
          if (ratio < best - tol_ || (std::fabs(ratio - best) <= tol_ && basis_[r] < basis_[leave])) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return Status::unbounded;
      pivot(leave, enter);
    }
    throw NumericalError("simplex iteration limit reached");
  }

  double value(const Vector& cost) const {
    double v = 0.0;
    for (int r = 0; r < rows_; ++r) v += cost(basis_[r]) * t_(r, cols_);
    return v;
  }

  // Pivot remaining zero-level artificials out of the basis where possible.
  void expel_artificials() {
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) continue;
      for (int j = 0; j < structural_; ++j) {
        if (std::fabs(t_(r, j)) > tol_ && !is_basic(j)) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  Vector solution() const {
    Vector x = Vector::Zero(structural_);
    for (int r = 0; r < rows_; ++r)
      if (basis_[r] < structural_) x(basis_[r]) = t_(r, cols_);
    return x;
  }

  int cols() const { return cols_; }
  int structural() const { return structural_; }

 private:
  bool is_basic(int j) const {
    for (int b : basis_)
      if (b == j) return true;
    return false;
  }

  double reduced_cost(const Vector& cost, int j) const {
    double r = cost(j);
    for (int row = 0; row < rows_; ++row) r -= cost(basis_[row]) * t_(row, j);
    return r;
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const double f = t_(r, col);
      if (f != 0.0) t_.row(r) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  int rows_;
  int cols_ = 0;
  int structural_ = 0;
  double tol_;
  Matrix t_;
  std::vector<int> basis_;
};

}  // namespace

Solution solve(const Problem& problem, double tol) {
  const int n = static_cast<int>(problem.objective.size());
  const int m_eq = static_cast<int>(problem.a_eq.rows());
  const int m_le = static_cast<int>(problem.a_le.rows());
  if ((m_eq > 0 && problem.a_eq.cols() != n) || (m_le > 0 && problem.a_le.cols() != n) ||
      problem.b_eq.size() != m_eq || problem.b_le.size() != m_le) {
    throw InputError("lp: inconsistent problem dimensions");
  }
  // Standard form with one slack per inequality row.
  const int vars = n + m_le;
  const int rows = m_eq + m_le;
  Matrix a = Matrix::Zero(rows, vars);
  Vector b(rows);
  if (m_eq > 0) a.block(0, 0, m_eq, n) = problem.a_eq;
  if (m_le > 0) {
    a.block(m_eq, 0, m_le, n) = problem.a_le;
    a.block(m_eq, n, m_le, m_le).setIdentity();
  }
  if (m_eq > 0) b.head(m_eq) = problem.b_eq;
  if (m_le > 0) b.tail(m_le) = problem.b_le;
  for (int r = 0; r < rows; ++r) {
    if (b(r) < 0) {
      a.row(r) *= -1.0;
      b(r) = -b(r);
    }
  }

  Tableau tab(a, b, tol);
  std::vector<bool> allowed(tab.cols(), true);
  Vector phase1 = Vector::Zero(tab.cols());
  phase1.tail(rows).setConstant(-1.0);
  tab.optimize(phase1, allowed);
  Solution sol;
  if (tab.value(phase1) < -1e3 * tol * std::max(1.0, b.cwiseAbs().maxCoeff())) {
    sol.status = Status::infeasible;
    return sol;
  }
  tab.expel_artificials();
  for (int j = vars; j < tab.cols(); ++j) allowed[j] = false;
  Vector phase2 = Vector::Zero(tab.cols());
  phase2.head(n) = problem.objective;
  sol.status = tab.optimize(phase2, allowed);
  const Vector x = tab.solution();
  sol.x = x.head(n);
  sol.value = problem.objective.dot(sol.x);
  return sol;
}

}  // namespace einsolv::lp

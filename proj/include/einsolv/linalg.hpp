#pragma once

#include "einsolv/rational.hpp"
#include "einsolv/tensor.hpp"

#include <complex>
#include <vector>

namespace einsolv {

/// Orthonormal basis (as columns) of the null space of `system`, with
/// singular values below rel_cutoff * sigma_max treated as zero.
/// A zero system yields the identity.
Matrix nullspace(const Matrix& system, double rel_cutoff = 1e-10);

/// Numerical rank with the same cutoff convention as nullspace().
int numerical_rank(const Matrix& m, double rel_cutoff = 1e-10);

/// g^{1/2} and g^{-1/2} for a symmetric positive-definite g.
struct SymmetricRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
};
SymmetricRoots symmetric_roots(const Matrix& g);

double operator_norm(const Matrix& m);
double min_eigenvalue(const Matrix& symmetric);
double symmetry_defect(const Matrix& m);

/// Column-stacked vec(M).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int rows, int cols);

/// Diagonalizability test: eigenvalues are clustered with tolerance
/// cluster_rel * ||M||, then rank(M - lambda I) is compared with
/// n - (cluster size) for each cluster.
struct SpectralReport {
  bool semisimple = false;
  bool real_spectrum = false;
  std::vector<std::complex<double>> eigenvalues;
};
SpectralReport spectral_report(const Matrix& m, double cluster_rel = 1e-8);

/// Real eigenvalues of a matrix with real spectrum. Diagonal input keeps
/// diagonal order; otherwise the values are sorted ascending.
std::vector<double> real_eigenvalues(const Matrix& m);

/// Exact linear algebra over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  Matrix to_double() const;
  static RationalMatrix identity(int n);
  static RationalMatrix diagonal(const std::vector<Rational>& d);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

int exact_rank(RationalMatrix m);

/// Rational basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<Rational>> exact_nullspace(RationalMatrix m);

}  // namespace einsolv

#include "einsolv/linalg.hpp"

#include "einsolv/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace einsolv {

// --- StructureTensor -------------------------------------------------------

double StructureTensor::norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) s += (*this)(i, j, k) * (*this)(i, j, k);
  return std::sqrt(s);
}

double StructureTensor::max_abs_diff(const StructureTensor& other) const {
  if (other.dim_ != dim_) throw InputError("structure tensors of different dimension");
  double m = 0.0;
  for (std::size_t t = 0; t < data_.size(); ++t) m = std::max(m, std::fabs(data_[t] - other.data_[t]));
  return m;
}

Matrix StructureTensor::ad(int i) const {
  Matrix a = Matrix::Zero(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k) a(k, j) = (*this)(i, j, k);
  return a;
}

// --- dense helpers ---------------------------------------------------------

Matrix nullspace(const Matrix& system, double rel_cutoff) {
  const int n = static_cast<int>(system.cols());
  if (system.rows() == 0 || system.norm() == 0.0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> svd(system, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_cutoff * s(0);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

int numerical_rank(const Matrix& m, double rel_cutoff) {
  if (m.size() == 0 || m.norm() == 0.0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_cutoff * s(0)) ++rank;
  return rank;
}

SymmetricRoots symmetric_roots(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.transpose()));
  const Vector& w = es.eigenvalues();
  if (w.size() > 0 && w.minCoeff() <= 0.0) throw PreconditionError("metric is not positive definite");
  const Matrix& v = es.eigenvectors();
  return {v * w.cwiseSqrt().asDiagonal() * v.transpose(),
          v * w.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose()};
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double min_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (symmetric + symmetric.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double symmetry_defect(const Matrix& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, int rows, int cols) { return Eigen::Map<const Matrix>(v.data(), rows, cols); }

SpectralReport spectral_report(const Matrix& m, double cluster_rel) {
  SpectralReport report;
  const int n = static_cast<int>(m.rows());
  if (n == 0) {
    report.semisimple = report.real_spectrum = true;
    return report;
  }
  const double scale = std::max(operator_norm(m), 1e-300);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.cast<std::complex<double>>());
  const Eigen::VectorXcd ev = es.eigenvalues();
  report.eigenvalues.assign(ev.data(), ev.data() + n);
  report.real_spectrum = std::all_of(report.eigenvalues.begin(), report.eigenvalues.end(),
                                     [&](const auto& z) { return std::fabs(z.imag()) <= cluster_rel * scale; });

  // Greedy clustering of nearby eigenvalues.
  const double tol = std::max(cluster_rel * scale, 1e-14);
  std::vector<int> cluster(n, -1);
  std::vector<std::complex<double>> centers;
  std::vector<int> sizes;
  for (int i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (std::abs(ev(i) - centers[c]) <= tol) {
        cluster[i] = static_cast<int>(c);
        break;
      }
    }
    if (cluster[i] < 0) {
      cluster[i] = static_cast<int>(centers.size());
      centers.push_back(ev(i));
      sizes.push_back(0);
    }
    ++sizes[cluster[i]];
  }
  report.semisimple = true;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    std::complex<double> mean = 0.0;
    for (int i = 0; i < n; ++i)
      if (cluster[i] == static_cast<int>(c)) mean += ev(i);
    mean /= static_cast<double>(sizes[c]);
    Eigen::MatrixXcd shifted = m.cast<std::complex<double>>();
    shifted.diagonal().array() -= mean;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > 1e-6 * scale) ++rank;
    if (rank != n - sizes[c]) {
      report.semisimple = false;
      break;
    }
  }
  return report;
}

std::vector<double> real_eigenvalues(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  const Matrix off = m - Matrix(m.diagonal().asDiagonal());
  if (n == 0 || off.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = m(i, i);
    return out;
  }
  Eigen::EigenSolver<Matrix> es(m, false);
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

// --- exact -----------------------------------------------------------------

Matrix RationalMatrix::to_double() const {
  Matrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).convert_to<double>();
  return out;
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& d) {
  const int n = static_cast<int>(d.size());
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RationalMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    const Rational inv = 1 / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int exact_rank(RationalMatrix m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Rational>> exact_nullspace(RationalMatrix m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace einsolv

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace einsolv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense structure tensor: c(i, j, k) is the e_k coefficient of [e_i, e_j].
/// Stored in full (both orderings of i, j).
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  int dim() const { return dim_; }

  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  /// Frobenius norm over i < j entries.
  double norm() const;

  /// Largest |c(i,j,k) - other(i,j,k)|.
  double max_abs_diff(const StructureTensor& other) const;

  /// Matrix of y -> [e_i, y].
  Matrix ad(int i) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_ = 0;
  std::vector<double> data_;
};

}  // namespace einsolv

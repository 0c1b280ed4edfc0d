#pragma once

#include "einsolv/tensor.hpp"

#include <span>

// Hot loops over structure tensors. The default entry points are
// OpenMP-parallel; einsolv::kernels::serial holds the straight-line
// reference versions that the tests compare against.

namespace einsolv::kernels {

/// c'(i,j,k) = sum A(k,c) Ainv(a,i) Ainv(b,j) c(a,b,c): the bracket
/// transported by x -> A x.
StructureTensor transform(const StructureTensor& c, const Matrix& a, const Matrix& a_inv);

/// Bracket-quadratic part of the Ricci formula in an orthonormal frame,
/// with all brackets projected onto the index set q:
///   M(x,y) = -1/2 sum_{i,m in q} c(x,i,m) c(y,i,m)
///            + 1/4 sum_{i,j in q} c(i,j,x) c(i,j,y)
Matrix moment_contraction(const StructureTensor& c, std::span<const int> q);

/// Linear system L vec(D) = 0 whose solutions are the derivations, one row
/// per (i < j, k). vec is column-stacked: D(a,b) sits at index b*n + a.
Matrix leibniz_system(const StructureTensor& c);

/// Trace form of a family: G(i,j) = trace(A_i A_j).
Matrix trace_gram(std::span<const Matrix> family);

namespace serial {
StructureTensor transform(const StructureTensor& c, const Matrix& a, const Matrix& a_inv);
Matrix moment_contraction(const StructureTensor& c, std::span<const int> q);
Matrix leibniz_system(const StructureTensor& c);
Matrix trace_gram(std::span<const Matrix> family);
}  // namespace serial

}  // namespace einsolv::kernels

#include "einsolv/kernels.hpp"

#include <omp.h>

namespace einsolv::kernels {

namespace {

// Contract one tensor slot with a matrix: out(.., p, ..) = sum_s m(s, p) in(.., s, ..)
// for slot 0 or 1, and out(i, j, p) = sum_s m(p, s) in(i, j, s) for slot 2.
template <bool Parallel>
StructureTensor contract_slot(const StructureTensor& in, const Matrix& m, int slot) {
  const int n = in.dim();
  StructureTensor out(n);
#pragma omp parallel for if (Parallel) schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        if (slot == 0) {
          for (int t = 0; t < n; ++t) s += m(t, i) * in(t, j, k);
        } else if (slot == 1) {
          for (int t = 0; t < n; ++t) s += m(t, j) * in(i, t, k);
        } else {
          for (int t = 0; t < n; ++t) s += m(k, t) * in(i, j, t);
        }
        out(i, j, k) = s;
      }
    }
  }
  return out;
}

template <bool Parallel>
Matrix moment_impl(const StructureTensor& c, std::span<const int> q) {
  const int m = static_cast<int>(q.size());
  Matrix out = Matrix::Zero(m, m);
#pragma omp parallel for if (Parallel) schedule(static)
  for (int x = 0; x < m; ++x) {
    for (int y = x; y < m; ++y) {
      double first = 0.0;
      double second = 0.0;
      for (int i = 0; i < m; ++i) {
        for (int t = 0; t < m; ++t) {
          first += c(q[x], q[i], q[t]) * c(q[y], q[i], q[t]);
          second += c(q[i], q[t], q[x]) * c(q[i], q[t], q[y]);
        }
      }
      out(x, y) = out(y, x) = -0.5 * first + 0.25 * second;
    }
  }
  return out;
}

template <bool Parallel>
Matrix leibniz_impl(const StructureTensor& c) {
  const int n = c.dim();
  const int pairs = n * (n - 1) / 2;
  Matrix sys = Matrix::Zero(static_cast<Eigen::Index>(pairs) * n, static_cast<Eigen::Index>(n) * n);
#pragma omp parallel for if (Parallel) schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // Row offset of pair (i, j) in the i < j enumeration.
      const int pair = i * n - i * (i + 1) / 2 + (j - i - 1);
      for (int k = 0; k < n; ++k) {
        const Eigen::Index row = static_cast<Eigen::Index>(pair) * n + k;
        // k-component of D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j]
        for (int m = 0; m < n; ++m) {
          sys(row, m * n + k) += c(i, j, m);   // D(k, m) c(i,j,m)
          sys(row, i * n + m) -= c(m, j, k);   // D(m, i) c(m,j,k)
          sys(row, j * n + m) -= c(i, m, k);   // D(m, j) c(i,m,k)
        }
      }
    }
  }
  return sys;
}

template <bool Parallel>
Matrix gram_impl(std::span<const Matrix> family) {
  const int m = static_cast<int>(family.size());
  Matrix g(m, m);
#pragma omp parallel for if (Parallel) schedule(dynamic)
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      // trace(A B) = sum A(r,s) B(s,r)
      g(i, j) = g(j, i) = family[i].cwiseProduct(family[j].transpose()).sum();
    }
  }
  return g;
}

template <bool Parallel>
StructureTensor transform_impl(const StructureTensor& c, const Matrix& a, const Matrix& a_inv) {
  StructureTensor t = contract_slot<Parallel>(c, a_inv, 0);
  t = contract_slot<Parallel>(t, a_inv, 1);
  return contract_slot<Parallel>(t, a, 2);
}

}  // namespace

StructureTensor transform(const StructureTensor& c, const Matrix& a, const Matrix& a_inv) {
  return transform_impl<true>(c, a, a_inv);
}
Matrix moment_contraction(const StructureTensor& c, std::span<const int> q) { return moment_impl<true>(c, q); }
Matrix leibniz_system(const StructureTensor& c) { return leibniz_impl<true>(c); }
Matrix trace_gram(std::span<const Matrix> family) { return gram_impl<true>(family); }

namespace serial {
StructureTensor transform(const StructureTensor& c, const Matrix& a, const Matrix& a_inv) {
  return transform_impl<false>(c, a, a_inv);
}
Matrix moment_contraction(const StructureTensor& c, std::span<const int> q) { return moment_impl<false>(c, q); }
Matrix leibniz_system(const StructureTensor& c) { return leibniz_impl<false>(c); }
Matrix trace_gram(std::span<const Matrix> family) { return gram_impl<false>(family); }
}  // namespace serial

}  // namespace einsolv::kernels

#pragma once

#include "einsolv/lie_algebra.hpp"
#include "einsolv/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace einsolv::test {

using Rng = std::mt19937_64;

/// Dense rational structure tensor, index (i*n + j)*n + k, both orderings stored.
struct ExactTensor {
  int n = 0;
  std::vector<Rational> c;

  explicit ExactTensor(int dim) : n(dim), c(static_cast<std::size_t>(dim) * dim * dim) {}
  Rational& at(int i, int j, int k) { return c[(static_cast<std::size_t>(i) * n + j) * n + k]; }
  const Rational& at(int i, int j, int k) const { return c[(static_cast<std::size_t>(i) * n + j) * n + k]; }
  void set(int i, int j, int k, const Rational& v) {
    at(i, j, k) = v;
    at(j, i, k) = -v;
  }
};

ExactTensor exact_tensor(const LieAlgebra& alg);
LieAlgebra to_algebra(const ExactTensor& t);

/// Two-step nilpotent algebra on V (p) + Z (q), random small integer brackets V x V -> Z.
ExactTensor random_two_step(Rng& rng, int p, int q, double density = 0.5);

/// Exact change of basis by a random rational unipotent-times-unipotent matrix.
ExactTensor random_rational_basis_change(Rng& rng, const ExactTensor& t);

/// True iff the cyclic Jacobi sum vanishes exactly on every triple.
bool jacobi_holds(const ExactTensor& t);

/// n^2 - rank of the Leibniz system, by exact elimination.
int exact_derivation_dim(const ExactTensor& t);

Matrix random_matrix(Rng& rng, int rows, int cols);
Matrix random_orthogonal(Rng& rng, int n);
Matrix random_invertible(Rng& rng, int n);
Matrix random_spd(Rng& rng, int n);

/// A + V + Z with ad A = diag(1 on V, 2 on Z) over a random two-step bracket,
/// carried to a random basis.
LieAlgebra random_solvable(Rng& rng, int p, int q);

/// Heisenberg algebra of dimension 2k+1 with [e_{2i-1}, e_{2i}] = z.
LieAlgebra heisenberg(int k);

/// Rank-one Einstein extension of heisenberg(k): ad A = diag(1/2, ..., 1/2, 1), A first.
LieAlgebra complex_hyperbolic(int k);

double relative_error(const Matrix& a, const Matrix& b);

}  // namespace einsolv::test

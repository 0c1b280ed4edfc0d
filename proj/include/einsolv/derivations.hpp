#pragma once

#include "einsolv/lie_algebra.hpp"
#include "einsolv/rational.hpp"

#include <span>
#include <vector>

namespace einsolv {

/// Basis of a space of derivations. The matrices are orthonormal for the
/// Frobenius inner product.
struct DerivationBasis {
  int algebra_dim = 0;
  std::vector<Matrix> matrices;

  int size() const { return static_cast<int>(matrices.size()); }
};

/// All derivations: null space of the Leibniz system.
DerivationBasis derivation_basis(const LieAlgebra& algebra);

/// Derivations that are skew-symmetric for the metric.
DerivationBasis skew_derivations(const LieAlgebra& algebra, const InnerProduct& metric);

/// Derivations commuting with every matrix in `commutants`.
DerivationBasis commuting_derivations(const LieAlgebra& algebra, std::span<const Matrix> commutants);

/// Largest distance of a matrix from the span of a basis (Frobenius).
double span_residual(const DerivationBasis& basis, const Matrix& m);

struct PreEinsteinDerivation {
  Matrix matrix;
  std::vector<double> eigenvalues;  // raw, real parts
  std::vector<Snapped> snapped;     // denominator cap 64
  bool semisimple = false;
  bool real_spectrum = false;
  double defining_residual = 0.0;   // max_k |trace(phi A_k) - trace(A_k)|
  double trace_residual = 0.0;      // |trace(phi^2) - trace(phi)|
  double snap_error = 0.0;          // max |eigenvalue - snapped|
};

/// Solves trace(phi A) = trace(A) over Der(algebra) by minimum-norm least
/// squares on the trace Gram matrix. Throws NumericalError when the
/// defining equations are not met to 1e-8.
PreEinsteinDerivation pre_einstein(const LieAlgebra& algebra);
PreEinsteinDerivation pre_einstein(const DerivationBasis& der);

}  // namespace einsolv

#pragma once

#include "einsolv/derivations.hpp"
#include "einsolv/lie_algebra.hpp"
#include "einsolv/rational.hpp"

#include <array>
#include <optional>
#include <vector>

namespace einsolv {

/// A bracket mu together with the Lie algebra of matrices acting on it.
struct OrbitProblem {
  LieAlgebra mu;
  std::vector<Matrix> group_basis;
};

/// g_phi = sl_n cap z(phi) cap ker t, written in an eigenbasis of phi.
struct GPhiData {
  Matrix eigenbasis;               // columns: eigenvectors of phi in the original basis
  std::vector<Rational> spectrum;  // snapped eigenvalues, in eigenbasis order
  LieAlgebra mu;                   // the bracket in the eigenbasis
  std::vector<Matrix> basis;
  std::vector<Matrix> torus_basis;  // diagonal, integer entries

  OrbitProblem problem() const { return {mu, basis}; }
  OrbitProblem torus_problem() const { return {mu, torus_basis}; }
};

GPhiData build_g_phi(const LieAlgebra& n, const PreEinsteinDerivation& phi);

/// A.mu(x, y) = A mu(A^-1 x, A^-1 y). Throws PreconditionError when A is
/// singular (condition number >= 1e12).
LieAlgebra act(const LieAlgebra& mu, const Matrix& a);

/// The bracket written in the basis given by the columns of p.
LieAlgebra change_basis(const LieAlgebra& mu, const Matrix& p);

/// Infinitesimal action X.mu(x,y) = X mu(x,y) - mu(Xx,y) - mu(x,Xy).
StructureTensor infinitesimal_action(const StructureTensor& mu, const Matrix& x);

/// Largest residual of commutators of the basis against its span.
double closure_residual(std::span<const Matrix> basis);

/// dim {X in span(group_basis) : X.mu = 0}.
int stabilizer_dimension(const OrbitProblem& problem);

enum class OrbitVerdict { closed, not_closed, undecided };

struct TorusTestResult {
  OrbitVerdict verdict = OrbitVerdict::undecided;
  bool closed = false;
  std::vector<std::array<int, 3>> support;  // (i, j, k) with i < j
  std::vector<Vector> weights;              // one per support entry
  bool integral_weights = true;
  double slack = 0.0;                       // interiority LP optimum
  Vector lp_weights;                        // convex coefficients when 0 is in the hull
  double norm_lower_bound = 0.0;            // certified lower bound on the torus orbit norm
  std::optional<Vector> destabilizer;       // coefficients on the torus basis
  Matrix destabilizer_matrix;
  bool strict = false;                      // destabilizer positive on every weight
  double margin = 0.0;
  bool flow_verified = false;
  std::vector<double> flow_norms;           // ||exp(-s X) . mu|| at sampled s
};

/// Hilbert-Mumford test for a torus. Throws PreconditionError ("torus test
/// requires a torus") when the generators do not commute or are not
/// simultaneously diagonalizable over the reals.
TorusTestResult torus_closed(const OrbitProblem& problem);

}  // namespace einsolv

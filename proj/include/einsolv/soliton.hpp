#pragma once

#include "einsolv/derivations.hpp"
#include "einsolv/lie_algebra.hpp"
#include "einsolv/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace einsolv {

/// Ric = c Id + D fitted by least squares over span{Id} + Der(n).
struct SolitonFit {
  double c = 0.0;
  Matrix d;              // fitted derivation, basis of the algebra
  double residual = 0.0; // ||Ric - c Id - D||_F / ||Ric||_F (orthonormal frame)
};

SolitonFit nilsoliton_residual(const LieAlgebra& n, const InnerProduct& metric);
SolitonFit nilsoliton_residual(const LieAlgebra& n, const InnerProduct& metric, const DerivationBasis& der);

/// lambda * matrix with lambda the least positive rational turning every
/// snapped eigenvalue into an integer.
struct NormalizedDerivation {
  Matrix matrix;
  Rational lambda;      // exact multiplier of the snapped spectrum
  double scale = 1.0;   // multiplier actually applied to the input matrix
  std::vector<Integer> integers;
};

/// Throws PreconditionError ("not an Einstein-derivation candidate") when a
/// snapped eigenvalue is not positive or the spectrum is not real.
NormalizedDerivation einstein_derivation_normalized(const PreEinsteinDerivation& phi);
NormalizedDerivation einstein_derivation_normalized(const Matrix& d);

struct FlowParams {
  double step = 1e-2;
  int max_iter = 20000;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  int burn_in = 50;
  double growth = 1.0;    // step multiplier after an accepted step
  double max_step = 1.0;
};

struct FlowReport {
  InnerProduct final_metric;  // last iterate still representable in double precision
  Matrix final_frame;         // orthonormal frame of the final iterate, original basis
  LieAlgebra final_bracket;   // the bracket in that frame
  Matrix final_ricci;         // Ricci operator in that frame
  int iterations = 0;
  std::vector<double> residual_history;
  bool converged = false;
  bool stagnated = false;  // step underflow before convergence
  double best_residual = 0.0;
  double final_step = 0.0;
  std::uint64_t seed = 0;
  std::string note;
};

/// Random positive-definite matrix with unit determinant, reproducible from seed.
InnerProduct random_metric(int dim, std::uint64_t seed);

/// Normalized metric flow g <- g - 2 step (Rc - (scal/n) g), det g = 1,
/// with step halving when the soliton residual increases after burn-in.
FlowReport nilsoliton_flow(const LieAlgebra& n, const InnerProduct& init, const FlowParams& params);

/// One flow per seed from random_metric(dim, seed); runs are distributed over
/// OpenMP threads. serial_flow_runs is the reference implementation.
std::vector<FlowReport> flow_runs(const LieAlgebra& n, std::span<const std::uint64_t> seeds, const FlowParams& params);
std::vector<FlowReport> serial_flow_runs(const LieAlgebra& n, std::span<const std::uint64_t> seeds,
                                         const FlowParams& params);

}  // namespace einsolv

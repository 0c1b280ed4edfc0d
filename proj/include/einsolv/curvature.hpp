#pragma once

#include "einsolv/lie_algebra.hpp"

#include <vector>

namespace einsolv {

/// g = k + q with a metric on q (indexed in q_indices order).
struct ReductiveSplit {
  LieAlgebra algebra;
  std::vector<int> k_indices;
  std::vector<int> q_indices;
  InnerProduct metric;

  /// Split with empty isotropy over the whole algebra.
  static ReductiveSplit group(LieAlgebra algebra, InnerProduct metric);
};

/// Throws PreconditionError unless k is a subalgebra, [k, q] lies in q and
/// the metric is ad(k)-invariant.
void check_split(const ReductiveSplit& split);

struct RicciReport {
  Matrix ricci_operator;  // on the q basis
  Matrix ricci_tensor;    // Rc(e_a, e_b), symmetric
  Matrix onb_operator;    // Ricci operator in the orthonormal frame g^{-1/2}
  double einstein_constant = 0.0;
  double deviation = 0.0;
  double scalar_curvature = 0.0;
};

/// <H, X> = trace(ad X) for X in q; coordinates on the q basis.
Vector mean_curvature_vector(const ReductiveSplit& split);

/// The bracket-quadratic operator M on q (q basis coordinates).
Matrix moment_operator(const ReductiveSplit& split);

RicciReport ricci_operator(const ReductiveSplit& split);

/// deviation < tol and negative Einstein constant.
bool einstein_check(const RicciReport& report, double tol);

}  // namespace einsolv

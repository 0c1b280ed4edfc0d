#pragma once

#include "einsolv/tensor.hpp"

namespace einsolv::lp {

enum class Status { optimal, infeasible, unbounded };

/// maximize c.x  subject to  A_eq x = b_eq,  A_le x <= b_le,  x >= 0.
/// Empty matrices are allowed for either constraint block.
struct Problem {
  Vector objective;
  Matrix a_eq;
  Vector b_eq;
  Matrix a_le;
  Vector b_le;
};

struct Solution {
  Status status = Status::infeasible;
  Vector x;
  double value = 0.0;
};

/// Dense two-phase simplex with Bland's rule. Intended for the small
/// weight-polytope problems of the torus test.
Solution solve(const Problem& problem, double tol = 1e-11);

}  // namespace einsolv::lp

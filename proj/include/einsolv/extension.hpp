#pragma once

#include "einsolv/curvature.hpp"
#include "einsolv/lie_algebra.hpp"

#include <vector>

namespace einsolv {

/// Form used on a: kappa * trace(S_A S_A') (default) or the audit variant
/// kappa * trace(S_A) trace(S_A').
enum class AbelianMetricForm { trace_of_product, product_of_traces };

struct AbelianExtensionSpec {
  LieAlgebra n;
  InnerProduct metric;                // nilsoliton metric on n
  std::vector<Matrix> a_derivations;  // commuting, metric-symmetric derivations
  AbelianMetricForm form = AbelianMetricForm::trace_of_product;
};

struct ExtensionResult {
  ReductiveSplit assembled;
  std::vector<double> betas;
  std::vector<double> alphas;
  double einstein_constant = 0.0;  // of the assembled metric
  double target_constant = 0.0;    // c the construction aimed for
  double deviation = 0.0;
  RicciReport ricci;
};

/// a (x) n with a acting by the given derivations, a orthogonal to n and
/// <A, A'> = trace(S_A S_A') / |c|. Throws PreconditionError on a spec
/// violation and ConstructionError when the result is not Einstein to 1e-6.
ExtensionResult extend_abelian(const AbelianExtensionSpec& spec);

/// Reference form on each simple ideal: half the Killing form (default) or
/// the Killing form itself (audit variant).
enum class ReferenceForm { half_killing, killing };

struct SemisimpleExtensionSpec {
  LieAlgebra g1;                       // semisimple
  std::vector<int> k1;                 // Cartan split of g1
  std::vector<int> p1;
  std::vector<std::vector<int>> ideals;  // simple ideals, as g1 index sets
  LieAlgebra s2;                       // solvable, standard decomposition a2 + n2
  std::vector<int> a2;
  std::vector<int> n2;
  InnerProduct g2;                     // Einstein metric on s2
  std::vector<Matrix> rho;             // one derivation of s2 per g1 basis element
  std::vector<Matrix> isotropy2;       // optional skew derivations of s2 added to k
  ReferenceForm reference = ReferenceForm::half_killing;
};

/// Assembles q = p1 + a2 + n2 with metric alpha_i F_i on p1 cap h_i and g2 on s2,
/// alpha_i = (-1 - beta_i)/c, and verifies the Einstein condition.
ExtensionResult extend_semisimple(const SemisimpleExtensionSpec& spec);

struct ModificationResult {
  LieAlgebra algebra;           // r'
  int skew_dim = 0;             // dim Der_skew(r, h)
  int defect_dim = 0;           // degeneracy of the Killing form on Der_skew
  bool complementary = true;    // defect_dim == 0
  bool unchanged = false;       // r' equals r to 1e-10
  double closure_residual = 0.0;
  double max_change = 0.0;      // largest structure-constant change
};

/// Killing-orthogonal complement of Der_skew(r, h) in Der_skew(r, h) (x) r,
/// expressed in the basis e_i + sigma(e_i). The metric carries over to r'
/// unchanged along this basis.
ModificationResult standard_modification(const LieAlgebra& r, const InnerProduct& metric);

}  // namespace einsolv

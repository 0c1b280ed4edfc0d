#include "einsolv/soliton.hpp"

#include "einsolv/curvature.hpp"
#include "einsolv/errors.hpp"
#include "einsolv/kernels.hpp"
#include "einsolv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

namespace einsolv {

namespace {

SolitonFit fit(const Matrix& ric_onb, const SymmetricRoots& roots, const DerivationBasis& der) {
  const int n = static_cast<int>(ric_onb.rows());
  SolitonFit out;
  out.d = Matrix::Zero(n, n);
  const double norm = ric_onb.norm();
  if (norm == 0.0) return out;

  Matrix cols(n * n, der.size() + 1);
  cols.col(0) = vec(Matrix::Identity(n, n));
  for (int k = 0; k < der.size(); ++k) cols.col(k + 1) = vec(roots.sqrt * der.matrices[k] * roots.inv_sqrt);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(1e-12);
  cod.compute(cols);
  const Vector x = cod.solve(vec(ric_onb));
  const Vector r = vec(ric_onb) - cols * x;
  out.residual = r.norm() / norm;
  Matrix d_onb = unvec(cols.rightCols(der.size()) * x.tail(der.size()), n, n);
  out.c = x(0);
  out.d = roots.inv_sqrt * d_onb * roots.sqrt;
  return out;
}

struct FlowState {
  StructureTensor c;
  Matrix frame;
  DerivationBasis der;
  RicciReport ric;
  SolitonFit fit;
};

void evaluate(FlowState& s, const std::vector<std::string>& names, const InnerProduct& unit) {
  s.ric = ricci_operator(ReductiveSplit::group(LieAlgebra::from_tensor(names, s.c), unit));
  const int n = s.c.dim();
  s.fit = fit(s.ric.onb_operator, {Matrix::Identity(n, n), Matrix::Identity(n, n)}, s.der);
}

// Frobenius-orthonormal basis of the span of a matrix family.
std::vector<Matrix> orthonormalize(const std::vector<Matrix>& family) {
  if (family.empty()) return {};
  const int n = static_cast<int>(family[0].rows());
  Matrix cols(n * n, family.size());
  for (std::size_t i = 0; i < family.size(); ++i) cols.col(i) = vec(family[i]);
  Eigen::HouseholderQR<Matrix> qr(cols);
  const Matrix q = qr.householderQ() * Matrix::Identity(n * n, cols.cols());
  std::vector<Matrix> out;
  for (int i = 0; i < q.cols(); ++i) out.push_back(unvec(q.col(i), n, n));
  return out;
}

// Move to an orthonormal frame of the metric g (given in the current frame).
FlowState advance(const FlowState& s, const Matrix& g) {
  const SymmetricRoots r = symmetric_roots(g);
  FlowState next;
  next.c = kernels::transform(s.c, r.sqrt, r.inv_sqrt);
  const double norm = next.c.norm();
  if (norm > 0.0)
    for (std::size_t i = 0; i < next.c.size(); ++i) next.c.data()[i] /= norm;
  next.frame = s.frame * r.inv_sqrt;
  std::vector<Matrix> moved;
  for (const auto& d : s.der.matrices) moved.push_back(r.sqrt * d * r.inv_sqrt);
  next.der.algebra_dim = s.der.algebra_dim;
  next.der.matrices = orthonormalize(moved);
  return next;
}

// The metric making `frame` orthonormal, at unit determinant, when it is
// still representable in double precision.
std::optional<Matrix> representable_metric(const Matrix& frame) {
  Eigen::JacobiSVD<Matrix> svd(frame, Eigen::ComputeFullU);
  const Vector s = svd.singularValues();
  if (!(s(s.size() - 1) > 0.0) || s(0) / s(s.size() - 1) > 1e6) return std::nullopt;
  const double log_det = -2.0 * s.array().log().sum();
  const Vector d = s.array().pow(-2.0) * std::exp(-log_det / static_cast<double>(s.size()));
  Matrix g = svd.matrixU() * d.asDiagonal() * svd.matrixU().transpose();
  return Matrix(0.5 * (g + g.transpose()));
}

Matrix unit_determinant(const Matrix& g) {
  const double det = g.determinant();
  return g / std::pow(det, 1.0 / static_cast<double>(g.rows()));
}

}  // namespace

SolitonFit nilsoliton_residual(const LieAlgebra& n, const InnerProduct& metric) {
  return nilsoliton_residual(n, metric, derivation_basis(n));
}

SolitonFit nilsoliton_residual(const LieAlgebra& n, const InnerProduct& metric, const DerivationBasis& der) {
  if (metric.dim() != n.dim()) throw InputError("nilsoliton_residual: metric dimension mismatch");
  const ReductiveSplit split = ReductiveSplit::group(n, metric);
  const RicciReport ric = ricci_operator(split);
  return fit(ric.onb_operator, symmetric_roots(metric.matrix()), der);
}

NormalizedDerivation einstein_derivation_normalized(const PreEinsteinDerivation& phi) {
  if (!phi.real_spectrum) throw PreconditionError("not an Einstein-derivation candidate: spectrum is not real");
  std::vector<Rational> values;
  for (const auto& s : phi.snapped) {
    if (s.value <= 0) throw PreconditionError("not an Einstein-derivation candidate: eigenvalue " + to_string(s.value));
    values.push_back(s.value);
  }
  NormalizedDerivation out;
  IntegerScaling sc = integer_scaling(values);
  out.lambda = sc.lambda;
  out.integers = std::move(sc.integers);
  out.scale = to_double(out.lambda);
  out.matrix = out.scale * phi.matrix;
  return out;
}

NormalizedDerivation einstein_derivation_normalized(const Matrix& d) {
  PreEinsteinDerivation phi;
  phi.matrix = d;
  const SpectralReport spec = spectral_report(d);
  phi.real_spectrum = spec.real_spectrum;
  phi.semisimple = spec.semisimple;
  phi.eigenvalues = real_eigenvalues(d);
  // Rescale so the smallest eigenvalue is 1 before snapping; an integer
  // spectrum with large entries would otherwise fall outside the
  // denominator cap.
  double smallest = 0.0;
  if (!phi.eigenvalues.empty()) smallest = *std::min_element(phi.eigenvalues.begin(), phi.eigenvalues.end());
  if (!(smallest > 0.0)) {
    std::ostringstream os;
    os << "not an Einstein-derivation candidate: eigenvalue " << smallest;
    throw PreconditionError(os.str());
  }
  for (double v : phi.eigenvalues) phi.snapped.push_back(snap_rational(v / smallest, 64));
  NormalizedDerivation out = einstein_derivation_normalized(phi);
  out.scale /= smallest;
  out.matrix = out.scale * d;
  return out;
}

InnerProduct random_metric(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = normal(rng);
  Matrix g = m * m.transpose() + 0.5 * Matrix::Identity(dim, dim);
  return InnerProduct(unit_determinant(0.5 * (g + g.transpose())));
}

FlowReport nilsoliton_flow(const LieAlgebra& n, const InnerProduct& init, const FlowParams& params) {
  if (init.dim() != n.dim()) throw InputError("nilsoliton_flow: metric dimension mismatch");
  const int dim = n.dim();
  const Matrix identity = Matrix::Identity(dim, dim);
  const InnerProduct unit = InnerProduct::identity(dim);
  const SymmetricRoots roots = symmetric_roots(unit_determinant(init.matrix()));

  // Everything below lives in an orthonormal frame of the current metric:
  // `c` is the bracket in that frame, `frame` holds the frame vectors in the
  // original basis and `der` spans the derivations of `c`.
  FlowState state;
  state.c = kernels::transform(n.tensor(), roots.sqrt, roots.inv_sqrt);
  state.frame = roots.inv_sqrt;
  state.der = derivation_basis(LieAlgebra::from_tensor(n.basis_names(), state.c));
  evaluate(state, n.basis_names(), unit);

  FlowReport report;
  report.seed = params.seed;
  report.final_metric = InnerProduct(unit_determinant(init.matrix()));
  report.residual_history.push_back(state.fit.residual);
  double step = params.step;
  int it = 0;
  while (it < params.max_iter && state.fit.residual >= params.tol) {
    const Matrix& ric = state.ric.onb_operator;
    // Step measured in units of the current curvature scale, so the
    // normalization cannot stall the flow as Ric shrinks.
    const double curv = std::max(operator_norm(ric), 1e-300);
    Matrix g = identity - 2.0 * (step / curv) * (ric - (ric.trace() / dim) * identity);
    g = 0.5 * (g + g.transpose());
    if (min_eigenvalue(g) <= 0.0) {
      step *= 0.5;
      if (step < 1e-15) {
        report.stagnated = true;
        break;
      }
      continue;
    }
    FlowState candidate = advance(state, unit_determinant(g));
    evaluate(candidate, n.basis_names(), unit);
    if (it >= params.burn_in && candidate.fit.residual > state.fit.residual) {
      step *= 0.5;
      if (step < 1e-15) {
        report.stagnated = true;
        break;
      }
      continue;
    }
    state = std::move(candidate);
    step = std::min(step * params.growth, std::max(params.max_step, params.step));
    ++it;
    if (auto g_orig = representable_metric(state.frame)) report.final_metric = InnerProduct(*g_orig);
    report.residual_history.push_back(state.fit.residual);
  }
  report.iterations = it;
  report.final_step = step;
  report.final_frame = state.frame;
  report.final_bracket = LieAlgebra::from_tensor(n.basis_names(), state.c);
  report.final_ricci = state.ric.onb_operator;
  report.converged = state.fit.residual < params.tol;
  report.best_residual = *std::min_element(report.residual_history.begin(), report.residual_history.end());
  if (!report.converged) {
    report.note = report.stagnated ? "step underflow before convergence; stagnation is not a non-existence certificate"
                                    : "iteration limit reached; not a non-existence certificate";
  }
  return report;
}

std::vector<FlowReport> flow_runs(const LieAlgebra& n, std::span<const std::uint64_t> seeds, const FlowParams& params) {
  const int runs = static_cast<int>(seeds.size());
  std::vector<FlowReport> out(runs);
  std::vector<std::string> errors(runs);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < runs; ++r) {
    try {
      FlowParams p = params;
      p.seed = seeds[r];
      out[r] = nilsoliton_flow(n, random_metric(n.dim(), seeds[r]), p);
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw NumericalError("flow run failed: " + e);
  return out;
}

std::vector<FlowReport> serial_flow_runs(const LieAlgebra& n, std::span<const std::uint64_t> seeds,
                                         const FlowParams& params) {
  std::vector<FlowReport> out;
  for (auto s : seeds) {
    FlowParams p = params;
    p.seed = s;
    out.push_back(nilsoliton_flow(n, random_metric(n.dim(), s), p));
  }
  return out;
}

}  // namespace einsolv

#include "einsolv/derivations.hpp"

#include "einsolv/errors.hpp"
#include "einsolv/kernels.hpp"
#include "einsolv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace einsolv {

namespace {

DerivationBasis from_nullspace(const Matrix& system, int n) {
  DerivationBasis out;
  out.algebra_dim = n;
  const Matrix ns = nullspace(system);
  for (int c = 0; c < ns.cols(); ++c) out.matrices.push_back(unvec(ns.col(c), n, n));
  return out;
}

// Leibniz rows scaled to unit norm so that appended constraint blocks are on
// a comparable scale.
Matrix equilibrated_leibniz(const LieAlgebra& algebra) {
  Matrix sys = kernels::leibniz_system(algebra.tensor());
  for (Eigen::Index r = 0; r < sys.rows(); ++r) {
    const double s = sys.row(r).norm();
    if (s > 0.0) sys.row(r) /= s;
  }
  return sys;
}

Matrix scaled_leibniz(const LieAlgebra& algebra) {
  Matrix sys = equilibrated_leibniz(algebra);
  const double s = sys.norm();
  if (s > 0.0) sys /= s;
  return sys;
}

Matrix stack(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

// Jordan-Chevalley semisimple part by Newton on p(x) = prod (x - lambda)
Matrix semisimple_part(const Matrix& m, const std::vector<double>& roots) {
  const int n = static_cast<int>(m.rows());
  const Matrix id = Matrix::Identity(n, n);
  Matrix s = m;
  for (int it = 0; it < 30; ++it) {
    Matrix p = id, dp = Matrix::Zero(n, n);
    for (double r : roots) {
      dp = dp * (s - r * id) + p;
      p = p * (s - r * id);
    }
    if (p.norm() <= 1e-14 * std::max(1.0, m.norm())) break;
    s -= dp.partialPivLu().solve(p);
  }
  return s;
}

}  // namespace

DerivationBasis derivation_basis(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  if (algebra.tensor().norm() == 0.0) return from_nullspace(Matrix::Zero(1, n * n), n);
  return from_nullspace(equilibrated_leibniz(algebra), n);
}

DerivationBasis skew_derivations(const LieAlgebra& algebra, const InnerProduct& metric) {
  const int n = algebra.dim();
  if (metric.dim() != n) throw InputError("skew_derivations: metric dimension mismatch");
  const Matrix& g = metric.matrix();
  // (g D + D^T g)(a, b) for a <= b
  Matrix skew = Matrix::Zero(n * (n + 1) / 2, n * n);
  int row = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b, ++row) {
      for (int m = 0; m < n; ++m) {
        skew(row, b * n + m) += g(a, m);
        skew(row, a * n + m) += g(m, b);
      }
    }
  }
  skew /= skew.norm();
  if (algebra.tensor().norm() == 0.0) return from_nullspace(skew, n);
  return from_nullspace(stack(scaled_leibniz(algebra), skew), n);
}

DerivationBasis commuting_derivations(const LieAlgebra& algebra, std::span<const Matrix> commutants) {
  const int n = algebra.dim();
  for (const auto& x : commutants)
    if (x.rows() != n || x.cols() != n) throw InputError("commuting_derivations: commutant has wrong size");
  // solve inside Der: sum_i t_i [X, D_i] = 0 for every X
  const DerivationBasis der = derivation_basis(algebra);
  const int m = der.size();
  if (m == 0 || commutants.empty()) return der;
  Matrix sys(static_cast<Eigen::Index>(n) * n * commutants.size(), m);
  for (int i = 0; i < m; ++i) {
    const Matrix& d = der.matrices[i];
    for (std::size_t c = 0; c < commutants.size(); ++c)
      sys.col(i).segment(static_cast<Eigen::Index>(c) * n * n, n * n) = vec(commutants[c] * d - d * commutants[c]);
  }
  const Matrix coeffs = nullspace(sys, 1e-8);
  DerivationBasis out;
  out.algebra_dim = n;
  for (int c = 0; c < coeffs.cols(); ++c) {
    Matrix d = Matrix::Zero(n, n);
    for (int i = 0; i < m; ++i) d += coeffs(i, c) * der.matrices[i];
    out.matrices.push_back(d);
  }
  return out;
}

double span_residual(const DerivationBasis& basis, const Matrix& m) {
  Matrix r = m;
  // The basis is Frobenius-orthonormal, so projection is a sum of inner products.
  for (const auto& a : basis.matrices) r -= (a.cwiseProduct(m)).sum() * a;
  return r.norm();
}

PreEinsteinDerivation pre_einstein(const LieAlgebra& algebra) { return pre_einstein(derivation_basis(algebra)); }

PreEinsteinDerivation pre_einstein(const DerivationBasis& der) {
  const int n = der.algebra_dim;
  const int m = der.size();
  PreEinsteinDerivation out;
  if (m == 0) throw NumericalError("no pre-Einstein derivation found at tolerance (empty derivation algebra)");
  const Matrix gram = kernels::trace_gram(der.matrices);
  Vector rhs(m);
  for (int k = 0; k < m; ++k) rhs(k) = der.matrices[k].trace();

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(1e-12);
  cod.compute(gram);
  const Vector coef = cod.solve(rhs);
  out.matrix = Matrix::Zero(n, n);
  for (int k = 0; k < m; ++k) out.matrix += coef(k) * der.matrices[k];

  const auto residuals = [&](const Matrix& phi) {
    double def = 0.0;
    for (int k = 0; k < m; ++k) def = std::max(def, std::fabs((phi * der.matrices[k]).trace() - der.matrices[k].trace()));
    return std::pair{def, std::fabs((phi * phi).trace() - phi.trace())};
  };
  std::tie(out.defining_residual, out.trace_residual) = residuals(out.matrix);

  // strip a nilpotent part picked up from the radical of the trace form
  std::vector<double> roots;
  bool snappable = true;
  for (double v : real_eigenvalues(out.matrix)) {
    const Snapped q = snap_rational(v, 64);
    snappable = snappable && q.error < 1e-6;
    const double r = to_double(q.value);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  if (snappable && !spectral_report(out.matrix).semisimple) {
    const Matrix s = semisimple_part(out.matrix, roots);
    const auto [def, tr] = residuals(s);
    if (s.allFinite() && span_residual(der, s) < 1e-8 * std::max(1.0, s.norm()) && def <= 1e-8 && tr <= 1e-8) {
      out.matrix = s;
      out.defining_residual = def;
      out.trace_residual = tr;
    }
  }
  if (out.defining_residual > 1e-8 || out.trace_residual > 1e-8) {
    std::ostringstream os;
    os << "no pre-Einstein derivation found at tolerance (residual " << std::max(out.defining_residual, out.trace_residual)
       << ")";
    throw NumericalError(os.str());
  }

  const SpectralReport spec = spectral_report(out.matrix);
  out.semisimple = spec.semisimple;
  out.real_spectrum = spec.real_spectrum;
  out.eigenvalues = real_eigenvalues(out.matrix);
  for (double v : out.eigenvalues) {
    out.snapped.push_back(snap_rational(v, 64));
    out.snap_error = std::max(out.snap_error, out.snapped.back().error);
  }
  return out;
}

}  // namespace einsolv

#include "einsolv/extension.hpp"

#include "einsolv/derivations.hpp"
#include "einsolv/errors.hpp"
#include "einsolv/linalg.hpp"
#include "einsolv/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace einsolv {

namespace {

std::string spectrum_text(const Matrix& onb) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(onb);
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < es.eigenvalues().size(); ++i) os << (i ? ", " : "") << es.eigenvalues()(i);
  os << "]";
  return os.str();
}

void finish(ExtensionResult& r, double target) {
  r.ricci = ricci_operator(r.assembled);
  r.einstein_constant = r.ricci.einstein_constant;
  r.target_constant = target;
  r.deviation = r.ricci.deviation;
  if (r.deviation > 1e-6) {
    std::ostringstream os;
    os << "extension is not Einstein: deviation " << r.deviation << ", Ricci spectrum " << spectrum_text(r.ricci.onb_operator);
    throw ConstructionError(os.str());
  }
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

double einstein_constant_of(const LieAlgebra& s, const InnerProduct& g, double& deviation) {
  const RicciReport r = ricci_operator(ReductiveSplit::group(s, g));
  deviation = r.deviation;
  return r.einstein_constant;
}

Matrix sub_block(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

}  // namespace

ExtensionResult extend_abelian(const AbelianExtensionSpec& spec) {
  const int n = spec.n.dim();
  if (spec.metric.dim() != n) throw InputError("extend_abelian: metric dimension mismatch");
  if (spec.a_derivations.empty()) throw InputError("extend_abelian: a must be nonzero");
  const Matrix& g = spec.metric.matrix();
  const Matrix g_inv = g.inverse();

  const SolitonFit fit = nilsoliton_residual(spec.n, spec.metric);
  if (fit.residual > 1e-8) {
    std::ostringstream os;
    os << "extend_abelian: metric is not a nilsoliton (residual " << fit.residual << ")";
    throw PreconditionError(os.str());
  }
  const double c = fit.c;
  if (!(c < -1e-12)) throw PreconditionError("extend_abelian: nilsoliton constant must be negative");

  double scale = 1.0;
  for (const auto& a : spec.a_derivations) {
    if (a.rows() != n || a.cols() != n) throw InputError("extend_abelian: derivation has wrong size");
    scale = std::max(scale, a.norm());
  }
  for (std::size_t i = 0; i < spec.a_derivations.size(); ++i) {
    const Matrix& a = spec.a_derivations[i];
    if (leibniz_residual(spec.n, a) > 1e-10 * scale * std::max(1.0, spec.n.tensor().norm())) {
      throw PreconditionError("extend_abelian: a matrix is not a derivation");
    }
    if ((g * a - a.transpose() * g).cwiseAbs().maxCoeff() > 1e-10 * scale * g.norm()) {
      throw PreconditionError("extend_abelian: derivation is not symmetric for the nilsoliton metric");
    }
    for (std::size_t j = i + 1; j < spec.a_derivations.size(); ++j) {
      const Matrix& b = spec.a_derivations[j];
      if ((a * b - b * a).cwiseAbs().maxCoeff() > 1e-10 * scale * scale) {
        throw PreconditionError("extend_abelian: derivations do not commute");
      }
    }
  }
  // The fitted D (the Einstein derivation of this metric) must lie in span(a).
  {
    Matrix cols(n * n, spec.a_derivations.size());
    for (std::size_t k = 0; k < spec.a_derivations.size(); ++k) cols.col(k) = vec(spec.a_derivations[k]);
    const Vector target = vec(fit.d);
    const Vector x = cols.completeOrthogonalDecomposition().solve(target);
    const double res = (cols * x - target).norm() / std::max(1e-300, target.norm());
    if (res > 1e-9) {
      std::ostringstream os;
      os << "extend_abelian: Einstein derivation is not in span(a) (residual " << res << ")";
      throw PreconditionError(os.str());
    }
  }

  const int p = static_cast<int>(spec.a_derivations.size());
  const double kappa = 1.0 / std::fabs(c);
  std::vector<Matrix> sym;
  for (const auto& a : spec.a_derivations) sym.push_back(0.5 * (a + g_inv * a.transpose() * g));
  Matrix ga(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      ga(i, j) = spec.form == AbelianMetricForm::trace_of_product ? kappa * (sym[i] * sym[j]).trace()
                                                                   : kappa * sym[i].trace() * sym[j].trace();
    }
  }

  std::vector<std::string> names;
  for (int i = 0; i < p; ++i) names.push_back(p == 1 ? "A" : "A" + std::to_string(i + 1));
  LieAlgebra outer = LieAlgebra::from_tensor(names, StructureTensor(p));
  LieAlgebra s = semidirect(spec.a_derivations, outer, spec.n, 1e-10);

  ExtensionResult r;
  r.assembled = ReductiveSplit::group(std::move(s), InnerProduct(block_diagonal(ga, g)));
  finish(r, c);
  return r;
}

ExtensionResult extend_semisimple(const SemisimpleExtensionSpec& spec) {
  const int d1 = spec.g1.dim();
  const int d2 = spec.s2.dim();
  if (static_cast<int>(spec.rho.size()) != d1) throw InputError("extend_semisimple: one rho matrix per g1 basis element");
  if (spec.g2.dim() != d2) throw InputError("extend_semisimple: g2 dimension mismatch");
  for (const auto& m : spec.rho)
    if (m.rows() != d2 || m.cols() != d2) throw InputError("extend_semisimple: rho matrix has wrong size");
  {
    std::vector<int> seen(d1, 0);
    for (int i : spec.k1) ++seen.at(i);
    for (int i : spec.p1) ++seen.at(i);
    if (!std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }))
      throw InputError("extend_semisimple: k1 and p1 must partition g1");
    std::fill(seen.begin(), seen.end(), 0);
    for (const auto& h : spec.ideals)
      for (int i : h) ++seen.at(i);
    if (!std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }))
      throw InputError("extend_semisimple: ideals must partition g1");
  }
  const Matrix& g2 = spec.g2.matrix();

  double dev2 = 0.0;
  const double c = einstein_constant_of(spec.s2, spec.g2, dev2);
  if (dev2 > 1e-8) {
    std::ostringstream os;
    os << "extend_semisimple: g2 is not Einstein (deviation " << dev2 << ")";
    throw PreconditionError(os.str());
  }
  if (!(c < 0.0)) throw PreconditionError("extend_semisimple: Einstein constant of s2 must be negative");

  double scale = 1.0;
  for (const auto& m : spec.rho) scale = std::max(scale, m.norm());
  const double tol = 1e-9 * scale * g2.norm();
  for (int x : spec.p1) {
    if ((g2 * spec.rho[x] - spec.rho[x].transpose() * g2).cwiseAbs().maxCoeff() > tol)
      throw PreconditionError("extend_semisimple: rho(" + spec.g1.basis_names()[x] + ") is not symmetric");
  }
  for (int x : spec.k1) {
    if ((g2 * spec.rho[x] + spec.rho[x].transpose() * g2).cwiseAbs().maxCoeff() > tol)
      throw PreconditionError("extend_semisimple: rho(" + spec.g1.basis_names()[x] + ") is not skew-symmetric");
  }
  for (int x = 0; x < d1; ++x)
    for (int a : spec.a2)
      if (spec.rho[x].col(a).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw PreconditionError("extend_semisimple: rho(g1) does not commute with a2");
  for (const auto& l : spec.isotropy2)
    if ((g2 * l + l.transpose() * g2).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, l.norm()) * g2.norm())
      throw PreconditionError("extend_semisimple: isotropy element is not skew-symmetric");

  const Matrix killing = killing_form(spec.g1);
  const double ref_factor = spec.reference == ReferenceForm::half_killing ? 0.5 : 1.0;

  ExtensionResult r;
  std::vector<double> alpha_of(d1, 0.0);
  for (const auto& h : spec.ideals) {
    std::vector<int> ph;
    for (int x : h)
      if (std::find(spec.p1.begin(), spec.p1.end(), x) != spec.p1.end()) ph.push_back(x);
    if (ph.empty()) throw PreconditionError("extend_semisimple: simple ideal with trivial p-part (compact factor)");
    const int m = static_cast<int>(ph.size());
    Matrix t(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Matrix ri = sub_block(spec.rho[ph[i]], spec.n2, spec.n2);
        const Matrix rj = sub_block(spec.rho[ph[j]], spec.n2, spec.n2);
        t(i, j) = (ri * rj).trace();
      }
    }
    const Matrix f = ref_factor * sub_block(killing, ph, ph);
    const double ff = f.squaredNorm();
    if (ff == 0.0) throw PreconditionError("extend_semisimple: Killing form vanishes on an ideal");
    const double beta = (t.cwiseProduct(f)).sum() / ff;
    const double fit_res = (t - beta * f).norm() / std::max(t.norm(), std::sqrt(ff));
    if (fit_res > 1e-8) {
      std::ostringstream os;
      os << "T not proportional to Killing form on ideal " << r.betas.size() << " (residual " << fit_res << ")";
      throw PreconditionError(os.str());
    }
    const double alpha = (-1.0 - beta) / c;
    r.betas.push_back(beta);
    r.alphas.push_back(alpha);
    for (int x : ph) alpha_of[x] = alpha;
  }

  // outer = g1 (+) span(isotropy2); action rho (+) isotropy2
  LieAlgebra outer = spec.g1;
  std::vector<Matrix> action = spec.rho;
  if (!spec.isotropy2.empty()) {
    LieAlgebra l2 = matrix_algebra(spec.isotropy2);
    std::vector<std::string> names;
    for (int i = 0; i < l2.dim(); ++i) names.push_back("l" + std::to_string(i + 1));
    outer = direct_sum(spec.g1, LieAlgebra::from_tensor(names, l2.tensor()));
    action.insert(action.end(), spec.isotropy2.begin(), spec.isotropy2.end());
  }
  const int l = static_cast<int>(spec.isotropy2.size());
  LieAlgebra full = semidirect(action, outer, spec.s2, 1e-10);

  ReductiveSplit split;
  split.k_indices = spec.k1;
  for (int i = 0; i < l; ++i) split.k_indices.push_back(d1 + i);
  split.q_indices = spec.p1;
  for (int i = 0; i < d2; ++i) split.q_indices.push_back(d1 + l + i);
  const int p = static_cast<int>(spec.p1.size());
  Matrix metric = Matrix::Zero(p + d2, p + d2);
  std::vector<int> pos(d1, -1);
  for (int i = 0; i < p; ++i) pos[spec.p1[i]] = i;
  for (const auto& h : spec.ideals)
    for (int x : h)
      for (int y : h)
        if (pos[x] >= 0 && pos[y] >= 0) metric(pos[x], pos[y]) = alpha_of[x] * ref_factor * killing(x, y);
  metric.bottomRightCorner(d2, d2) = g2;
  split.algebra = std::move(full);
  split.metric = InnerProduct(metric);
  check_split(split);
  r.assembled = std::move(split);
  finish(r, c);
  return r;
}

ModificationResult standard_modification(const LieAlgebra& r, const InnerProduct& metric) {
  const int n = r.dim();
  if (metric.dim() != n) throw InputError("standard_modification: metric dimension mismatch");
  ModificationResult out;
  const DerivationBasis skew = skew_derivations(r, metric);
  out.skew_dim = skew.size();
  if (skew.size() == 0) {
    out.algebra = r;
    out.unchanged = true;
    return out;
  }
  const int d = skew.size();
  const LieAlgebra outer = matrix_algebra(skew.matrices);
  const LieAlgebra m = semidirect(skew.matrices, outer, r, 1e-10);
  const Matrix b = killing_form(m);
  const Matrix bdd = b.topLeftCorner(d, d);
  const Matrix bdr = b.topRightCorner(d, n);
  const int rank = numerical_rank(bdd, 1e-10);
  out.defect_dim = d - rank;
  out.complementary = out.defect_dim == 0;
  if (!out.complementary) {
    out.algebra = r;
    return out;
  }
  const Matrix sigma = -bdd.ldlt().solve(bdr);  // d x n

  // Basis of r': columns (sigma e_i ; e_i) in m coordinates.
  Matrix basis(d + n, n);
  basis.topRows(d) = sigma;
  basis.bottomRows(n) = Matrix::Identity(n, n);
  std::vector<Matrix> ads;
  for (int i = 0; i < n; ++i) ads.push_back(ad_matrix(m, basis.col(i)));

  StructureTensor t(n);
  double closure = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector v = ads[i] * basis.col(j);
      const Vector rpart = v.tail(n);
      closure = std::max(closure, (v.head(d) - sigma * rpart).cwiseAbs().maxCoeff());
      for (int k = 0; k < n; ++k) {
        t(i, j, k) = rpart(k);
        t(j, i, k) = -rpart(k);
      }
    }
  }
  out.closure_residual = closure;
  if (closure > 1e-9 * std::max(1.0, r.tensor().norm())) {
    std::ostringstream os;
    os << "standard_modification: Killing-orthogonal complement is not a subalgebra (residual " << closure << ")";
    throw ConstructionError(os.str());
  }
  out.algebra = LieAlgebra::from_tensor(r.basis_names(), std::move(t));
  out.max_change = out.algebra.tensor().max_abs_diff(r.tensor());
  out.unchanged = out.max_change <= 1e-10;
  if (out.unchanged && r.exact()) out.algebra = r;
  return out;
}

}  // namespace einsolv

#include "einsolv/curvature.hpp"

#include "einsolv/errors.hpp"
#include "einsolv/kernels.hpp"
#include "einsolv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace einsolv {

namespace {

// The algebra rewritten in the frame where q carries an orthonormal basis
// (via g^{-1/2}) and k keeps its basis vectors.
struct Frame {
  StructureTensor c;
  Matrix p;      // g^{-1/2}
  Matrix p_inv;  // g^{1/2}
};

Frame orthonormal_frame(const ReductiveSplit& split) {
  const int n = split.algebra.dim();
  const auto& q = split.q_indices;
  const int m = static_cast<int>(q.size());
  const SymmetricRoots roots = symmetric_roots(split.metric.matrix());
  Matrix t = Matrix::Identity(n, n);
  Matrix t_inv = Matrix::Identity(n, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      t(q[j], q[i]) = roots.inv_sqrt(j, i);
      t_inv(q[j], q[i]) = roots.sqrt(j, i);
    }
  }
  return {kernels::transform(split.algebra.tensor(), t_inv, t), roots.inv_sqrt, roots.sqrt};
}

void check_shape(const ReductiveSplit& split) {
  const int n = split.algebra.dim();
  std::vector<int> seen(n, 0);
  for (int i : split.k_indices) {
    if (i < 0 || i >= n) throw InputError("reductive split: k index out of range");
    ++seen[i];
  }
  for (int i : split.q_indices) {
    if (i < 0 || i >= n) throw InputError("reductive split: q index out of range");
    ++seen[i];
  }
  if (!std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; })) {
    throw InputError("reductive split: k and q must partition the basis");
  }
  if (split.metric.dim() != static_cast<int>(split.q_indices.size())) {
    throw InputError("reductive split: metric size does not match q");
  }
}

// Ordinary traces of ad over the q basis vectors.
Vector ad_traces(const StructureTensor& c, const std::vector<int>& q) {
  Vector tr(static_cast<Eigen::Index>(q.size()));
  for (std::size_t x = 0; x < q.size(); ++x) {
    double s = 0.0;
    for (int k = 0; k < c.dim(); ++k) s += c(q[x], k, k);
    tr(static_cast<Eigen::Index>(x)) = s;
  }
  return tr;
}

}  // namespace

ReductiveSplit ReductiveSplit::group(LieAlgebra algebra, InnerProduct metric) {
  ReductiveSplit s;
  for (int i = 0; i < algebra.dim(); ++i) s.q_indices.push_back(i);
  s.algebra = std::move(algebra);
  s.metric = std::move(metric);
  return s;
}

void check_split(const ReductiveSplit& split) {
  check_shape(split);
  const auto& alg = split.algebra;
  const auto& c = alg.tensor();
  const int n = alg.dim();
  std::vector<bool> in_k(n, false);
  for (int i : split.k_indices) in_k[i] = true;
  const double tol = 1e-12 * std::max(1.0, c.norm());
  if (alg.exact()) {
    for (const auto& e : alg.entries()) {
      const bool ki = in_k[e.i], kj = in_k[e.j];
      if (ki && kj && !in_k[e.k]) throw PreconditionError("reductive split: k is not a subalgebra");
      if (ki != kj && in_k[e.k]) throw PreconditionError("reductive split: [k, q] is not contained in q");
    }
  } else {
    for (int a : split.k_indices) {
      for (int b = 0; b < n; ++b) {
        for (int k = 0; k < n; ++k) {
          if (std::fabs(c(a, b, k)) <= tol) continue;
          if (in_k[b] && !in_k[k]) throw PreconditionError("reductive split: k is not a subalgebra");
          if (!in_k[b] && in_k[k]) throw PreconditionError("reductive split: [k, q] is not contained in q");
        }
      }
    }
  }
  const auto& q = split.q_indices;
  const int m = static_cast<int>(q.size());
  const Matrix& g = split.metric.matrix();
  for (int a : split.k_indices) {
    Matrix block(m, m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) block(x, y) = c(a, q[y], q[x]);
    const Matrix r = g * block + block.transpose() * g;
    const double scale = std::max(1.0, g.norm() * block.norm());
    if (r.cwiseAbs().maxCoeff() > 1e-10 * scale) {
      std::ostringstream os;
      os << "reductive split: metric is not ad(" << alg.basis_names()[a] << ")-invariant (residual "
         << r.cwiseAbs().maxCoeff() << ")";
      throw PreconditionError(os.str());
    }
  }
}

Vector mean_curvature_vector(const ReductiveSplit& split) {
  check_shape(split);
  const Vector tr = ad_traces(split.algebra.tensor(), split.q_indices);
  return split.metric.matrix().ldlt().solve(tr);
}

Matrix moment_operator(const ReductiveSplit& split) {
  check_shape(split);
  const Frame f = orthonormal_frame(split);
  const Matrix m = kernels::moment_contraction(f.c, split.q_indices);
  return f.p * m * f.p_inv;
}

RicciReport ricci_operator(const ReductiveSplit& split) {
  check_shape(split);
  const auto& q = split.q_indices;
  const int m = static_cast<int>(q.size());
  const Frame f = orthonormal_frame(split);

  const Matrix moment = kernels::moment_contraction(f.c, q);

  // Killing form of the whole algebra on q, in the orthonormal frame.
  std::vector<Matrix> ads;
  ads.reserve(m);
  for (int x = 0; x < m; ++x) ads.push_back(f.c.ad(q[x]));
  Matrix killing(m, m);
  for (int x = 0; x < m; ++x)
    for (int y = x; y < m; ++y) killing(x, y) = killing(y, x) = (ads[x] * ads[y]).trace();

  // H in the orthonormal frame has coordinates trace(ad X_x); [H, .] projected to q.
  const Vector h = ad_traces(f.c, q);
  Matrix ad_h = Matrix::Zero(m, m);
  for (int x = 0; x < m; ++x) {
    if (h(x) == 0.0) continue;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) ad_h(b, a) += h(x) * f.c(q[x], q[a], q[b]);
  }

  Matrix rc = moment - 0.5 * killing - 0.5 * (ad_h + ad_h.transpose());
  rc = 0.5 * (rc + rc.transpose());

  RicciReport r;
  r.onb_operator = rc;
  r.ricci_operator = f.p * rc * f.p_inv;
  r.ricci_tensor = f.p_inv * rc * f.p_inv;
  r.ricci_tensor = 0.5 * (r.ricci_tensor + r.ricci_tensor.transpose());
  r.scalar_curvature = rc.trace();
  r.einstein_constant = m > 0 ? r.scalar_curvature / m : 0.0;
  const double dev = operator_norm(rc - r.einstein_constant * Matrix::Identity(m, m));
  r.deviation = std::fabs(r.einstein_constant) < 1e-12 ? dev : dev / std::fabs(r.einstein_constant);
  return r;
}

bool einstein_check(const RicciReport& report, double tol) {
  return report.deviation < tol && report.einstein_constant < 0.0;
}

}  // namespace einsolv

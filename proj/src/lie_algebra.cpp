#include "einsolv/lie_algebra.hpp"

#include "einsolv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace einsolv {

namespace {

std::string entry_text(const BracketEntry& e) {
  std::ostringstream os;
  os << "(i=" << e.i << ", j=" << e.j << ", k=" << e.k << ", c=" << to_string(e.c) << ")";
  return os.str();
}

// Dense exact table: t[(i*n + j)*n + k].
std::vector<Rational> exact_table(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  std::vector<Rational> t(static_cast<std::size_t>(n) * n * n);
  for (const auto& e : algebra.entries()) {
    t[(static_cast<std::size_t>(e.i) * n + e.j) * n + e.k] += e.c;
    t[(static_cast<std::size_t>(e.j) * n + e.i) * n + e.k] -= e.c;
  }
  return t;
}

void require_dim(const LieAlgebra& algebra, Eigen::Index size, const char* what) {
  if (size != algebra.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (expected " << algebra.dim() << ", got " << size << ")";
    throw InputError(os.str());
  }
}

double tensor_scale(const StructureTensor& c) { return std::max(1.0, c.norm()); }

// Orthonormal basis (columns) of the span of the given columns.
Matrix column_span(const Matrix& cols) {
  if (cols.cols() == 0 || cols.norm() == 0.0) return Matrix(cols.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > 1e-10 * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Rational row basis of the rows given.
std::vector<std::vector<Rational>> exact_row_basis(const std::vector<std::vector<Rational>>& rows, int n) {
  if (rows.empty()) return {};
  RationalMatrix m(static_cast<int>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = rows[r][c];
  // Row basis = nonzero rows of the echelon form; reuse the null-space routine
  // on the transpose would lose rows, so eliminate directly.
  std::vector<std::vector<Rational>> basis;
  int row = 0;
  for (int col = 0; col < n && row < m.rows(); ++col) {
    int p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (int c = 0; c < n; ++c) std::swap(m(p, c), m(row, c));
    for (int r = row + 1; r < m.rows(); ++r) {
      if (m(r, col) == 0) continue;
      const Rational f = m(r, col) / m(row, col);
      for (int c = col; c < n; ++c) m(r, c) -= f * m(row, c);
    }
    ++row;
  }
  for (int r = 0; r < row; ++r) {
    std::vector<Rational> v(n);
    for (int c = 0; c < n; ++c) v[c] = m(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

// --- LieAlgebra ------------------------------------------------------------

LieAlgebra::LieAlgebra(std::vector<std::string> basis_names, std::vector<BracketEntry> entries)
    : names_(std::move(basis_names)), exact_(true) {
  const int n = dim();
  if (n <= 0) throw InputError("Lie algebra dimension must be positive");
  std::map<std::tuple<int, int, int>, Rational> merged;
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n || e.j >= n || e.k >= n) {
      throw InputError("bracket entry index out of range: " + entry_text(e));
    }
    if (e.i >= e.j) throw InputError("bracket entry requires i < j: " + entry_text(e));
    merged[{e.i, e.j, e.k}] += e.c;
  }
  tensor_ = StructureTensor(n);
  for (const auto& [key, c] : merged) {
    if (c == 0) continue;
    const auto [i, j, k] = key;
    entries_.push_back({i, j, k, c});
    const double v = to_double(c);
    tensor_(i, j, k) = v;
    tensor_(j, i, k) = -v;
  }
}

LieAlgebra LieAlgebra::from_tensor(std::vector<std::string> basis_names, StructureTensor tensor) {
  if (static_cast<int>(basis_names.size()) != tensor.dim()) {
    throw InputError("basis names do not match tensor dimension");
  }
  LieAlgebra a;
  a.names_ = std::move(basis_names);
  a.tensor_ = std::move(tensor);
  a.exact_ = false;
  return a;
}

LieAlgebra LieAlgebra::abelian(int dim) {
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i + 1));
  return LieAlgebra(std::move(names), {});
}

int LieAlgebra::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("no basis element named '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

InnerProduct::InnerProduct(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InputError("metric must be square");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (m_.size() > 0 && symmetry_defect(m_) > 1e-12 * scale) throw PreconditionError("metric is not symmetric");
  m_ = 0.5 * (m_ + m_.transpose());
  if (m_.size() > 0 && min_eigenvalue(m_) <= 0.0) throw PreconditionError("metric is not positive definite");
}

// --- validate / bracket / ad -----------------------------------------------

ValidationReport validate(const LieAlgebra& algebra, double tol) {
  const int n = algebra.dim();
  ValidationReport report;
  report.exact = algebra.exact();
  if (algebra.exact()) {
    const auto t = exact_table(algebra);
    auto at = [&](int i, int j, int k) -> const Rational& { return t[(static_cast<std::size_t>(i) * n + j) * n + k]; };
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int c = b + 1; c < n; ++c) {
          // [[a,b],c] + [[b,c],a] + [[c,a],b]
          std::vector<Rational> r(n);
          bool nonzero = false;
          for (int m = 0; m < n; ++m) {
            const Rational& ab = at(a, b, m);
            const Rational& bc = at(b, c, m);
            const Rational& ca = at(c, a, m);
            if (ab == 0 && bc == 0 && ca == 0) continue;
            for (int k = 0; k < n; ++k) r[k] += ab * at(m, c, k) + bc * at(m, a, k) + ca * at(m, b, k);
          }
          double mx = 0.0;
          for (const auto& v : r) {
            if (v != 0) nonzero = true;
            mx = std::max(mx, std::fabs(to_double(v)));
          }
          if (nonzero) {
            report.pass = false;
            report.max_residual = std::max(report.max_residual, mx);
            report.defects.push_back({a, b, c, std::move(r), mx});
          }
        }
      }
    }
    return report;
  }
  const auto& t = algebra.tensor();
  const double threshold = tol * std::max(1.0, t.norm() * t.norm());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        double mx = 0.0;
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += t(a, b, m) * t(m, c, k) + t(b, c, m) * t(m, a, k) + t(c, a, m) * t(m, b, k);
          mx = std::max(mx, std::fabs(s));
        }
        report.max_residual = std::max(report.max_residual, mx);
        if (mx > threshold) {
          report.pass = false;
          report.defects.push_back({a, b, c, {}, mx});
        }
      }
    }
  }
  return report;
}

Vector bracket(const LieAlgebra& algebra, const Vector& x, const Vector& y) {
  require_dim(algebra, x.size(), "bracket");
  require_dim(algebra, y.size(), "bracket");
  return ad_matrix(algebra, x) * y;
}

std::vector<Rational> bracket(const LieAlgebra& algebra, std::span<const Rational> x, std::span<const Rational> y) {
  require_dim(algebra, static_cast<Eigen::Index>(x.size()), "bracket");
  require_dim(algebra, static_cast<Eigen::Index>(y.size()), "bracket");
  if (!algebra.exact()) throw InputError("exact bracket requires an exact algebra");
  std::vector<Rational> out(algebra.dim());
  for (const auto& e : algebra.entries()) {
    const Rational w = x[e.i] * y[e.j] - x[e.j] * y[e.i];
    if (w != 0) out[e.k] += w * e.c;
  }
  return out;
}

Matrix ad_matrix(const LieAlgebra& algebra, const Vector& x) {
  require_dim(algebra, x.size(), "ad_matrix");
  const int n = algebra.dim();
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (x(i) != 0.0) a += x(i) * algebra.tensor().ad(i);
  return a;
}

RationalMatrix ad_matrix(const LieAlgebra& algebra, std::span<const Rational> x) {
  require_dim(algebra, static_cast<Eigen::Index>(x.size()), "ad_matrix");
  if (!algebra.exact()) throw InputError("exact ad_matrix requires an exact algebra");
  RationalMatrix a(algebra.dim(), algebra.dim());
  for (const auto& e : algebra.entries()) {
    // [x, e_j] picks x_i c and [x, e_i] picks -x_j c.
    if (x[e.i] != 0) a(e.k, e.j) += x[e.i] * e.c;
    if (x[e.j] != 0) a(e.k, e.i) -= x[e.j] * e.c;
  }
  return a;
}

Matrix killing_form(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  std::vector<Matrix> ads;
  ads.reserve(n);
  for (int i = 0; i < n; ++i) ads.push_back(algebra.tensor().ad(i));
  Matrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) b(i, j) = b(j, i) = (ads[i] * ads[j]).trace();
  return b;
}

double leibniz_residual(const LieAlgebra& algebra, const Matrix& d) {
  const int n = algebra.dim();
  if (d.rows() != n || d.cols() != n) throw InputError("derivation matrix has wrong size");
  const auto& c = algebra.tensor();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += d(k, m) * c(i, j, m) - d(m, i) * c(m, j, k) - d(m, j) * c(i, m, k);
        worst = std::max(worst, std::fabs(s));
      }
    }
  }
  return worst;
}

// --- constructions ---------------------------------------------------------

LieAlgebra semidirect(std::span<const Matrix> action, const LieAlgebra& outer, const LieAlgebra& inner, double tol) {
  const int p = outer.dim();
  const int n = inner.dim();
  if (static_cast<int>(action.size()) != p) throw InputError("semidirect: one action matrix per outer basis element");
  double leib = 0.0;
  double scale = 1.0;
  for (const auto& d : action) {
    if (d.rows() != n || d.cols() != n) throw InputError("semidirect: action matrix has wrong size");
    leib = std::max(leib, leibniz_residual(inner, d));
    scale = std::max(scale, d.cwiseAbs().maxCoeff());
  }
  scale *= std::max(1.0, inner.tensor().norm());
  if (leib > tol * scale) {
    std::ostringstream os;
    os << "semidirect: action is not by derivations (max Leibniz residual " << leib << ")";
    throw PreconditionError(os.str());
  }
  double hom = 0.0;
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      Matrix r = action[a] * action[b] - action[b] * action[a];
      for (int k = 0; k < p; ++k) r -= outer.tensor()(a, b, k) * action[k];
      hom = std::max(hom, r.cwiseAbs().maxCoeff());
    }
  }
  if (hom > tol * scale) {
    std::ostringstream os;
    os << "semidirect: action is not a Lie homomorphism (max residual " << hom << ")";
    throw PreconditionError(os.str());
  }
  std::vector<std::string> names = outer.basis_names();
  names.insert(names.end(), inner.basis_names().begin(), inner.basis_names().end());
  StructureTensor t(p + n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int k = 0; k < p; ++k) t(a, b, k) = outer.tensor()(a, b, k);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) t(p + a, p + b, p + k) = inner.tensor()(a, b, k);
  for (int o = 0; o < p; ++o) {
    for (int b = 0; b < n; ++b) {
      for (int k = 0; k < n; ++k) {
        t(o, p + b, p + k) = action[o](k, b);
        t(p + b, o, p + k) = -action[o](k, b);
      }
    }
  }
  return LieAlgebra::from_tensor(std::move(names), std::move(t));
}

LieAlgebra semidirect(std::span<const RationalMatrix> action, const LieAlgebra& outer, const LieAlgebra& inner) {
  const int p = outer.dim();
  const int n = inner.dim();
  if (static_cast<int>(action.size()) != p) throw InputError("semidirect: one action matrix per outer basis element");
  if (!outer.exact() || !inner.exact()) throw InputError("exact semidirect requires exact algebras");
  const auto ti = exact_table(inner);
  auto in = [&](int i, int j, int k) -> const Rational& { return ti[(static_cast<std::size_t>(i) * n + j) * n + k]; };
  Rational leib = 0;
  for (const auto& d : action) {
    if (d.rows() != n || d.cols() != n) throw InputError("semidirect: action matrix has wrong size");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Rational s = 0;
          for (int m = 0; m < n; ++m) s += d(k, m) * in(i, j, m) - d(m, i) * in(m, j, k) - d(m, j) * in(i, m, k);
          leib = std::max(leib, Rational(abs(s)));
        }
  }
  if (leib != 0) {
    throw PreconditionError("semidirect: action is not by derivations (max Leibniz residual " + to_string(leib) + ")");
  }
  const auto to = exact_table(outer);
  Rational hom = 0;
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          Rational s = 0;
          for (int m = 0; m < n; ++m) s += action[a](r, m) * action[b](m, c) - action[b](r, m) * action[a](m, c);
          for (int k = 0; k < p; ++k) s -= to[(static_cast<std::size_t>(a) * p + b) * p + k] * action[k](r, c);
          hom = std::max(hom, Rational(abs(s)));
        }
      }
    }
  }
  if (hom != 0) {
    throw PreconditionError("semidirect: action is not a Lie homomorphism (max residual " + to_string(hom) + ")");
  }
  std::vector<std::string> names = outer.basis_names();
  names.insert(names.end(), inner.basis_names().begin(), inner.basis_names().end());
  std::vector<BracketEntry> entries = outer.entries();
  for (auto e : inner.entries()) entries.push_back({e.i + p, e.j + p, e.k + p, e.c});
  for (int o = 0; o < p; ++o)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        if (action[o](k, b) != 0) entries.push_back({o, p + b, p + k, action[o](k, b)});
  return LieAlgebra(std::move(names), std::move(entries));
}

LieAlgebra direct_sum(const LieAlgebra& first, const LieAlgebra& second) {
  const int p = first.dim();
  std::vector<std::string> names = first.basis_names();
  names.insert(names.end(), second.basis_names().begin(), second.basis_names().end());
  if (first.exact() && second.exact()) {
    std::vector<BracketEntry> entries = first.entries();
    for (auto e : second.entries()) entries.push_back({e.i + p, e.j + p, e.k + p, e.c});
    return LieAlgebra(std::move(names), std::move(entries));
  }
  const int n = second.dim();
  StructureTensor t(p + n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int k = 0; k < p; ++k) t(a, b, k) = first.tensor()(a, b, k);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) t(p + a, p + b, p + k) = second.tensor()(a, b, k);
  return LieAlgebra::from_tensor(std::move(names), std::move(t));
}

LieAlgebra restrict_to(const LieAlgebra& algebra, std::span<const int> indices) {
  const int n = algebra.dim();
  std::vector<int> pos(n, -1);
  for (std::size_t s = 0; s < indices.size(); ++s) {
    if (indices[s] < 0 || indices[s] >= n) throw InputError("restrict_to: index out of range");
    pos[indices[s]] = static_cast<int>(s);
  }
  std::vector<std::string> names;
  for (int i : indices) names.push_back(algebra.basis_names()[i]);
  if (algebra.exact()) {
    std::vector<BracketEntry> entries;
    for (const auto& e : algebra.entries()) {
      if (pos[e.i] < 0 || pos[e.j] < 0) continue;
      if (pos[e.k] < 0) throw PreconditionError("restrict_to: index set is not a subalgebra");
      int i = pos[e.i], j = pos[e.j];
      Rational c = e.c;
      if (i > j) {
        std::swap(i, j);
        c = -c;
      }
      entries.push_back({i, j, pos[e.k], c});
    }
    return LieAlgebra(std::move(names), std::move(entries));
  }
  const auto& t = algebra.tensor();
  const int m = static_cast<int>(indices.size());
  StructureTensor out(m);
  const double tol = 1e-12 * tensor_scale(t);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int k = 0; k < n; ++k) {
        const double v = t(indices[a], indices[b], k);
        if (pos[k] < 0) {
          if (std::fabs(v) > tol) throw PreconditionError("restrict_to: index set is not a subalgebra");
          continue;
        }
        out(a, b, pos[k]) = v;
      }
    }
  }
  return LieAlgebra::from_tensor(std::move(names), std::move(out));
}

LieAlgebra matrix_algebra(std::span<const Matrix> family, double tol) {
  const int m = static_cast<int>(family.size());
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back("d" + std::to_string(i + 1));
  StructureTensor t(m);
  if (m == 0) return LieAlgebra::from_tensor(std::move(names), std::move(t));
  const int r = static_cast<int>(family[0].rows());
  Matrix stacked(static_cast<Eigen::Index>(r) * r, m);
  for (int i = 0; i < m; ++i) stacked.col(i) = vec(family[i]);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(stacked);
  double scale = 1.0;
  for (const auto& f : family) scale = std::max(scale, f.squaredNorm());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const Matrix comm = family[a] * family[b] - family[b] * family[a];
      const Vector rhs = vec(comm);
      const Vector coef = cod.solve(rhs);
      const double res = (stacked * coef - rhs).norm();
      if (res > tol * scale) {
        std::ostringstream os;
        os << "matrix family is not closed under commutators (residual " << res << ")";
        throw PreconditionError(os.str());
      }
      for (int k = 0; k < m; ++k) {
        t(a, b, k) = coef(k);
        t(b, a, k) = -coef(k);
      }
    }
  }
  return LieAlgebra::from_tensor(std::move(names), std::move(t));
}

bool is_ideal(const LieAlgebra& algebra, std::span<const int> indices) {
  const int n = algebra.dim();
  std::vector<bool> in(n, false);
  for (int i : indices) in[i] = true;
  if (algebra.exact()) {
    for (const auto& e : algebra.entries())
      if ((in[e.i] || in[e.j]) && !in[e.k]) return false;
    return true;
  }
  const auto& t = algebra.tensor();
  const double tol = 1e-12 * tensor_scale(t);
  for (int x = 0; x < n; ++x)
    for (int y : indices)
      for (int k = 0; k < n; ++k)
        if (!in[k] && std::fabs(t(x, y, k)) > tol) return false;
  return true;
}

bool is_nilpotent(const LieAlgebra& algebra, std::span<const int> indices) {
  const int n = algebra.dim();
  if (algebra.exact()) {
    std::vector<std::vector<Rational>> base;
    for (int i : indices) {
      std::vector<Rational> v(n);
      v[i] = 1;
      base.push_back(std::move(v));
    }
    auto current = base;
    for (int step = 0; step <= n; ++step) {
      if (current.empty()) return true;
      std::vector<std::vector<Rational>> next;
      for (const auto& x : base)
        for (const auto& y : current) next.push_back(bracket(algebra, x, y));
      auto reduced = exact_row_basis(next, n);
      if (reduced.size() >= current.size()) return false;
      current = std::move(reduced);
    }
    return current.empty();
  }
  Matrix base = Matrix::Zero(n, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t s = 0; s < indices.size(); ++s) base(indices[s], static_cast<Eigen::Index>(s)) = 1.0;
  Matrix current = base;
  for (int step = 0; step <= n; ++step) {
    if (current.cols() == 0) return true;
    Matrix next(n, base.cols() * current.cols());
    int col = 0;
    for (int a = 0; a < base.cols(); ++a) {
      const Matrix ad = ad_matrix(algebra, base.col(a));
      for (int b = 0; b < current.cols(); ++b) next.col(col++) = ad * current.col(b);
    }
    Matrix reduced = column_span(next);
    if (reduced.cols() >= current.cols()) return false;
    current = std::move(reduced);
  }
  return current.cols() == 0;
}

DecompositionReport check_standard_decomposition(const SolvableDecomposition& dec) {
  DecompositionReport r;
  const auto& alg = dec.algebra;
  const int n = alg.dim();
  std::vector<int> count(n, 0);
  bool in_range = true;
  for (int i : dec.a_indices) (i >= 0 && i < n) ? ++count[i] : (in_range = false, 0);
  for (int i : dec.n_indices) (i >= 0 && i < n) ? ++count[i] : (in_range = false, 0);
  r.partition = in_range && std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
  if (!r.partition) {
    r.standard = false;
    r.failures.push_back("a and n index sets do not partition the basis");
    return r;
  }
  std::vector<bool> in_n(n, false);
  for (int i : dec.n_indices) in_n[i] = true;

  r.n_ideal = is_ideal(alg, dec.n_indices);
  if (!r.n_ideal) r.failures.push_back("n is not an ideal");
  r.n_nilpotent = r.n_ideal && is_nilpotent(alg, dec.n_indices);
  if (!r.n_nilpotent) r.failures.push_back("n is not a nilpotent subalgebra");

  const auto& t = alg.tensor();
  const double tol = 1e-12 * tensor_scale(t);
  for (int i = 0; i < n && r.derived_in_n; ++i)
    for (int j = 0; j < n && r.derived_in_n; ++j)
      for (int k = 0; k < n; ++k)
        if (!in_n[k] && std::fabs(t(i, j, k)) > tol) {
          r.derived_in_n = false;
          break;
        }
  if (!r.derived_in_n) r.failures.push_back("[s,s] is not contained in n");

  for (int a : dec.a_indices)
    for (int b : dec.a_indices)
      for (int k = 0; k < n; ++k)
        if (std::fabs(t(a, b, k)) > tol) r.a_abelian = false;
  if (!r.a_abelian) r.failures.push_back("a is not abelian");

  const int m = static_cast<int>(dec.n_indices.size());
  for (int a : dec.a_indices) {
    const Matrix ad = t.ad(a);
    Matrix restricted(m, m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) restricted(x, y) = ad(dec.n_indices[x], dec.n_indices[y]);
    if (!spectral_report(restricted).semisimple) {
      r.a_semisimple = false;
      r.failures.push_back("ad(" + alg.basis_names()[a] + ")|n is not semisimple");
    }
  }
  r.standard = r.partition && r.n_ideal && r.n_nilpotent && r.derived_in_n && r.a_abelian && r.a_semisimple;
  return r;
}

}  // namespace einsolv

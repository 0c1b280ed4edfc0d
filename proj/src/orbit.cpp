#include "einsolv/orbit.hpp"

#include "einsolv/errors.hpp"
#include "einsolv/kernels.hpp"
#include "einsolv/linalg.hpp"
#include "einsolv/lp.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <cmath>
#include <random>
#include <sstream>

namespace einsolv {

namespace {

bool is_diagonal(const Matrix& m) {
  const Matrix off = m - Matrix(m.diagonal().asDiagonal());
  return off.size() == 0 || off.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
}

// Real eigenbasis of a diagonalizable matrix with real spectrum, grouped by
// clusters in ascending order. Empty result when that fails.
// eigenspaces of known multiplicity: the smallest right singular directions of m - lambda
Matrix eigenspaces(const Matrix& m, const std::map<Rational, int>& mult, std::vector<double>& values) {
  const int n = static_cast<int>(m.rows());
  const double scale = std::max(operator_norm(m), 1e-300);
  Matrix basis(n, n);
  values.clear();
  int col = 0;
  for (const auto& [q, k] : mult) {
    const double lam = to_double(q);
    const Matrix shifted = m - lam * Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
    if (svd.singularValues()(n - k) > 1e-5 * scale) return Matrix();
    basis.middleCols(col, k) = svd.matrixV().rightCols(k);
    values.insert(values.end(), k, lam);
    col += k;
  }
  Eigen::JacobiSVD<Matrix> check(basis);
  const auto& sv = check.singularValues();
  if (sv(n - 1) < 1e-6 * sv(0)) return Matrix();
  return basis;
}

Matrix eigenbasis_at(const Matrix& m, const std::vector<double>& centers, double cutoff, std::vector<double>& values) {
  const int n = static_cast<int>(m.rows());
  const double scale = std::max(operator_norm(m), 1e-300);
  Matrix basis(n, 0);
  values.clear();
  for (double lam : centers) {
    Matrix shifted = m - lam * Matrix::Identity(n, n);
    Matrix ns = nullspace(shifted, cutoff);
    if (shifted.norm() <= 1e-12 * scale) ns = Matrix::Identity(n, n);
    Matrix grown(n, basis.cols() + ns.cols());
    grown << basis, ns;
    basis = grown;
    values.insert(values.end(), ns.cols(), lam);
  }
  if (basis.cols() != n) return Matrix();
  return basis;
}

Matrix real_eigenbasis(const Matrix& m, std::vector<double>& values) {
  const SpectralReport rep = spectral_report(m);
  if (!rep.semisimple || !rep.real_spectrum) return Matrix();
  std::vector<double> ev;
  for (const auto& z : rep.eigenvalues) ev.push_back(z.real());
  std::sort(ev.begin(), ev.end());
  const double scale = std::max(operator_norm(m), 1e-300);
  std::vector<double> centers;
  for (double v : ev)
    if (centers.empty() || v - centers.back() > 1e-8 * scale) centers.push_back(v);
  return eigenbasis_at(m, centers, 1e-8, values);
}

double tensor_norm(const StructureTensor& t) { return t.norm(); }

}  // namespace

LieAlgebra act(const LieAlgebra& mu, const Matrix& a) {
  const int n = mu.dim();
  if (a.rows() != n || a.cols() != n) throw InputError("act: matrix has wrong size");
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (n > 0 && (s(n - 1) == 0.0 || s(0) / s(n - 1) >= 1e12)) {
    throw PreconditionError("act: matrix is singular (condition number >= 1e12)");
  }
  const Matrix a_inv = a.inverse();
  return LieAlgebra::from_tensor(mu.basis_names(), kernels::transform(mu.tensor(), a, a_inv));
}

LieAlgebra change_basis(const LieAlgebra& mu, const Matrix& p) { return act(mu, p.inverse()); }

StructureTensor infinitesimal_action(const StructureTensor& mu, const Matrix& x) {
  const int n = mu.dim();
  StructureTensor out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += x(k, m) * mu(i, j, m) - x(m, i) * mu(m, j, k) - x(m, j) * mu(i, m, k);
        out(i, j, k) = s;
      }
    }
  }
  return out;
}

double closure_residual(std::span<const Matrix> basis) {
  if (basis.empty()) return 0.0;
  const int n = static_cast<int>(basis[0].rows());
  Matrix cols(n * n, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) cols.col(i) = vec(basis[i]);
  const Matrix span = nullspace(cols.transpose(), 1e-10);  // orthogonal complement
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Vector c = vec(basis[i] * basis[j] - basis[j] * basis[i]);
      if (span.cols() == 0 || cols.norm() == 0.0) continue;
      worst = std::max(worst, (span.transpose() * c).norm());
    }
  }
  return worst;
}

GPhiData build_g_phi(const LieAlgebra& n, const PreEinsteinDerivation& phi) {
  const int dim = n.dim();
  if (phi.matrix.rows() != dim) throw InputError("build_g_phi: phi has wrong size");
  GPhiData out;
  std::vector<double> values;
  if (is_diagonal(phi.matrix)) {
    out.eigenbasis = Matrix::Identity(dim, dim);
    for (int i = 0; i < dim; ++i) values.push_back(phi.matrix(i, i));
  } else if (static_cast<int>(phi.snapped.size()) == dim && phi.snap_error < 1e-6) {
    std::map<Rational, int> mult;
    for (const auto& e : phi.snapped) ++mult[e.value];
    out.eigenbasis = eigenspaces(phi.matrix, mult, values);
    if (out.eigenbasis.size() == 0) throw PreconditionError("build_g_phi: phi is not diagonalizable over the reals");
  } else {
    out.eigenbasis = real_eigenbasis(phi.matrix, values);
    if (out.eigenbasis.size() == 0) throw PreconditionError("build_g_phi: phi is not diagonalizable over the reals");
  }
  for (double v : values) out.spectrum.push_back(snap_rational(v, 64).value);
  out.mu = out.eigenbasis.isIdentity(0.0) ? n : change_basis(n, out.eigenbasis);

  // Unknown X in the eigenbasis, column-stacked.
  const int nn = dim * dim;
  Matrix sys = Matrix::Zero(2 + nn, nn);
  for (int a = 0; a < dim; ++a) {
    sys(0, a * dim + a) = 1.0;
    sys(1, a * dim + a) = values[a];
  }
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) sys(2 + b * dim + a, b * dim + a) = values[b] - values[a];
  const Matrix ns = nullspace(sys);
  for (int c = 0; c < ns.cols(); ++c) out.basis.push_back(unvec(ns.col(c), dim, dim));

  RationalMatrix diag(2, dim);
  for (int a = 0; a < dim; ++a) {
    diag(0, a) = 1;
    diag(1, a) = out.spectrum[a];
  }
  for (auto& v : exact_nullspace(diag)) {
    IntegerScaling sc = integer_scaling(v);
    const auto first = std::find_if(sc.integers.begin(), sc.integers.end(), [](const Integer& z) { return z != 0; });
    const double sign = (first != sc.integers.end() && *first < 0) ? -1.0 : 1.0;
    Matrix t = Matrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) t(a, a) = sign * sc.integers[a].convert_to<double>() + 0.0;
    out.torus_basis.push_back(t);
  }
  return out;
}

int stabilizer_dimension(const OrbitProblem& problem) {
  const auto& basis = problem.group_basis;
  if (basis.empty()) return 0;
  const int n = problem.mu.dim();
  const double scale = std::max(1.0, std::accumulate(basis.begin(), basis.end(), 0.0,
                                                      [](double s, const Matrix& m) { return std::max(s, m.norm()); }));
  if (closure_residual(basis) > 1e-9 * scale * scale) {
    throw PreconditionError("group basis is not closed under commutators");
  }
  Matrix span(n * n, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) span.col(i) = vec(basis[i]);
  const int group_dim = numerical_rank(span);
  // Work on an orthonormal basis of the span so dependent inputs do not inflate the count.
  Eigen::JacobiSVD<Matrix> svd(span, Eigen::ComputeThinU);
  const Matrix u = svd.matrixU().leftCols(group_dim);
  const int pairs = n * (n - 1) / 2;
  Matrix action(static_cast<Eigen::Index>(pairs) * n, group_dim);
  for (int g = 0; g < group_dim; ++g) {
    const StructureTensor t = infinitesimal_action(problem.mu.tensor(), unvec(u.col(g), n, n));
    int row = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) action(row++, g) = t(i, j, k);
  }
  if (action.size() == 0 || action.norm() <= 1e-12 * std::max(1.0, tensor_norm(problem.mu.tensor())))
    return group_dim;
  return group_dim - numerical_rank(action, 1e-9);
}

TorusTestResult torus_closed(const OrbitProblem& problem) {
  const int n = problem.mu.dim();
  const auto& gens = problem.group_basis;
  const int r = static_cast<int>(gens.size());
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw InputError("torus_closed: generator has wrong size");

  // Bring the generators to diagonal form if necessary.
  LieAlgebra mu = problem.mu;
  std::vector<Vector> diag(r);
  const bool diagonal = std::all_of(gens.begin(), gens.end(), is_diagonal);
  if (diagonal) {
    for (int t = 0; t < r; ++t) diag[t] = gens[t].diagonal();
  } else {
    for (int a = 0; a < r; ++a)
      for (int b = a + 1; b < r; ++b)
        if ((gens[a] * gens[b] - gens[b] * gens[a]).cwiseAbs().maxCoeff() >
            1e-10 * std::max(1.0, gens[a].norm() * gens[b].norm()))
          throw PreconditionError("torus test requires a torus: generators do not commute");
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    Matrix generic = Matrix::Zero(n, n);
    for (const auto& g : gens) generic += u(rng) * g;
    std::vector<double> values;
    const Matrix p = real_eigenbasis(generic, values);
    if (p.size() == 0) throw PreconditionError("torus test requires a torus: generators are not diagonalizable");
    const Matrix p_inv = p.inverse();
    for (int t = 0; t < r; ++t) {
      const Matrix d = p_inv * gens[t] * p;
      if (!is_diagonal(d)) throw PreconditionError("torus test requires a torus: generators are not simultaneously diagonalizable");
      diag[t] = d.diagonal();
    }
    mu = change_basis(mu, p);
  }

  TorusTestResult res;
  const auto& c = mu.tensor();
  double cscale = 1e-300;
  for (std::size_t q = 0; q < c.size(); ++q) cscale = std::max(cscale, std::fabs(c.data()[q]));
  double min_entry = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double v = c(i, j, k);
        if (std::fabs(v) <= 1e-12 * cscale) continue;
        res.support.push_back({i, j, k});
        Vector w(r);
        for (int t = 0; t < r; ++t) w(t) = diag[t](k) - diag[t](i) - diag[t](j);
        for (int t = 0; t < r; ++t)
          if (std::fabs(w(t) - std::round(w(t))) > 1e-9) res.integral_weights = false;
        res.weights.push_back(w);
        min_entry = std::min(min_entry, std::fabs(v));
      }
    }
  }
  const int e = static_cast<int>(res.weights.size());
  if (e == 0) {
    res.verdict = OrbitVerdict::closed;
    res.closed = true;
    res.slack = 1.0;
    return res;
  }

  // Interiority: maximize s with lambda_e = s + u_e, sum lambda = 1, sum lambda_e w_e = 0.
  {
    lp::Problem p;
    const int vars = e + 2;  // u, s+, s-
    p.objective = Vector::Zero(vars);
    p.objective(e) = 1.0;
    p.objective(e + 1) = -1.0;
    p.a_eq = Matrix::Zero(r + 1, vars);
    p.b_eq = Vector::Zero(r + 1);
    for (int t = 0; t < r; ++t) {
      double total = 0.0;
      for (int q = 0; q < e; ++q) {
        p.a_eq(t, q) = res.weights[q](t);
        total += res.weights[q](t);
      }
      p.a_eq(t, e) = total;
      p.a_eq(t, e + 1) = -total;
    }
    for (int q = 0; q < e; ++q) p.a_eq(r, q) = 1.0;
    p.a_eq(r, e) = e;
    p.a_eq(r, e + 1) = -e;
    p.b_eq(r) = 1.0;
    const lp::Solution sol = lp::solve(p);
    if (sol.status == lp::Status::optimal) {
      res.slack = sol.value;
      res.lp_weights = sol.x.head(e).array() + (sol.x(e) - sol.x(e + 1));
    } else {
      res.slack = -std::numeric_limits<double>::infinity();
    }
  }
  if (res.slack > 1e-9) {
    res.verdict = OrbitVerdict::closed;
    res.closed = true;
    res.norm_lower_bound = min_entry;
    return res;
  }

  // Destabilizer: maximize t with <a, w_e> >= t, |a_i| <= 1, t <= 1.
  auto solve_direction = [&](bool strict_margin) -> std::optional<Vector> {
    lp::Problem p;
    const int vars = 2 * r + 2;  // a+, a-, t+, t-
    p.objective = Vector::Zero(vars);
    p.a_le = Matrix::Zero(e + 2 * r + 1, vars);
    p.b_le = Vector::Zero(e + 2 * r + 1);
    for (int q = 0; q < e; ++q) {
      for (int t = 0; t < r; ++t) {
        p.a_le(q, t) = -res.weights[q](t);
        p.a_le(q, r + t) = res.weights[q](t);
        if (!strict_margin) {
          p.objective(t) += res.weights[q](t);
          p.objective(r + t) -= res.weights[q](t);
        }
      }
      if (strict_margin) {
        p.a_le(q, 2 * r) = 1.0;
        p.a_le(q, 2 * r + 1) = -1.0;
      }
    }
    for (int t = 0; t < 2 * r; ++t) {
      p.a_le(e + t, t) = 1.0;
      p.b_le(e + t) = 1.0;
    }
    p.a_le(e + 2 * r, 2 * r) = 1.0;
    p.b_le(e + 2 * r) = strict_margin ? 1.0 : 0.0;
    if (strict_margin) {
      p.objective(2 * r) = 1.0;
      p.objective(2 * r + 1) = -1.0;
    }
    const lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::optimal || sol.value <= 1e-9) return std::nullopt;
    Vector a = sol.x.head(r) - sol.x.segment(r, r);
    return a;
  };

  std::optional<Vector> dir = solve_direction(true);
  if (dir) {
    res.strict = true;
  } else {
    dir = solve_direction(false);
  }
  if (dir) {
    res.destabilizer = *dir;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& w : res.weights) margin = std::min(margin, dir->dot(w));
    res.margin = margin;
    Matrix x = Matrix::Zero(n, n);
    for (int t = 0; t < r; ++t) x += (*dir)(t) * gens[t];
    res.destabilizer_matrix = x;

    // Flow mu along exp(-s X) with the original generators and basis.
    const double mu_norm = problem.mu.tensor().norm();
    const double s_max = res.strict ? std::log(1e7) / margin : 40.0;
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 20; ++k) {
      const double s = s_max * k / 20.0;
      const Matrix expo = (-s * x).exp();
      const Matrix expo_inv = (s * x).exp();
      const double nrm = kernels::transform(problem.mu.tensor(), expo, expo_inv).norm();
      res.flow_norms.push_back(nrm);
      if (nrm > prev * (1.0 + 1e-12)) monotone = false;
      prev = nrm;
    }
    if (res.strict) {
      res.flow_verified = monotone && res.flow_norms.back() < 1e-6 * mu_norm;
    } else {
      res.flow_verified = monotone && res.flow_norms.back() < mu_norm * (1.0 - 1e-9);
    }
  }
  if (res.slack < -1e-9 && res.destabilizer) {
    res.verdict = OrbitVerdict::not_closed;
  } else {
    res.verdict = OrbitVerdict::undecided;
  }
  res.closed = false;
  return res;
}

}  // namespace einsolv

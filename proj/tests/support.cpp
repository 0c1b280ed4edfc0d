#include "support.hpp"

#include "einsolv/kernels.hpp"

#include <Eigen/QR>

#include <utility>

namespace einsolv::test {

ExactTensor exact_tensor(const LieAlgebra& alg) {
  ExactTensor t(alg.dim());
  for (const auto& e : alg.entries()) t.set(e.i, e.j, e.k, t.at(e.i, e.j, e.k) + e.c);
  return t;
}

LieAlgebra to_algebra(const ExactTensor& t) {
  std::vector<std::string> names;
  for (int i = 0; i < t.n; ++i) names.push_back("x" + std::to_string(i + 1));
  std::vector<BracketEntry> entries;
  for (int i = 0; i < t.n; ++i)
    for (int j = i + 1; j < t.n; ++j)
      for (int k = 0; k < t.n; ++k)
        if (t.at(i, j, k) != 0) entries.push_back({i, j, k, t.at(i, j, k)});
  return LieAlgebra(names, entries);
}

ExactTensor random_two_step(Rng& rng, int p, int q, double density) {
  ExactTensor t(p + q);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::bernoulli_distribution keep(density);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      for (int k = p; k < p + q; ++k)
        if (keep(rng)) t.set(i, j, k, Rational(coef(rng)));
  return t;
}

namespace {

using RMat = std::vector<std::vector<Rational>>;

RMat identity(int n) {
  RMat m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RMat mul(const RMat& a, const RMat& b) {
  const int n = static_cast<int>(a.size());
  RMat out(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// (I + N)^{-1} for nilpotent N, as the finite geometric series.
RMat unipotent_inverse(const RMat& u) {
  const int n = static_cast<int>(u.size());
  RMat nil = u;
  for (int i = 0; i < n; ++i) nil[i][i] -= 1;
  RMat out = identity(n), power = identity(n);
  for (int s = 1; s < n; ++s) {
    power = mul(power, nil);
    const Rational sign = s % 2 ? Rational(-1) : Rational(1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i][j] += sign * power[i][j];
  }
  return out;
}

int rank(std::vector<std::vector<Rational>> rows, int cols) {
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

ExactTensor random_rational_basis_change(Rng& rng, const ExactTensor& t) {
  const int n = t.n;
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  RMat lower = identity(n), upper = identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      lower[i][j] = Rational(num(rng), den(rng));
      upper[j][i] = Rational(num(rng), den(rng));
    }
  const RMat a = mul(lower, upper);
  const RMat a_inv = mul(unipotent_inverse(upper), unipotent_inverse(lower));
  // c'(i,j,k) = sum a(k,z) a_inv(x,i) a_inv(y,j) c(x,y,z), one index at a time
  ExactTensor t1(n), t2(n), out(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (t.at(x, y, z) == 0) continue;
        for (int k = 0; k < n; ++k)
          if (a[k][z] != 0) t1.at(x, y, k) += a[k][z] * t.at(x, y, z);
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int k = 0; k < n; ++k) {
        if (t1.at(x, y, k) == 0) continue;
        for (int j = 0; j < n; ++j)
          if (a_inv[y][j] != 0) t2.at(x, j, k) += a_inv[y][j] * t1.at(x, y, k);
      }
  for (int x = 0; x < n; ++x)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (t2.at(x, j, k) == 0) continue;
        for (int i = 0; i < n; ++i)
          if (a_inv[x][i] != 0) out.at(i, j, k) += a_inv[x][i] * t2.at(x, j, k);
      }
  return out;
}

bool jacobi_holds(const ExactTensor& t) {
  const int n = t.n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int out = 0; out < n; ++out) {
          Rational s = 0;
          for (int m = 0; m < n; ++m) {
            s += t.at(b, c, m) * t.at(a, m, out);
            s += t.at(c, a, m) * t.at(b, m, out);
            s += t.at(a, b, m) * t.at(c, m, out);
          }
          if (s != 0) return false;
        }
  return true;
}

int exact_derivation_dim(const ExactTensor& t) {
  const int n = t.n;
  // unknown D(a,b) at a*n + b; row for (i<j, k):
  //   sum_m c(i,j,m) D(k,m) - D(m,i) c(m,j,k) - D(m,j) c(i,m,k)
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Rational> row(n * n);
        bool any = false;
        for (int m = 0; m < n; ++m) {
          if (t.at(i, j, m) != 0) row[k * n + m] += t.at(i, j, m), any = true;
          if (t.at(m, j, k) != 0) row[m * n + i] -= t.at(m, j, k), any = true;
          if (t.at(i, m, k) != 0) row[m * n + j] -= t.at(i, m, k), any = true;
        }
        if (any) rows.push_back(std::move(row));
      }
  return n * n - rank(std::move(rows), n * n);
}

Matrix random_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

Matrix random_orthogonal(Rng& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

Matrix random_invertible(Rng& rng, int n) {
  return Matrix::Identity(n, n) + 0.3 * random_matrix(rng, n, n);
}

Matrix random_spd(Rng& rng, int n) {
  const Matrix m = random_matrix(rng, n, n);
  return m * m.transpose() + 0.5 * Matrix::Identity(n, n);
}

LieAlgebra random_solvable(Rng& rng, int p, int q) {
  const ExactTensor nil = random_two_step(rng, p, q);
  const int n = p + q + 1;
  StructureTensor c(n);
  for (int i = 0; i < p + q; ++i)
    for (int j = 0; j < p + q; ++j)
      for (int k = 0; k < p + q; ++k) c(i + 1, j + 1, k + 1) = to_double(nil.at(i, j, k));
  for (int i = 1; i < n; ++i) {
    const double w = i <= p ? 1.0 : 2.0;
    c(0, i, i) = w;
    c(i, 0, i) = -w;
  }
  const Matrix a = random_invertible(rng, n);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  return LieAlgebra::from_tensor(names, kernels::transform(c, a, a.inverse()));
}

LieAlgebra heisenberg(int k) {
  std::vector<std::string> names;
  std::vector<BracketEntry> entries;
  for (int i = 0; i < 2 * k; ++i) names.push_back("e" + std::to_string(i + 1));
  names.push_back("z");
  for (int i = 0; i < k; ++i) entries.push_back({2 * i, 2 * i + 1, 2 * k, Rational(1)});
  return LieAlgebra(names, entries);
}

LieAlgebra complex_hyperbolic(int k) {
  std::vector<std::string> names = {"A"};
  std::vector<BracketEntry> entries;
  for (int i = 0; i < 2 * k; ++i) {
    names.push_back("e" + std::to_string(i + 1));
    entries.push_back({0, i + 1, i + 1, Rational(1, 2)});
  }
  names.push_back("z");
  entries.push_back({0, 2 * k + 1, 2 * k + 1, Rational(1)});
  for (int i = 0; i < k; ++i) entries.push_back({2 * i + 1, 2 * i + 2, 2 * k + 1, Rational(1)});
  return LieAlgebra(names, entries);
}

double relative_error(const Matrix& a, const Matrix& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

}  // namespace einsolv::test

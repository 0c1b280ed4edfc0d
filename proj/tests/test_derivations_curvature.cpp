#include <doctest.h>

#include "support.hpp"

#include "einsolv/catalog.hpp"
#include "einsolv/curvature.hpp"
#include "einsolv/derivations.hpp"
#include "einsolv/errors.hpp"
#include "einsolv/orbit.hpp"

#include <algorithm>

using namespace einsolv;

namespace {

LieAlgebra named(const char* name) { return algebra_of(catalog_entry(name).document); }

LieAlgebra so3() {
  return LieAlgebra({"e1", "e2", "e3"}, {{0, 1, 2, Rational(1)}, {1, 2, 0, Rational(1)}, {0, 2, 1, Rational(-1)}});
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("derivations of heisenberg3") {
  // D = [[a,b,0],[c,d,0],[e,f,a+d]]: six parameters
  const LieAlgebra h = named("heisenberg3");
  const DerivationBasis der = derivation_basis(h);
  CHECK(der.size() == 6);
  for (const auto& d : der.matrices) {
    CHECK(leibniz_residual(h, d) < 1e-13);
    CHECK(std::fabs(d(2, 2) - d(0, 0) - d(1, 1)) < 1e-13);
    CHECK(std::fabs(d(0, 2)) + std::fabs(d(1, 2)) < 1e-13);
  }
  CHECK(span_residual(der, Vector::Ones(3).asDiagonal()) > 0.1);
  CHECK(span_residual(der, (Vector(3) << 1, 1, 2).finished().asDiagonal()) < 1e-12);

  // skew for the identity metric: rotations of (e1, e2) only
  const DerivationBasis skew = skew_derivations(h, InnerProduct::identity(3));
  REQUIRE(skew.size() == 1);
  CHECK(std::fabs(std::fabs(skew.matrices[0](0, 1)) - 1.0 / std::sqrt(2.0)) < 1e-12);

  const std::vector<Matrix> centre = {(Vector(3) << 1, 2, 3).finished().asDiagonal()};
  CHECK(commuting_derivations(h, centre).size() == 2);  // diag(a, d, a + d)
}

TEST_CASE("derivation dimensions agree with exact elimination") {
  for (const char* name : {"paper-n11", "paper-n2-10", "ch2", "sl2", "abelian-3"}) {
    const LieAlgebra alg = named(name);
    CHECK_MESSAGE(derivation_basis(alg).size() == test::exact_derivation_dim(test::exact_tensor(alg)), name);
  }
  CHECK(derivation_basis(named("sl2")).size() == 3);
  CHECK(derivation_basis(named("abelian-4")).size() == 16);
}

TEST_CASE("pre-Einstein derivations") {
  const PreEinsteinDerivation h = pre_einstein(named("heisenberg3"));
  REQUIRE(h.snapped.size() == 3);
  CHECK(h.snapped[0].value == Rational(2, 3));
  CHECK(h.snapped[1].value == Rational(2, 3));
  CHECK(h.snapped[2].value == Rational(4, 3));
  CHECK(h.semisimple);
  CHECK(h.real_spectrum);
  CHECK(h.trace_residual < 1e-9);
  CHECK(std::fabs((h.matrix * h.matrix).trace() - h.matrix.trace()) < 1e-9);

  const PreEinsteinDerivation ab = pre_einstein(named("abelian-3"));
  CHECK((ab.matrix - Matrix::Identity(3, 3)).norm() < 1e-12);

  // ad A / 25 on the eleven-dimensional nilradical
  const PreEinsteinDerivation n = pre_einstein(named("paper-n11"));
  const std::vector<int> ad_a = {21, 17, 21, 19, 19, 19, 19, 19, 19, 38, 38};
  REQUIRE(n.snapped.size() == 11);
  for (int i = 0; i < 11; ++i) CHECK(n.snapped[i].value == Rational(ad_a[i], 25));
  CHECK(n.trace_residual < 1e-9);

  const PreEinsteinDerivation n2 = pre_einstein(named("paper-n2-10"));
  for (int i = 0; i < 8; ++i) CHECK(n2.snapped[i].value == Rational(3, 4));
  CHECK(n2.snapped[8].value == Rational(3, 2));
}

TEST_CASE("pre-Einstein derivation is basis covariant") {
  test::Rng rng(11);
  const LieAlgebra n = named("paper-n11");
  const PreEinsteinDerivation base = pre_einstein(n);
  const Matrix q = test::random_orthogonal(rng, n.dim());
  const PreEinsteinDerivation moved = pre_einstein(act(n, q));
  CHECK(test::relative_error(moved.matrix, q * base.matrix * q.transpose()) < 1e-9);

  const Matrix p = test::random_invertible(rng, n.dim());
  const PreEinsteinDerivation general = pre_einstein(act(n, p));
  CHECK(general.semisimple);
  const auto a = sorted(general.eigenvalues), b = sorted(base.eigenvalues);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::fabs(a[i] - b[i]) < 1e-8);
}

TEST_CASE("pre-Einstein derivation stays semisimple in skewed bases") {
  test::Rng rng(31342);
  for (int t = 0; t < 40; ++t) {
    const test::ExactTensor c = test::random_two_step(rng, 4, 2, 0.6);
    const LieAlgebra plain = test::to_algebra(c);
    const LieAlgebra skew = test::to_algebra(test::random_rational_basis_change(rng, c));
    const PreEinsteinDerivation a = pre_einstein(plain), b = pre_einstein(skew);
    CAPTURE(t);
    CHECK(b.semisimple);
    CHECK(b.snap_error < 1e-9);
    CHECK(b.defining_residual < 1e-8);
    std::vector<Rational> sa, sb;
    for (const auto& x : a.snapped) sa.push_back(x.value);
    for (const auto& x : b.snapped) sb.push_back(x.value);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    CHECK(sa == sb);
    const GPhiData data = build_g_phi(skew, b);
    const std::vector<Matrix> centre = {b.matrix};
    CHECK(stabilizer_dimension(data.problem()) == commuting_derivations(skew, centre).size() - 1);
  }
}

TEST_CASE("ricci of heisenberg3 by hand") {
  const ReductiveSplit split = ReductiveSplit::group(named("heisenberg3"), InnerProduct::identity(3));
  const Matrix expect = (Vector(3) << -0.5, -0.5, 0.5).finished().asDiagonal();
  CHECK((moment_operator(split) - expect).norm() < 1e-14);
  const RicciReport r = ricci_operator(split);
  CHECK((r.ricci_operator - expect).norm() < 1e-14);
  CHECK(r.scalar_curvature == doctest::Approx(-0.5));
  CHECK(mean_curvature_vector(split).norm() == 0.0);
  CHECK_FALSE(einstein_check(r, 1e-8));
}

TEST_CASE("round two-sphere as SO(3)/SO(2)") {
  ReductiveSplit split{so3(), {2}, {0, 1}, InnerProduct::identity(2)};
  check_split(split);
  RicciReport r = ricci_operator(split);
  CHECK((r.ricci_operator - Matrix::Identity(2, 2)).norm() < 1e-14);
  CHECK(r.einstein_constant == doctest::Approx(1.0));
  CHECK_FALSE(einstein_check(r, 1e-8));  // positive constant

  split.metric = InnerProduct(2.0 * Matrix::Identity(2, 2));
  r = ricci_operator(split);
  CHECK((r.ricci_operator - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-14);

  split.metric = InnerProduct((Vector(2) << 1, 2).finished().asDiagonal());
  CHECK_THROWS_AS(check_split(split), PreconditionError);
  ReductiveSplit bad{so3(), {2}, {0}, InnerProduct::identity(1)};
  CHECK_THROWS_AS(check_split(bad), Error);
}

TEST_CASE("einstein solvable examples") {
  // ch2: trace ad A = 2, Ric = -trace(ad A^2) = -3/2
  const ReductiveSplit ch2 = ReductiveSplit::group(named("ch2"), InnerProduct::identity(4));
  CHECK((mean_curvature_vector(ch2) - 2.0 * Vector::Unit(4, 0)).norm() < 1e-14);
  const RicciReport r = ricci_operator(ch2);
  CHECK((r.ricci_operator + 1.5 * Matrix::Identity(4, 4)).norm() < 1e-13);
  CHECK(einstein_check(r, 1e-8));

  // s12: c = -trace(ad A^2) / <A,A>
  const auto& doc = catalog_entry("paper-s12").document;
  const RicciReport s = ricci_operator(split_of(doc));
  double tr2 = 0.0;
  for (int w : {21, 17, 21, 19, 19, 19, 19, 19, 19, 38, 38}) tr2 += w * w;
  CHECK(s.einstein_constant == doctest::Approx(-tr2 / 249.0).epsilon(1e-12));
  CHECK(s.einstein_constant == doctest::Approx(-25.0).epsilon(1e-12));
  CHECK(s.deviation < 1e-8);
  CHECK(std::fabs(s.scalar_curvature + 25.0 * 12) < 1e-9);
}

#include <doctest.h>

#include "support.hpp"

#include "einsolv/catalog.hpp"
#include "einsolv/errors.hpp"
#include "einsolv/lie_algebra.hpp"
#include "einsolv/linalg.hpp"
#include "einsolv/lp.hpp"
#include "einsolv/rational.hpp"

using namespace einsolv;

TEST_CASE("rationals parse, print and snap") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-2, 3)) == "-2/3");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("0.5"), InputError);
  CHECK(from_double(0.375) == Rational(3, 8));

  const Snapped s = snap_rational(2.0 / 3.0 + 1e-13);
  CHECK(s.value == Rational(2, 3));
  CHECK(s.error < 1e-12);
  CHECK(snap_rational(19.0 / 25.0).value == Rational(19, 25));

  const IntegerScaling sc = integer_scaling({Rational(2, 3), Rational(2, 3), Rational(4, 3)});
  CHECK(sc.lambda == Rational(3, 2));
  CHECK(sc.integers == std::vector<Integer>{1, 1, 2});
  CHECK(integer_scaling({Rational(0)}).lambda == 1);
}

TEST_CASE("exact and floating null spaces") {
  RationalMatrix m(2, 3);
  m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
  m(1, 0) = 2, m(1, 1) = 4, m(1, 2) = 6;
  CHECK(exact_rank(m) == 1);
  const auto ns = exact_nullspace(m);
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);

  const Matrix f = m.to_double();
  const Matrix basis = nullspace(f);
  CHECK(basis.cols() == 2);
  CHECK((f * basis).norm() < 1e-12);
  CHECK(nullspace(Matrix::Zero(2, 2)).cols() == 2);
}

TEST_CASE("spectral report separates Jordan blocks") {
  Matrix jordan(2, 2);
  jordan << 1, 1, 0, 1;
  CHECK_FALSE(spectral_report(jordan).semisimple);
  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  const SpectralReport r = spectral_report(rot);
  CHECK(r.semisimple);
  CHECK_FALSE(r.real_spectrum);
  const Matrix d = Vector::LinSpaced(3, 3.0, 1.0).asDiagonal();
  CHECK(real_eigenvalues(d) == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("simplex on small problems") {
  // max x + y, x + 2y <= 4, 3x + y <= 6 -> (8/5, 6/5)
  lp::Problem p;
  p.objective = Vector::Ones(2);
  p.a_le = (Matrix(2, 2) << 1, 2, 3, 1).finished();
  p.b_le = (Vector(2) << 4, 6).finished();
  lp::Solution s = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.value == doctest::Approx(2.8).epsilon(1e-12));
  CHECK(s.x(0) == doctest::Approx(1.6));

  p.a_eq = (Matrix(1, 2) << 1, 1).finished();
  p.b_eq = (Vector(1) << 10).finished();
  CHECK(lp::solve(p).status == lp::Status::infeasible);

  lp::Problem u;
  u.objective = (Vector(2) << 1, 0).finished();
  u.a_le = (Matrix(1, 2) << -1, 1).finished();
  u.b_le = (Vector(1) << 1).finished();
  CHECK(lp::solve(u).status == lp::Status::unbounded);
}

TEST_CASE("heisenberg bracket and ad") {
  const LieAlgebra h = algebra_of(catalog_entry("heisenberg3").document);
  CHECK(h.exact());
  const Vector z = bracket(h, Vector::Unit(3, 0), Vector::Unit(3, 1));
  CHECK(z == Vector::Unit(3, 2));
  const Matrix ad = ad_matrix(h, Vector::Unit(3, 0));
  CHECK(ad(2, 1) == 1.0);
  CHECK(ad.norm() == 1.0);
  CHECK(validate(h).pass);
  CHECK(is_nilpotent(h, std::vector<int>{0, 1, 2}));
  CHECK(killing_form(h).norm() == 0.0);
}

TEST_CASE("killing forms by hand") {
  // sl2 in H, E, F: B(H,H) = 8, B(E,F) = 4
  const Matrix b = killing_form(algebra_of(catalog_entry("sl2").document));
  Matrix expect(3, 3);
  expect << 8, 0, 0, 0, 0, 4, 0, 4, 0;
  CHECK((b - expect).norm() < 1e-14);

  // so(3) with [e1,e2]=e3 and cyclic: B = -2 Id
  const LieAlgebra so3({"e1", "e2", "e3"}, {{0, 1, 2, Rational(1)}, {1, 2, 0, Rational(1)}, {0, 2, 1, Rational(-1)}});
  CHECK((killing_form(so3) + 2.0 * Matrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("jacobi failure is reported exactly") {
  // [e1,e2] = z with [e1,z] = e1:
  // [[e1,e2],z] + [[e2,z],e1] + [[z,e1],e2] = 0 + 0 + [-e1,e2] = -z
  const LieAlgebra bad({"e1", "e2", "z"}, {{0, 1, 2, Rational(1)}, {0, 2, 0, Rational(1)}});
  const ValidationReport r = validate(bad);
  CHECK_FALSE(r.pass);
  CHECK(r.exact);
  REQUIRE(r.defects.size() == 1);
  CHECK(r.defects[0].exact_residual == std::vector<Rational>{0, 0, -1});

  // [e1,z] = e2 is still a Lie algebra
  const LieAlgebra ok({"e1", "e2", "z"}, {{0, 1, 2, Rational(1)}, {0, 2, 1, Rational(1)}});
  CHECK(validate(ok).pass);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(LieAlgebra({"a", "b"}, {{1, 0, 0, Rational(1)}}), InputError);
  CHECK_THROWS_AS(LieAlgebra({"a", "b"}, {{0, 2, 0, Rational(1)}}), InputError);
  CHECK_THROWS_AS(InnerProduct((Matrix(2, 2) << 1, 2, 2, 1).finished()), PreconditionError);
  CHECK_THROWS_AS(InnerProduct((Matrix(2, 2) << 1, 0.5, 0, 1).finished()), PreconditionError);
  const LieAlgebra h = test::heisenberg(1);
  CHECK_THROWS_AS(restrict_to(h, std::vector<int>{0, 1}), PreconditionError);
  CHECK_THROWS_AS(h.index_of("w"), InputError);
}

TEST_CASE("semidirect sum reproduces ch2") {
  const LieAlgebra h = test::heisenberg(1);
  const std::vector<RationalMatrix> action = {
      RationalMatrix::diagonal({Rational(1, 2), Rational(1, 2), Rational(1)})};
  const LieAlgebra s = semidirect(std::span<const RationalMatrix>(action), LieAlgebra::abelian(1), h);
  const LieAlgebra ch2 = algebra_of(catalog_entry("ch2").document);
  CHECK(s.exact());
  CHECK(s.tensor().max_abs_diff(ch2.tensor()) == 0.0);

  // a non-derivation is refused
  const std::vector<Matrix> bad = {Vector::Ones(3).asDiagonal()};
  CHECK_THROWS_AS(semidirect(std::span<const Matrix>(bad), LieAlgebra::abelian(1), h), PreconditionError);

  const LieAlgebra sum = direct_sum(h, LieAlgebra::abelian(2));
  CHECK(sum.dim() == 5);
  CHECK(restrict_to(sum, std::vector<int>{0, 1, 2}).tensor().max_abs_diff(h.tensor()) == 0.0);
}

TEST_CASE("standard decompositions") {
  for (const char* name : {"paper-s12", "ch2", "sl2-iwasawa-ext"}) {
    const DecompositionReport r = check_standard_decomposition(decomposition_of(catalog_entry(name).document));
    CHECK_MESSAGE(r.standard, name);
  }
  const DecompositionReport aff = check_standard_decomposition(decomposition_of(catalog_entry("aff1").document));
  CHECK(aff.standard);

  // n must be an ideal
  SolvableDecomposition wrong = decomposition_of(catalog_entry("ch2").document);
  wrong.a_indices = {1};
  wrong.n_indices = {0, 2, 3};
  const DecompositionReport r = check_standard_decomposition(wrong);
  CHECK_FALSE(r.standard);
  CHECK_FALSE(r.failures.empty());
}

#pragma once

#include "einsolv/linalg.hpp"
#include "einsolv/rational.hpp"
#include "einsolv/tensor.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace einsolv {

/// [e_i, e_j] += c e_k, stored only for i < j.
struct BracketEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  Rational c;
};

/// A finite-dimensional real Lie algebra given by structure constants.
///
/// Algebras built from rational entries are *exact*: validation runs on the
/// rationals and the floating-point tensor is a derived view. Algebras
/// produced by floating-point transformations (basis changes, modifications,
/// extensions by computed derivations) carry only the tensor.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Exact algebra. Throws InputError on an index out of range or i >= j.
  LieAlgebra(std::vector<std::string> basis_names, std::vector<BracketEntry> entries);

  /// Floating-point algebra; the tensor must already be antisymmetric.
  static LieAlgebra from_tensor(std::vector<std::string> basis_names, StructureTensor tensor);

  static LieAlgebra abelian(int dim);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& basis_names() const { return names_; }
  bool exact() const { return exact_; }

  /// Merged exact entries (i < j, nonzero). Empty for inexact algebras.
  const std::vector<BracketEntry>& entries() const { return entries_; }
  const StructureTensor& tensor() const { return tensor_; }

  /// Index of a basis element by name; throws InputError if absent.
  int index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<BracketEntry> entries_;
  StructureTensor tensor_;
  bool exact_ = false;
};

/// Left-invariant metric on a chosen basis.
class InnerProduct {
 public:
  InnerProduct() = default;
  /// Throws PreconditionError unless symmetric (relative 1e-12) and positive definite.
  explicit InnerProduct(Matrix m);
  static InnerProduct identity(int dim) { return InnerProduct(Matrix::Identity(dim, dim)); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

struct SolvableDecomposition {
  LieAlgebra algebra;
  std::vector<int> a_indices;
  std::vector<int> n_indices;
};

struct JacobiDefect {
  int a = 0, b = 0, c = 0;
  std::vector<Rational> exact_residual;  // empty for inexact algebras
  double residual = 0.0;                 // max-abs of the cyclic sum
};

struct ValidationReport {
  bool pass = true;
  bool exact = false;
  std::vector<JacobiDefect> defects;
  double max_residual = 0.0;
};

/// Jacobi identity on every basis triple; exact for exact algebras,
/// floating point with tolerance tol * ||c||^2 otherwise.
ValidationReport validate(const LieAlgebra& algebra, double tol = 1e-9);

Vector bracket(const LieAlgebra& algebra, const Vector& x, const Vector& y);
std::vector<Rational> bracket(const LieAlgebra& algebra, std::span<const Rational> x,
                              std::span<const Rational> y);

Matrix ad_matrix(const LieAlgebra& algebra, const Vector& x);
RationalMatrix ad_matrix(const LieAlgebra& algebra, std::span<const Rational> x);

/// B(x, y) = trace(ad x ad y) on the basis.
Matrix killing_form(const LieAlgebra& algebra);

/// Residual max |D[x,y] - [Dx,y] - [x,Dy]| over basis pairs.
double leibniz_residual(const LieAlgebra& algebra, const Matrix& d);

/// outer (+) inner with [o, x] = action[o] x; outer indices come first.
/// The exact overload produces an exact algebra.
LieAlgebra semidirect(std::span<const Matrix> action, const LieAlgebra& outer, const LieAlgebra& inner,
                      double tol = 1e-12);
LieAlgebra semidirect(std::span<const RationalMatrix> action, const LieAlgebra& outer,
                      const LieAlgebra& inner);

LieAlgebra direct_sum(const LieAlgebra& first, const LieAlgebra& second);

/// Structure of the subspace spanned by `indices`, which must be a
/// subalgebra spanned by basis vectors; throws PreconditionError otherwise.
LieAlgebra restrict_to(const LieAlgebra& algebra, std::span<const int> indices);

/// Lie algebra spanned by a commutator-closed family of matrices, with
/// structure constants solved in that basis (residual-checked).
LieAlgebra matrix_algebra(std::span<const Matrix> family, double tol = 1e-9);

/// Basis-vector span `indices` is an ideal (exact for exact algebras).
bool is_ideal(const LieAlgebra& algebra, std::span<const int> indices);

/// The subalgebra spanned by `indices` is nilpotent.
bool is_nilpotent(const LieAlgebra& algebra, std::span<const int> indices);

struct DecompositionReport {
  bool standard = true;
  bool partition = true;
  bool n_ideal = true;
  bool n_nilpotent = true;
  bool derived_in_n = true;
  bool a_abelian = true;
  bool a_semisimple = true;
  std::vector<std::string> failures;
};

DecompositionReport check_standard_decomposition(const SolvableDecomposition& dec);

}  // namespace einsolv

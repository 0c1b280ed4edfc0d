#pragma once

#include "einsolv/curvature.hpp"
#include "einsolv/extension.hpp"
#include "einsolv/lie_algebra.hpp"
#include "einsolv/rational.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace einsolv {

/// Matrix entry as written: an exact rational (JSON string) or a double (JSON number).
using Scalar = std::variant<Rational, double>;
using ScalarMatrix = std::vector<std::vector<Scalar>>;

double to_double(const Scalar& s);
Matrix to_matrix(const ScalarMatrix& m);

struct IndexSplit {
  std::vector<int> first;
  std::vector<int> second;
};

struct AlgebraDocument;

/// Data for the semisimple extension: the document itself describes s2.
struct LeviData {
  std::shared_ptr<const AlgebraDocument> g1;
  std::vector<int> k1;
  std::vector<int> p1;
  std::vector<std::vector<int>> ideals;
  std::vector<ScalarMatrix> rho;
  std::vector<ScalarMatrix> isotropy;
};

struct AlgebraDocument {
  std::string schema_version = "1";
  std::optional<std::string> name;
  int dim = 0;
  std::vector<std::string> basis;
  std::vector<BracketEntry> brackets;
  std::optional<ScalarMatrix> metric;
  std::optional<IndexSplit> decomposition;  // a, n
  std::optional<IndexSplit> reductive;      // k, q
  std::optional<LeviData> levi;
  std::optional<std::vector<ScalarMatrix>> abelian_extension;
};

/// Throws InputError with a field-specific message on schema violations.
AlgebraDocument parse_document(const nlohmann::json& j);
nlohmann::json to_json(const AlgebraDocument& doc);
AlgebraDocument load_document(const std::string& path);

LieAlgebra algebra_of(const AlgebraDocument& doc);
/// Declared metric, or the identity on the metric's domain (q if a
/// reductive split is declared, else the whole algebra).
InnerProduct metric_of(const AlgebraDocument& doc);
ReductiveSplit split_of(const AlgebraDocument& doc);
SolvableDecomposition decomposition_of(const AlgebraDocument& doc);
SemisimpleExtensionSpec semisimple_spec_of(const AlgebraDocument& doc);

}  // namespace einsolv

#include "einsolv/document.hpp"

#include "einsolv/errors.hpp"

#include <fstream>
#include <sstream>

namespace einsolv {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError("schema violation at " + where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Rational as_rational(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      fail(where, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  fail(where, "expected a rational string \"p/q\"");
}

Scalar as_scalar(const json& j, const std::string& where) {
  if (j.is_number_float()) return j.get<double>();
  return as_rational(j, where);
}

json scalar_json(const Scalar& s) {
  if (const auto* r = std::get_if<Rational>(&s)) return to_string(*r);
  return std::get<double>(s);
}

ScalarMatrix as_matrix(const json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    std::ostringstream os;
    os << "expected " << rows << " rows";
    fail(where, os.str());
  }
  ScalarMatrix m;
  for (int r = 0; r < rows; ++r) {
    const std::string w = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      std::ostringstream os;
      os << "dimension mismatch: expected " << cols << " columns";
      fail(w, os.str());
    }
    std::vector<Scalar> row;
    for (int c = 0; c < cols; ++c) row.push_back(as_scalar(j[r][c], w + "[" + std::to_string(c) + "]"));
    m.push_back(std::move(row));
  }
  return m;
}

json matrix_json(const ScalarMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& s : row) r.push_back(scalar_json(s));
    out.push_back(r);
  }
  return out;
}

std::vector<int> as_indices(const json& j, int dim, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an index list");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int v = as_int(j[i], where + "[" + std::to_string(i) + "]");
    if (v < 0 || v >= dim) fail(where, "index " + std::to_string(v) + " out of range");
    out.push_back(v);
  }
  return out;
}

std::vector<ScalarMatrix> as_matrix_list(const json& j, int n, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of matrices");
  std::vector<ScalarMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_matrix(j[i], n, n, where + "[" + std::to_string(i) + "]"));
  return out;
}

json matrix_list_json(const std::vector<ScalarMatrix>& list) {
  json out = json::array();
  for (const auto& m : list) out.push_back(matrix_json(m));
  return out;
}

}  // namespace

double to_double(const Scalar& s) {
  if (const auto* r = std::get_if<Rational>(&s)) return to_double(*r);
  return std::get<double>(s);
}

Matrix to_matrix(const ScalarMatrix& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  Matrix out(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out(r, c) = to_double(m[r][c]);
  return out;
}

AlgebraDocument parse_document(const json& j) {
  AlgebraDocument doc;
  const json& version = field(j, "schema_version", "document");
  if (!version.is_string() || version.get<std::string>() != "1") fail("schema_version", "unsupported version (expected \"1\")");
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("name", "expected a string");
    doc.name = j["name"].get<std::string>();
  }
  doc.dim = as_int(field(j, "dim", "document"), "dim");
  if (doc.dim <= 0) fail("dim", "must be positive");
  const json& basis = field(j, "basis", "document");
  if (!basis.is_array() || static_cast<int>(basis.size()) != doc.dim) fail("basis", "expected dim names");
  for (const auto& b : basis) {
    if (!b.is_string()) fail("basis", "names must be strings");
    doc.basis.push_back(b.get<std::string>());
  }
  const json& brackets = field(j, "brackets", "document");
  if (!brackets.is_array()) fail("brackets", "expected a list");
  for (std::size_t t = 0; t < brackets.size(); ++t) {
    const std::string w = "brackets[" + std::to_string(t) + "]";
    const json& e = brackets[t];
    BracketEntry b{as_int(field(e, "i", w), w + ".i"), as_int(field(e, "j", w), w + ".j"), as_int(field(e, "k", w), w + ".k"),
                   as_rational(field(e, "c", w), w + ".c")};
    if (b.i < 0 || b.j < 0 || b.k < 0 || b.i >= doc.dim || b.j >= doc.dim || b.k >= doc.dim) fail(w, "index out of range");
    if (b.i >= b.j) fail(w, "requires i < j");
    doc.brackets.push_back(std::move(b));
  }
  if (j.contains("reductive")) {
    const json& r = j["reductive"];
    doc.reductive = IndexSplit{as_indices(field(r, "k", "reductive"), doc.dim, "reductive.k"),
                               as_indices(field(r, "q", "reductive"), doc.dim, "reductive.q")};
  }
  if (j.contains("metric")) {
    const int m = doc.reductive ? static_cast<int>(doc.reductive->second.size()) : doc.dim;
    doc.metric = as_matrix(j["metric"], m, m, "metric");
  }
  if (j.contains("decomposition")) {
    const json& d = j["decomposition"];
    doc.decomposition = IndexSplit{as_indices(field(d, "a", "decomposition"), doc.dim, "decomposition.a"),
                                   as_indices(field(d, "n", "decomposition"), doc.dim, "decomposition.n")};
  }
  if (j.contains("levi")) {
    const json& l = j["levi"];
    LeviData levi;
    auto g1 = std::make_shared<AlgebraDocument>(parse_document(field(l, "g1", "levi")));
    const int d1 = g1->dim;
    levi.g1 = g1;
    levi.k1 = as_indices(field(l, "k1", "levi"), d1, "levi.k1");
    levi.p1 = as_indices(field(l, "p1", "levi"), d1, "levi.p1");
    const json& ideals = field(l, "ideals", "levi");
    if (!ideals.is_array()) fail("levi.ideals", "expected a list of index lists");
    for (std::size_t i = 0; i < ideals.size(); ++i)
      levi.ideals.push_back(as_indices(ideals[i], d1, "levi.ideals[" + std::to_string(i) + "]"));
    levi.rho = as_matrix_list(field(l, "rho", "levi"), doc.dim, "levi.rho");
    if (static_cast<int>(levi.rho.size()) != d1) fail("levi.rho", "expected one matrix per g1 basis element");
    if (l.contains("isotropy")) levi.isotropy = as_matrix_list(l["isotropy"], doc.dim, "levi.isotropy");
    doc.levi = std::move(levi);
  }
  if (j.contains("abelian_extension")) {
    doc.abelian_extension =
        as_matrix_list(field(j["abelian_extension"], "derivations", "abelian_extension"), doc.dim, "abelian_extension.derivations");
  }
  return doc;
}

json to_json(const AlgebraDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  if (doc.name) j["name"] = *doc.name;
  j["dim"] = doc.dim;
  j["basis"] = doc.basis;
  json br = json::array();
  for (const auto& b : doc.brackets) br.push_back({{"i", b.i}, {"j", b.j}, {"k", b.k}, {"c", to_string(b.c)}});
  j["brackets"] = br;
  if (doc.metric) j["metric"] = matrix_json(*doc.metric);
  if (doc.decomposition) j["decomposition"] = {{"a", doc.decomposition->first}, {"n", doc.decomposition->second}};
  if (doc.reductive) j["reductive"] = {{"k", doc.reductive->first}, {"q", doc.reductive->second}};
  if (doc.levi) {
    json l;
    l["g1"] = to_json(*doc.levi->g1);
    l["k1"] = doc.levi->k1;
    l["p1"] = doc.levi->p1;
    l["ideals"] = doc.levi->ideals;
    l["rho"] = matrix_list_json(doc.levi->rho);
    if (!doc.levi->isotropy.empty()) l["isotropy"] = matrix_list_json(doc.levi->isotropy);
    j["levi"] = l;
  }
  if (doc.abelian_extension) j["abelian_extension"] = {{"derivations", matrix_list_json(*doc.abelian_extension)}};
  return j;
}

AlgebraDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_document(j);
}

LieAlgebra algebra_of(const AlgebraDocument& doc) { return LieAlgebra(doc.basis, doc.brackets); }

InnerProduct metric_of(const AlgebraDocument& doc) {
  if (doc.metric) return InnerProduct(to_matrix(*doc.metric));
  const int m = doc.reductive ? static_cast<int>(doc.reductive->second.size()) : doc.dim;
  return InnerProduct::identity(m);
}

ReductiveSplit split_of(const AlgebraDocument& doc) {
  ReductiveSplit s;
  s.algebra = algebra_of(doc);
  s.metric = metric_of(doc);
  if (doc.reductive) {
    s.k_indices = doc.reductive->first;
    s.q_indices = doc.reductive->second;
  } else {
    for (int i = 0; i < doc.dim; ++i) s.q_indices.push_back(i);
  }
  return s;
}

SolvableDecomposition decomposition_of(const AlgebraDocument& doc) {
  if (!doc.decomposition) throw InputError("document has no decomposition {a, n}");
  return {algebra_of(doc), doc.decomposition->first, doc.decomposition->second};
}

SemisimpleExtensionSpec semisimple_spec_of(const AlgebraDocument& doc) {
  if (!doc.levi) throw InputError("document has no levi data for extend-semisimple");
  if (!doc.decomposition) throw InputError("extend-semisimple needs the decomposition {a, n} of s2");
  SemisimpleExtensionSpec spec;
  spec.g1 = algebra_of(*doc.levi->g1);
  spec.k1 = doc.levi->k1;
  spec.p1 = doc.levi->p1;
  spec.ideals = doc.levi->ideals;
  spec.s2 = algebra_of(doc);
  spec.a2 = doc.decomposition->first;
  spec.n2 = doc.decomposition->second;
  spec.g2 = metric_of(doc);
  for (const auto& m : doc.levi->rho) spec.rho.push_back(to_matrix(m));
  for (const auto& m : doc.levi->isotropy) spec.isotropy2.push_back(to_matrix(m));
  return spec;
}

}  // namespace einsolv

#include "einsolv/catalog.hpp"

#include "einsolv/errors.hpp"

#include <algorithm>

namespace einsolv {

using nlohmann::json;

namespace {

struct Bracket {
  int i, j, k;
  const char* c;
};

json brackets_json(std::initializer_list<Bracket> list) {
  json out = json::array();
  for (const auto& b : list) out.push_back({{"i", b.i}, {"j", b.j}, {"k", b.k}, {"c", b.c}});
  return out;
}

json diag_json(const std::vector<std::string>& d) {
  json m = json::array();
  for (std::size_t r = 0; r < d.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < d.size(); ++c) row.push_back(r == c ? d[r] : "0");
    m.push_back(row);
  }
  return m;
}

json matrix_json(const std::vector<std::vector<std::string>>& rows) {
  json m = json::array();
  for (const auto& r : rows) m.push_back(r);
  return m;
}

json range(int from, int to) {
  json out = json::array();
  for (int i = from; i < to; ++i) out.push_back(i);
  return out;
}

json doc(const std::string& name, std::vector<std::string> basis, json brackets) {
  return {{"schema_version", "1"}, {"name", name}, {"dim", basis.size()}, {"basis", basis}, {"brackets", brackets}};
}

// The 11-dimensional two-step nilradical, in the basis
//   e0' = sqrt3 e0, e1' = e1/sqrt8, e3' = e3/sqrt12, e5' = e5/sqrt3,
//   e7' = e7/sqrt3, z2' = sqrt3 z2
// where every bracket coefficient is 1. The metric records the lengths
// of the rescaled vectors so the original basis is orthonormal.
const std::vector<std::string> n11_names = {"e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "z1", "z2"};
const std::vector<std::string> n11_metric = {"3", "1/8", "1", "1/12", "1", "1/3", "1", "1/3", "1", "1", "3"};
const std::vector<std::string> n11_ad_a = {"21", "17", "21", "19", "19", "19", "19", "19", "19", "38", "38"};

json n11_brackets(int shift) {
  const int s = shift;
  return brackets_json({{1 + s, 2 + s, 9 + s, "1"},
                        {0 + s, 1 + s, 10 + s, "1"},
                        {3 + s, 4 + s, 9 + s, "1"},
                        {5 + s, 6 + s, 9 + s, "1"},
                        {5 + s, 8 + s, 10 + s, "1"},
                        {7 + s, 8 + s, 9 + s, "1"},
                        {6 + s, 7 + s, 10 + s, "1"}});
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  auto add = [&](const std::string& name, const std::string& description, const json& d, json expected) {
    out.push_back({name, description, parse_document(d), std::move(expected)});
  };

  for (int n = 1; n <= 4; ++n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("e" + std::to_string(i));
    json d = doc("abelian-" + std::to_string(n), names, json::array());
    add("abelian-" + std::to_string(n), "abelian R^" + std::to_string(n) + " with the identity metric", d,
        {{"nilpotent", true}, {"pre_einstein", std::vector<std::string>(n, "1")}, {"nilsoliton_constant", "0"},
         {"derivation_dim", n * n}});
  }

  {
    json d = doc("heisenberg3", {"e1", "e2", "z"}, brackets_json({{0, 1, 2, "1"}}));
    d["metric"] = diag_json({"1", "1", "1"});
    d["abelian_extension"] = {{"derivations", json::array({diag_json({"1", "1", "2"})})}};
    add("heisenberg3", "three-dimensional Heisenberg algebra, identity metric", d,
        {{"nilpotent", true},
         {"pre_einstein", {"2/3", "2/3", "4/3"}},
         {"nilsoliton_constant", "-3/2"},
         {"einstein_derivation", {1, 1, 2}},
         {"derivation_dim", 6},
         {"skew_derivation_dim", 1},
         {"g_phi_dim", 3},
         {"torus_closed", true}});
  }

  {
    json d = doc("sl2", {"H", "E", "F"}, brackets_json({{0, 1, 1, "2"}, {0, 2, 2, "-2"}, {1, 2, 0, "1"}}));
    add("sl2", "sl(2,R) in the basis H, E, F", d, {{"killing", {{"8", "0", "0"}, {"0", "0", "4"}, {"0", "4", "0"}}}});
  }

  {
    json d = doc("aff1", {"e1", "e2"}, brackets_json({{0, 1, 0, "1"}}));
    d["decomposition"] = {{"a", {1}}, {"n", {0}}};
    add("aff1", "two-dimensional non-abelian algebra [e1,e2] = e1", d,
        {{"torus", {"1", "-1"}}, {"torus_closed", false}});
  }

  {
    json d = doc("paper-n11", n11_names, n11_brackets(0));
    d["metric"] = diag_json(n11_metric);
    d["abelian_extension"] = {{"derivations", json::array({diag_json(n11_ad_a)})}};
    add("paper-n11", "11-dimensional two-step nilradical of the 12-dimensional Einstein example", d,
        {{"nilpotent", true},
         {"pre_einstein", {"21/25", "17/25", "21/25", "19/25", "19/25", "19/25", "19/25", "19/25", "19/25", "38/25", "38/25"}},
         {"nilsoliton_constant", "-25"},
         {"einstein_derivation", {21, 17, 21, 19, 19, 19, 19, 19, 19, 38, 38}}});
  }

  {
    std::vector<std::string> names(n11_names.begin() + 1, n11_names.end());
    std::vector<std::string> metric(n11_metric.begin() + 1, n11_metric.end());
    json d = doc("paper-n2-10", names,
                 brackets_json({{0, 1, 8, "1"}, {2, 3, 8, "1"}, {4, 5, 8, "1"}, {4, 7, 9, "1"}, {6, 7, 8, "1"}, {5, 6, 9, "1"}}));
    d["metric"] = diag_json(metric);
    add("paper-n2-10", "10-dimensional ideal n2 = span{e1..e8, z1, z2}; no nilsoliton", d,
        {{"nilpotent", true}, {"admits_nilsoliton", false}});
  }

  {
    std::vector<std::string> names = {"A"};
    names.insert(names.end(), n11_names.begin(), n11_names.end());
    json br = n11_brackets(1);
    for (int i = 0; i < 11; ++i) br.push_back({{"i", 0}, {"j", i + 1}, {"k", i + 1}, {"c", n11_ad_a[i]}});
    json d = doc("paper-s12", names, br);
    std::vector<std::string> metric = {"249"};
    metric.insert(metric.end(), n11_metric.begin(), n11_metric.end());
    d["metric"] = diag_json(metric);
    d["decomposition"] = {{"a", {0}}, {"n", range(1, 12)}};
    add("paper-s12", "12-dimensional Einstein solvable algebra a + n with ad A|n = diag(21,17,21,19x6,38,38)", d,
        {{"einstein", true}, {"einstein_constant", "-25"}});
  }

  const json ch2_brackets = brackets_json({{0, 1, 1, "1/2"}, {0, 2, 2, "1/2"}, {0, 3, 3, "1"}, {1, 2, 3, "1"}});
  {
    json d = doc("ch2", {"A", "e1", "e2", "z"}, ch2_brackets);
    d["metric"] = diag_json({"1", "1", "1", "1"});
    d["decomposition"] = {{"a", {0}}, {"n", {1, 2, 3}}};
    add("ch2", "rank-one Einstein extension of heisenberg3 (complex hyperbolic plane)", d,
        {{"einstein", true}, {"einstein_constant", "-3/2"}});
  }

  {
    json d = doc("ch2-twisted", {"A", "e1", "e2", "z"},
                 brackets_json({{0, 1, 1, "1/2"}, {0, 1, 2, "1"}, {0, 2, 1, "-1"}, {0, 2, 2, "1/2"}, {0, 3, 3, "1"}, {1, 2, 3, "1"}}));
    d["metric"] = diag_json({"1", "1", "1", "1"});
    d["decomposition"] = {{"a", {0}}, {"n", {1, 2, 3}}};
    add("ch2-twisted", "ch2 with ad A twisted by a skew derivation; not in standard position", d, {{"standard_position", false}});
  }

  {
    json d = doc("sl2-iwasawa-ext", {"A", "e1", "e2", "z"}, ch2_brackets);
    d["metric"] = diag_json({"1", "1", "1", "1"});
    d["decomposition"] = {{"a", {0}}, {"n", {1, 2, 3}}};
    json g1 = doc("sl2-cartan", {"K", "H", "Y"}, brackets_json({{0, 1, 2, "-2"}, {0, 2, 1, "2"}, {1, 2, 0, "2"}}));
    auto pad = [](const std::vector<std::vector<std::string>>& b) {
      std::vector<std::vector<std::string>> m(4, std::vector<std::string>(4, "0"));
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m[r + 1][c + 1] = b[r][c];
      return matrix_json(m);
    };
    d["levi"] = {{"g1", g1},
                 {"k1", {0}},
                 {"p1", {1, 2}},
                 {"ideals", json::array({json::array({0, 1, 2})})},
                 {"rho", json::array({pad({{"0", "1"}, {"-1", "0"}}), pad({{"1", "0"}, {"0", "-1"}}), pad({{"0", "1"}, {"1", "0"}})})}};
    add("sl2-iwasawa-ext",
        "sl(2,R) = k1 + p1 acting on ch2 through the standard representation on span{e1, e2}", d,
        {{"beta", "1/2"}, {"alpha", "1"}, {"einstein_constant", "-3/2"}});
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  const auto& all = catalog();
  const auto it = std::find_if(all.begin(), all.end(), [&](const CatalogEntry& e) { return e.name == name; });
  if (it == all.end()) throw InputError("unknown catalog name '" + name + "'");
  return *it;
}

}  // namespace einsolv

#include <doctest.h>

#include "einsolv/catalog.hpp"
#include "einsolv/cli.hpp"
#include "einsolv/document.hpp"
#include "einsolv/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace einsolv;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_doc(const std::string& name, const json& j) {
  const auto path = std::filesystem::temp_directory_path() / ("einsolv_test_" + name + ".json");
  std::ofstream(path) << j.dump();
  return path.string();
}

json heisenberg_json() {
  return {{"schema_version", "1"},
          {"dim", 3},
          {"basis", {"e1", "e2", "z"}},
          {"brackets", json::array({{{"i", 0}, {"j", 1}, {"k", 2}, {"c", "1"}}})}};
}

}  // namespace

TEST_CASE("pre-einstein on heisenberg3") {
  const Run r = run({"pre-einstein", "heisenberg3", "--json"});
  CHECK(r.code == 0);
  const json j = r.parsed();
  CHECK(j["result"]["spectrum"] == json({"2/3", "2/3", "4/3"}));
  CHECK(j.contains("diagnostics"));
}

TEST_CASE("ricci on the twelve-dimensional example") {
  const Run r = run({"ricci", "paper-s12", "--json"});
  CHECK(r.code == 0);
  const json j = r.parsed();
  CHECK(j["result"]["deviation"].get<double>() < 1e-8);
  CHECK(j["result"]["einstein"] == true);
  CHECK(j["result"]["einstein_constant"].get<double>() < 0.0);
  CHECK(run({"einstein-check", "paper-s12"}).code == 0);
  CHECK(run({"einstein-check", "heisenberg3"}).code == 1);
}

TEST_CASE("validate reports the offending triple") {
  json bad = heisenberg_json();
  bad["brackets"].push_back({{"i", 0}, {"j", 2}, {"k", 0}, {"c", "1"}});
  const Run r = run({"validate", write_doc("broken", bad), "--json"});
  CHECK(r.code == 1);
  const json j = r.parsed();
  CHECK(j["result"]["pass"] == false);
  REQUIRE(j["result"]["defects"].size() == 1);
  CHECK(j["result"]["defects"][0]["names"] == json({"e1", "e2", "z"}));
  CHECK(j["result"]["defects"][0]["residual"] == json({"0", "0", "-1"}));

  CHECK(run({"validate", write_doc("good", heisenberg_json()), "--exact"}).code == 0);
}

TEST_CASE("input errors exit 2 with distinct messages") {
  const Run unknown = run({"ricci", "no-such-algebra"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown catalog name") != std::string::npos);

  json schema = heisenberg_json();
  schema.erase("basis");
  const Run missing = run({"validate", write_doc("schema", schema)});
  CHECK(missing.code == 2);

  json mismatch = heisenberg_json();
  mismatch["dim"] = 4;
  const Run dims = run({"validate", write_doc("dims", mismatch)});
  CHECK(dims.code == 2);

  json wrong_metric = heisenberg_json();
  wrong_metric["metric"] = json::array({{"1", "0"}, {"0", "1"}});
  const Run metric = run({"ricci", write_doc("metric", wrong_metric)});
  CHECK(metric.code == 2);

  CHECK(missing.err != dims.err);
  CHECK(dims.err != unknown.err);
  CHECK(metric.err != dims.err);

  CHECK(run({"ricci", "heisenberg3", "--no-such-flag"}).code == 2);
  CHECK(run({"torus-closed", "aff1", "--torus", "1,x"}).code == 2);
  CHECK(run({"torus-closed", "aff1", "--torus", "1,2,3"}).code == 2);
}

TEST_CASE("every subcommand emits result and diagnostics") {
  const std::vector<std::vector<std::string>> calls = {
      {"validate", "heisenberg3"},
      {"killing", "sl2"},
      {"derivations", "heisenberg3"},
      {"skew-derivations", "heisenberg3"},
      {"pre-einstein", "paper-n11"},
      {"ricci", "ch2"},
      {"einstein-check", "ch2"},
      {"nilsoliton-check", "paper-n11"},
      {"nilsoliton-flow", "heisenberg3", "--runs", "2"},
      {"extend-abelian", "heisenberg3"},
      {"extend-semisimple", "sl2-iwasawa-ext"},
      {"standard-modification", "ch2-twisted", "--steps", "3"},
      {"g-phi", "heisenberg3"},
      {"torus-closed", "aff1", "--torus", "1,-1"},
      {"catalog", "list"},
      {"catalog", "show", "heisenberg3"},
      {"extend-abelian", "heisenberg3", "--product-of-traces"},
  };
  for (auto args : calls) {
    args.push_back("--json");
    const Run r = run(args);
    CAPTURE(args[0]);
    CHECK(r.code <= 1);
    const json j = r.parsed();
    CHECK(j.is_object());
    CHECK(j.contains("result"));
    CHECK(j.contains("diagnostics"));
  }
}

TEST_CASE("text output is key: value lines") {
  const Run r = run({"nilsoliton-check", "heisenberg3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("residual: ") != std::string::npos);
  CHECK(r.out.find("einstein_derivation: [\"1\",\"1\",\"2\"]") != std::string::npos);
  const Run flow = run({"nilsoliton-flow", "heisenberg3", "--runs", "2"});
  CHECK(flow.out.find("runs[1]: ") != std::string::npos);
  CHECK(flow.err.find("heuristic") != std::string::npos);
}

TEST_CASE("catalog round trip") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const json j = to_json(e.document);
    CHECK(to_json(parse_document(j)) == j);
    CHECK(j["schema_version"] == "1");
  }
  for (const char* name : {"abelian-1", "abelian-2", "abelian-3", "abelian-4", "heisenberg3", "paper-n11",
                           "paper-n2-10", "paper-s12", "sl2-iwasawa-ext", "ch2"})
    CHECK_NOTHROW(catalog_entry(name));
  CHECK_THROWS_AS(catalog_entry("nope"), InputError);

  const Run shown = run({"catalog", "show", "paper-s12", "--json"});
  const json doc = shown.parsed()["result"]["document"];
  const Run again = run({"ricci", write_doc("s12", doc), "--json"});
  CHECK(again.code == 0);
  CHECK(again.parsed()["result"]["deviation"].get<double>() < 1e-8);
}

TEST_CASE("torus verdicts through the CLI") {
  const Run h = run({"torus-closed", "heisenberg3", "--torus", "1,-1,0", "--json"});
  CHECK(h.code == 0);
  CHECK(h.parsed()["result"]["weights"] == json::array({json::array({0.0})}));
  const Run a = run({"torus-closed", "aff1", "--torus", "1,-1", "--json"});
  CHECK(a.code == 1);
  CHECK(a.parsed()["result"]["flow_verified"] == true);
}

// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

#include "laws.hpp"

#include "einsolv/catalog.hpp"
#include "einsolv/cli.hpp"
#include "einsolv/errors.hpp"
#include "einsolv/extension.hpp"
#include "einsolv/orbit.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace einsolv;
using nlohmann::json;

namespace {

constexpr double einstein_tol = 1e-8;
constexpr double soliton_tol = 1e-8;
constexpr double trace_tol = 1e-9;
constexpr double flow_tol = 1e-6;
constexpr double spectrum_rel_tol = 1e-4;
constexpr double extension_tol = 1e-8;
constexpr double semisimple_tol = 1e-6;
constexpr double block_tol = 1e-10;
constexpr double alpha_tol = 1e-10;
constexpr double modification_tol = 1e-10;
constexpr double shrink_factor = 1e-6;
constexpr double stagnation_floor = 1e-2;

struct Verdict {
  bool pass = false;
  std::string detail;
};

json cli_json(std::vector<std::string> args, int* code = nullptr) {
  args.push_back("--json");
  std::ostringstream out, err;
  const int c = cli::run(args, out, err);
  if (code) *code = c;
  return json::parse(out.str());
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

Verdict criterion_einstein() {
  int code = 0;
  const json r = cli_json({"ricci", "paper-s12", "--tol", "1e-8"}, &code)["result"];
  const double dev = r["deviation"], c = r["einstein_constant"];
  return {code == 0 && dev < einstein_tol && c < 0.0, "deviation " + fmt(dev) + ", c " + fmt(c)};
}

Verdict criterion_restriction() {
  const json r = cli_json({"nilsoliton-check", "paper-n11", "--tol", "1e-8"})["result"];
  const double res = r["residual"];
  const json expect = {"21", "17", "21", "19", "19", "19", "19", "19", "19", "38", "38"};
  return {res < soliton_tol && r.value("einstein_derivation", json()) == expect,
          "residual " + fmt(res) + ", integers " + r.value("einstein_derivation", json()).dump()};
}

Verdict criterion_pre_einstein(double& slowest) {
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<std::string, json>> cases = {
      {"heisenberg3", {"2/3", "2/3", "4/3"}},
      {"paper-n11", {"21/25", "17/25", "21/25", "19/25", "19/25", "19/25", "19/25", "19/25", "19/25", "38/25", "38/25"}}};
  for (const auto& [name, spectrum] : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const json r = cli_json({"pre-einstein", name})["result"];
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    const double tr = r["trace_residual"];
    ok = ok && r["spectrum"] == spectrum && tr < trace_tol;
    detail += name + " trace residual " + fmt(tr) + "; ";
  }
  return {ok && slowest < 1.0, detail + "slowest " + fmt(slowest) + " s"};
}

Verdict criterion_flow() {
  const json r = cli_json({"nilsoliton-flow", "heisenberg3", "--runs", "5", "--seed", "7", "--max-iter", "20000"})["result"];
  bool ok = r["runs"].size() == 5;
  double worst = 0.0, worst_res = 0.0;
  for (const auto& run : r["runs"]) {
    std::vector<double> s = run["ricci_spectrum"];
    std::sort(s.begin(), s.end());
    const double top = s.back();
    const double dev = std::max({std::fabs(s[0] / top + 1.0), std::fabs(s[1] / top + 1.0)});
    worst = std::max(worst, dev);
    worst_res = std::max(worst_res, run["final_residual"].get<double>());
    ok = ok && run["converged"] == true && run["final_residual"].get<double>() < flow_tol && run["iterations"].get<int>() <= 20000 &&
         dev < spectrum_rel_tol && top > 0.0;
  }
  return {ok, "worst residual " + fmt(worst_res) + ", spectrum deviation " + fmt(worst)};
}

Verdict criterion_extensions() {
  const json ab = cli_json({"extend-abelian", "heisenberg3"})["result"];
  const json flat = cli_json({"extend-semisimple", "sl2-iwasawa-ext", "--rho-zero"})["result"];
  const json ext = cli_json({"extend-semisimple", "sl2-iwasawa-ext"})["result"];
  if (!ab.contains("deviation") || !flat.contains("deviation") || !ext.contains("deviation"))
    return {false, "construction failed"};
  const double c = flat["target_constant"];
  const double alpha0 = flat["alphas"][0];
  const double beta = ext["betas"][0], alpha = ext["alphas"][0], c2 = ext["target_constant"];
  const bool ok = ab["deviation"].get<double>() < extension_tol && std::fabs(alpha0 + 1.0 / c) < alpha_tol &&
                  flat["cross_block"].get<double>() < block_tol && ext["deviation"].get<double>() < semisimple_tol &&
                  beta > 0.0 && std::fabs(alpha - (-1.0 - beta) / c2) < alpha_tol;
  return {ok, "abelian deviation " + fmt(ab["deviation"]) + ", product alpha " + fmt(alpha0) + ", beta " + fmt(beta) +
                  ", alpha " + fmt(alpha) + ", deviation " + fmt(ext["deviation"])};
}

Verdict criterion_modification() {
  double worst = 0.0;
  bool ok = true;
  int count = 0;
  for (const auto& e : catalog()) {
    if (e.name == "sl2") continue;  // the only non-solvable entry
    const LieAlgebra alg = algebra_of(e.document);
    const InnerProduct g = metric_of(e.document);
    LieAlgebra cur = alg;
    std::vector<LieAlgebra> steps;
    for (int s = 0; s < 3; ++s) {
      const ModificationResult m = standard_modification(cur, g);
      ok = ok && m.complementary;
      cur = m.algebra;
      steps.push_back(cur);
    }
    worst = std::max(worst, steps[2].tensor().max_abs_diff(steps[1].tensor()));
    ++count;
  }
  return {ok && worst < modification_tol, std::to_string(count) + " entries, largest change " + fmt(worst)};
}

Verdict criterion_torus() {
  const json h = cli_json({"torus-closed", "heisenberg3"})["result"];
  const json a = cli_json({"torus-closed", "aff1", "--torus", "1,-1"})["result"];
  bool ok = h["verdict"] == "closed";
  for (const auto& w : h["weights"])
    for (const auto& x : w) ok = ok && x.get<double>() == 0.0;
  const std::vector<double> norms = a.value("flow_norms", std::vector<double>{});
  const bool shrinks = !norms.empty() && norms.back() < shrink_factor * norms.front();
  return {ok && a["verdict"] == "not_closed" && a.value("flow_verified", false) && shrinks,
          "heisenberg3 weights " + h["weights"].dump() + ", one-sided flow ratio " +
              (norms.empty() ? std::string("n/a") : fmt(norms.back() / norms.front()))};
}

Verdict criterion_nonexistence() {
  const json r = cli_json({"nilsoliton-flow", "paper-n2-10", "--runs", "20", "--seed", "1"})["result"];
  const double best = r["best_residual"];
  bool labelled = r["non_certifying"] == true;
  for (const auto& run : r["runs"]) labelled = labelled && run.value("note", std::string()).find("not a non-existence certificate") != std::string::npos;
  return {r["runs"].size() == 20 && r["all_converged"] == false && r["all_stagnated"] == true && best > stagnation_floor && labelled,
          "best residual " + fmt(best) + ", all stagnated " + r["all_stagnated"].dump()};
}

Verdict criterion_properties() {
  bool ok = true;
  std::string detail;
  for (const auto& law : test::all_laws(100, 2024)) {
    ok = ok && law.ok();
    detail += law.name + " " + std::to_string(law.passed) + "/" + std::to_string(law.trials) + "; ";
    if (!law.ok()) detail += "(" + law.first_failure + ") ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget;  // seconds
    std::function<Verdict()> run;
  };
  double pre_slowest = 0.0;
  const std::vector<Criterion> criteria = {
      {1, "twelve-dimensional example is Einstein", 1.0, criterion_einstein},
      {2, "nilsoliton restriction on the nilradical", 1.0, criterion_restriction},
      {3, "pre-Einstein derivations", 2.0, [&] { return criterion_pre_einstein(pre_slowest); }},
      {4, "flow recovers the heisenberg nilsoliton", 30.0, criterion_flow},
      {5, "abelian and semisimple extensions", 5.0, criterion_extensions},
      {6, "standard modification stabilizes", 1e9, criterion_modification},
      {7, "torus Hilbert-Mumford test", 1.0, criterion_torus},
      {8, "flow stagnates on n2 (non-certifying)", 120.0, criterion_nonexistence},
      {9, "property suites, 100 trials per law", 1e9, criterion_properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = v.pass && secs < c.budget;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << fmt(secs) << " s";
    if (c.budget < 1e8) std::cout << ", budget " << c.budget << " s";
    std::cout << "): " << v.detail << "\n";
  }
  return failures == 0 ? 0 : 1;
}

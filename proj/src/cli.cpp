#include "einsolv/cli.hpp"

#include "einsolv/catalog.hpp"
#include "einsolv/curvature.hpp"
#include "einsolv/derivations.hpp"
#include "einsolv/document.hpp"
#include "einsolv/errors.hpp"
#include "einsolv/extension.hpp"
#include "einsolv/orbit.hpp"
#include "einsolv/soliton.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace einsolv::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string source;
  std::optional<double> tol;
  std::uint64_t seed = 7;
  int max_iter = 20000;
  int runs = 1;
  double step = 1e-2;
  double growth = 1.0;
  bool json_out = false;
  bool exact = false;
  int steps = 1;
  std::vector<std::string> torus;
  bool product_of_traces = false;
  bool killing_reference = false;
  bool rho_zero = false;
  std::string group = "g-phi";
};

struct Outcome {
  json result = json::object();
  std::vector<std::string> diagnostics;
  int code = 0;
};

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(std::fabs(m(r, c)) < 1e-14 ? 0.0 : m(r, c));
    out.push_back(row);
  }
  return out;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json spectrum_json(const Matrix& symmetric_onb) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric_onb);
  return vector_json(es.eigenvalues());
}

AlgebraDocument resolve(const std::string& source) {
  if (source.empty()) throw InputError("missing source (file path or catalog name)");
  if (std::filesystem::exists(source)) return load_document(source);
  return catalog_entry(source).document;
}

double tol_or(const Options& o, double d) { return o.tol.value_or(d); }

Outcome cmd_validate(const AlgebraDocument& doc, const Options& o) {
  Outcome r;
  const LieAlgebra alg = algebra_of(doc);
  const ValidationReport rep = validate(alg, tol_or(o, 1e-9));
  r.result["pass"] = rep.pass;
  r.result["exact"] = rep.exact;
  r.result["max_residual"] = rep.max_residual;
  json defects = json::array();
  for (const auto& d : rep.defects) {
    json e = {{"triple", {d.a, d.b, d.c}},
              {"names", {alg.basis_names()[d.a], alg.basis_names()[d.b], alg.basis_names()[d.c]}}};
    json res = json::array();
    for (const auto& v : d.exact_residual) res.push_back(to_string(v));
    e["residual"] = res;
    defects.push_back(e);
    r.diagnostics.push_back("Jacobi fails on (" + alg.basis_names()[d.a] + ", " + alg.basis_names()[d.b] + ", " +
                            alg.basis_names()[d.c] + ")");
  }
  r.result["defects"] = defects;
  if (!o.exact) {
    const LieAlgebra view = LieAlgebra::from_tensor(alg.basis_names(), alg.tensor());
    r.result["float_max_residual"] = validate(view, tol_or(o, 1e-9)).max_residual;
  }
  r.code = rep.pass ? 0 : 1;
  return r;
}

Outcome cmd_killing(const AlgebraDocument& doc, const Options&) {
  Outcome r;
  r.result["killing_form"] = matrix_json(killing_form(algebra_of(doc)));
  return r;
}

json basis_json(const DerivationBasis& b) {
  json m = json::array();
  for (const auto& x : b.matrices) m.push_back(matrix_json(x));
  return {{"dim", b.size()}, {"matrices", m}};
}

Outcome cmd_derivations(const AlgebraDocument& doc, const Options&) {
  Outcome r;
  r.result = basis_json(derivation_basis(algebra_of(doc)));
  return r;
}

Outcome cmd_skew(const AlgebraDocument& doc, const Options&) {
  Outcome r;
  if (doc.reductive) throw InputError("skew-derivations expects a metric on the whole algebra");
  r.result = basis_json(skew_derivations(algebra_of(doc), metric_of(doc)));
  return r;
}

json pre_einstein_json(const PreEinsteinDerivation& phi) {
  json snapped = json::array();
  for (const auto& s : phi.snapped) snapped.push_back(to_string(s.value));
  return {{"matrix", matrix_json(phi.matrix)},
          {"eigenvalues", phi.eigenvalues},
          {"spectrum", snapped},
          {"semisimple", phi.semisimple},
          {"real_spectrum", phi.real_spectrum},
          {"defining_residual", phi.defining_residual},
          {"trace_residual", phi.trace_residual},
          {"snap_error", phi.snap_error}};
}

Outcome cmd_pre_einstein(const AlgebraDocument& doc, const Options&) {
  Outcome r;
  const PreEinsteinDerivation phi = pre_einstein(algebra_of(doc));
  r.result = pre_einstein_json(phi);
  if (!phi.semisimple || !phi.real_spectrum) {
    r.diagnostics.push_back("pre-Einstein derivation failed the semisimplicity/real-spectrum check");
    r.code = 1;
  }
  if (phi.snap_error > 1e-6) {
    r.diagnostics.push_back("eigenvalues are not within 1e-6 of rationals with denominator <= 64");
    r.code = 1;
  }
  return r;
}

json ricci_json(const RicciReport& rep) {
  return {{"ricci_operator", matrix_json(rep.ricci_operator)},
          {"ricci_tensor", matrix_json(rep.ricci_tensor)},
          {"spectrum", spectrum_json(rep.onb_operator)},
          {"einstein_constant", rep.einstein_constant},
          {"deviation", rep.deviation},
          {"scalar_curvature", rep.scalar_curvature}};
}

Outcome cmd_ricci(const AlgebraDocument& doc, const Options& o, bool check) {
  Outcome r;
  const ReductiveSplit split = split_of(doc);
  check_split(split);
  const RicciReport rep = ricci_operator(split);
  r.result = ricci_json(rep);
  const double tol = tol_or(o, 1e-8);
  const bool einstein = einstein_check(rep, tol);
  r.result["einstein"] = einstein;
  r.result["tolerance"] = tol;
  if (rep.einstein_constant >= 0.0 && rep.deviation < tol) {
    r.diagnostics.push_back("Ricci is a multiple of the identity but the constant is not negative");
  }
  if (check && !einstein) r.code = 1;
  return r;
}

Outcome cmd_nilsoliton_check(const AlgebraDocument& doc, const Options& o) {
  Outcome r;
  const LieAlgebra n = algebra_of(doc);
  const SolitonFit fit = nilsoliton_residual(n, metric_of(doc));
  const double tol = tol_or(o, 1e-8);
  r.result = {{"c", fit.c}, {"D", matrix_json(fit.d)}, {"residual", fit.residual}, {"tolerance", tol}, {"nilsoliton", fit.residual < tol}};
  if (fit.residual < tol && fit.d.norm() > 0.0) {
    try {
      const NormalizedDerivation nd = einstein_derivation_normalized(fit.d);
      json ints = json::array();
      for (const auto& z : nd.integers) ints.push_back(z.str());
      r.result["einstein_derivation"] = ints;
    } catch (const PreconditionError& e) {
      r.diagnostics.push_back(e.what());
    }
  }
  if (fit.residual >= tol) r.code = 1;
  return r;
}

Outcome cmd_flow(const AlgebraDocument& doc, const Options& o) {
  Outcome r;
  const LieAlgebra n = algebra_of(doc);
  FlowParams p;
  p.step = o.step;
  p.growth = o.growth;
  p.max_iter = o.max_iter;
  p.tol = tol_or(o, 1e-6);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < o.runs; ++i) seeds.push_back(o.seed + static_cast<std::uint64_t>(i));
  const std::vector<FlowReport> reports = flow_runs(n, seeds, p);
  json runs = json::array();
  bool all = true;
  double best = std::numeric_limits<double>::infinity();
  bool stagnated = true;
  for (const auto& f : reports) {
    const SolitonFit fit = nilsoliton_residual(f.final_bracket, InnerProduct::identity(n.dim()));
    json run = {{"seed", f.seed},
                {"iterations", f.iterations},
                {"converged", f.converged},
                {"stagnated", f.stagnated},
                {"final_residual", f.residual_history.back()},
                {"best_residual", f.best_residual},
                {"final_metric", matrix_json(f.final_metric.matrix())},
                {"ricci_spectrum", spectrum_json(f.final_ricci)},
                {"c", fit.c}};
    if (!f.note.empty()) run["note"] = f.note;
    runs.push_back(run);
    all = all && f.converged;
    stagnated = stagnated && f.stagnated;
    best = std::min(best, f.best_residual);
  }
  r.result["runs"] = runs;
  r.result["all_converged"] = all;
  r.result["all_stagnated"] = stagnated;
  r.result["best_residual"] = best;
  r.result["non_certifying"] = true;
  r.diagnostics.push_back("flow results are heuristic: stagnation does not certify that no nilsoliton exists");
  r.code = all ? 0 : 1;
  return r;
}

json extension_json(const ExtensionResult& e) {
  return {{"algebra_dim", e.assembled.algebra.dim()},
          {"basis", e.assembled.algebra.basis_names()},
          {"k", e.assembled.k_indices},
          {"q", e.assembled.q_indices},
          {"metric", matrix_json(e.assembled.metric.matrix())},
          {"betas", e.betas},
          {"alphas", e.alphas},
          {"einstein_constant", e.einstein_constant},
          {"target_constant", e.target_constant},
          {"deviation", e.deviation},
          {"spectrum", spectrum_json(e.ricci.onb_operator)}};
}

Outcome cmd_extend_abelian(const AlgebraDocument& doc, const Options& o) {
  Outcome r;
  AbelianExtensionSpec spec;
  spec.n = algebra_of(doc);
  spec.metric = metric_of(doc);
  if (doc.abelian_extension) {
    for (const auto& m : *doc.abelian_extension) spec.a_derivations.push_back(to_matrix(m));
  } else {
    spec.a_derivations.push_back(nilsoliton_residual(spec.n, spec.metric).d);
    r.diagnostics.push_back("no abelian_extension in the document; using the fitted Einstein derivation");
  }
  if (o.product_of_traces) spec.form = AbelianMetricForm::product_of_traces;
  r.result = extension_json(extend_abelian(spec));
  return r;
}

Outcome cmd_extend_semisimple(const AlgebraDocument& doc, const Options& o) {
  Outcome r;
  SemisimpleExtensionSpec spec = semisimple_spec_of(doc);
  if (o.rho_zero)
    for (auto& m : spec.rho) m.setZero();
  if (o.killing_reference) spec.reference = ReferenceForm::killing;
  const ExtensionResult e = extend_semisimple(spec);
  r.result = extension_json(e);
  // Largest Ricci entry between the p1 block and the s2 block.
  const int p = static_cast<int>(spec.p1.size());
  r.result["cross_block"] = e.ricci.ricci_tensor.topRightCorner(p, e.ricci.ricci_tensor.cols() - p).cwiseAbs().maxCoeff();
  return r;
}

Outcome cmd_modification(const AlgebraDocument& doc, const Options& o) {
  Outcome r;
  LieAlgebra cur = algebra_of(doc);
  const InnerProduct g = metric_of(doc);
  json steps = json::array();
  for (int s = 0; s < std::max(1, o.steps); ++s) {
    const ModificationResult m = standard_modification(cur, g);
    steps.push_back({{"skew_dim", m.skew_dim},
                     {"defect_dim", m.defect_dim},
                     {"complementary", m.complementary},
                     {"unchanged", m.unchanged},
                     {"max_change", m.max_change},
                     {"closure_residual", m.closure_residual}});
    if (!m.complementary) {
      r.diagnostics.push_back("Killing form is degenerate on the skew derivations (defect " + std::to_string(m.defect_dim) + ")");
      r.code = 1;
      break;
    }
    cur = m.algebra;
  }
  json br = json::array();
  const auto& t = cur.tensor();
  for (int i = 0; i < cur.dim(); ++i)
    for (int j = i + 1; j < cur.dim(); ++j)
      for (int k = 0; k < cur.dim(); ++k)
        if (std::fabs(t(i, j, k)) > 1e-12) br.push_back({{"i", i}, {"j", j}, {"k", k}, {"c", t(i, j, k)}});
  r.result["steps"] = steps;
  r.result["brackets"] = br;
  return r;
}

Outcome cmd_g_phi(const AlgebraDocument& doc, const Options& o) {
  Outcome r;
  const LieAlgebra n = algebra_of(doc);
  const DerivationBasis der = derivation_basis(n);
  const PreEinsteinDerivation phi = pre_einstein(der);
  const GPhiData data = build_g_phi(n, phi);
  json spectrum = json::array();
  for (const auto& s : data.spectrum) spectrum.push_back(to_string(s));
  json torus = json::array();
  for (const auto& t : data.torus_basis) torus.push_back(vector_json(t.diagonal()));
  r.result = {{"dim", data.basis.size()}, {"phi_spectrum", spectrum}, {"torus_basis", torus}};
  OrbitProblem problem = data.problem();
  if (o.group == "sl") {
    problem.group_basis.clear();
    const int d = n.dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (a == b && a == d - 1) continue;
        Matrix m = Matrix::Zero(d, d);
        if (a == b) {
          m(a, a) = 1.0;
          m(d - 1, d - 1) = -1.0;
        } else {
          m(a, b) = 1.0;
        }
        problem.group_basis.push_back(m);
      }
  } else if (o.group != "g-phi") {
    throw InputError("--group must be 'g-phi' or 'sl'");
  }
  r.result["group"] = o.group;
  r.result["stabilizer_dim"] = stabilizer_dimension(problem);
  r.result["derivation_dim"] = der.size();
  return r;
}

Vector parse_diag(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(to_double(parse_rational(item)));
    } catch (const InputError&) {
      throw InputError("--torus expects comma-separated rationals, got '" + text + "'");
    }
  }
  return Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Outcome cmd_torus(const AlgebraDocument& doc, const Options& o) {
  Outcome r;
  const LieAlgebra n = algebra_of(doc);
  OrbitProblem problem;
  if (!o.torus.empty()) {
    problem.mu = n;
    for (const auto& t : o.torus) {
      const Vector d = parse_diag(t);
      if (d.size() != n.dim()) throw InputError("--torus: dimension mismatch");
      problem.group_basis.push_back(d.asDiagonal());
    }
  } else {
    const GPhiData data = build_g_phi(n, pre_einstein(n));
    problem = data.torus_problem();
    r.diagnostics.push_back("torus: diagonal part of g_phi in an eigenbasis of phi");
  }
  const TorusTestResult t = torus_closed(problem);
  json weights = json::array();
  for (const auto& w : t.weights) weights.push_back(vector_json(w));
  const char* verdict = t.verdict == OrbitVerdict::closed ? "closed" : t.verdict == OrbitVerdict::not_closed ? "not_closed" : "undecided";
  r.result = {{"verdict", verdict}, {"closed", t.closed}, {"weights", weights}, {"integral_weights", t.integral_weights},
              {"slack", std::isfinite(t.slack) ? json(t.slack) : json("-inf")}};
  if (t.closed) r.result["norm_lower_bound"] = t.norm_lower_bound;
  if (t.destabilizer) {
    r.result["destabilizer"] = vector_json(*t.destabilizer);
    r.result["strict"] = t.strict;
    r.result["margin"] = t.margin;
    r.result["flow_verified"] = t.flow_verified;
    r.result["flow_norms"] = t.flow_norms;
  }
  if (t.verdict == OrbitVerdict::undecided) r.diagnostics.push_back("0 lies on the boundary of the weight polytope at tolerance");
  r.code = t.closed ? 0 : 1;
  return r;
}

void emit(const Outcome& r, const Options& o, std::ostream& out, std::ostream& err) {
  if (o.json_out) {
    out << json{{"result", r.result}, {"diagnostics", r.diagnostics}}.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : r.result.items()) {
    if (!value.is_array() || value.empty() || !value.front().is_object()) {
      out << key << ": " << value.dump() << "\n";
      continue;
    }
    // one line per record; matrices only in --json
    for (std::size_t i = 0; i < value.size(); ++i) {
      json row = value[i];
      for (auto it = row.begin(); it != row.end();) {
        if (it->is_array() && !it->empty() && it->front().is_array())
          it = row.erase(it);
        else
          ++it;
      }
      out << key << "[" << i << "]: " << row.dump() << "\n";
    }
  }
  for (const auto& d : r.diagnostics) err << "note: " << d << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"einsolv: Ricci curvature, nilsolitons and Einstein extensions of metric Lie algebras"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("source", o.source, "algebra document (JSON file) or catalog name");
    sub->add_option("--tol", o.tol, "tolerance");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--max-iter", o.max_iter, "iteration limit");
    sub->add_flag("--json", o.json_out, "print a JSON object with result and diagnostics");
    sub->add_flag("--exact", o.exact, "rational validation only");
  };
  struct Sub {
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs = {{"validate", "check the Jacobi identity exactly"},
                                 {"killing", "Killing form"},
                                 {"derivations", "basis of Der"},
                                 {"skew-derivations", "skew-symmetric derivations for the metric"},
                                 {"pre-einstein", "pre-Einstein derivation"},
                                 {"ricci", "Ricci operator of the (reductive) metric"},
                                 {"einstein-check", "Einstein test of the metric"},
                                 {"nilsoliton-check", "fit Ric = c Id + D"},
                                 {"nilsoliton-flow", "search for a nilsoliton by metric flow"},
                                 {"extend-abelian", "abelian Einstein extension of a nilsoliton"},
                                 {"extend-semisimple", "semisimple + solvable Einstein assembly"},
                                 {"standard-modification", "standard modification of a solvable algebra"},
                                 {"g-phi", "the algebra g_phi and the stabilizer of the bracket"},
                                 {"torus-closed", "Hilbert-Mumford test for a torus"}};
  std::map<std::string, CLI::App*> apps;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    apps[s.name] = sub;
  }
  apps["nilsoliton-flow"]->add_option("--runs", o.runs, "number of seeded runs (seeds seed, seed+1, ...)");
  apps["nilsoliton-flow"]->add_option("--step", o.step, "initial step size");
  apps["nilsoliton-flow"]->add_option("--growth", o.growth, "step multiplier after an accepted step");
  apps["standard-modification"]->add_option("--steps", o.steps, "number of successive modifications");
  apps["torus-closed"]->add_option("--torus", o.torus, "diagonal torus generator, comma separated (repeatable)");
  apps["extend-abelian"]->add_flag("--product-of-traces", o.product_of_traces, "use kappa tr(S_A) tr(S_A') on a (audit)");
  apps["extend-semisimple"]->add_flag("--killing-reference", o.killing_reference, "use the Killing form as reference (audit)");
  apps["extend-semisimple"]->add_flag("--rho-zero", o.rho_zero, "replace the representation by zero");
  apps["g-phi"]->add_option("--group", o.group, "group for the stabilizer: g-phi or sl");

  CLI::App* cat = app.add_subcommand("catalog", "bundled algebras");
  cat->require_subcommand(1);
  CLI::App* list = cat->add_subcommand("list", "list catalog entries");
  CLI::App* show = cat->add_subcommand("show", "print a catalog entry");
  std::string show_name;
  show->add_option("name", show_name)->required();
  for (CLI::App* s : {list, show}) s->add_flag("--json", o.json_out, "JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Outcome r;
    if (*list) {
      json entries = json::array();
      for (const auto& e : catalog()) entries.push_back({{"name", e.name}, {"description", e.description}});
      r.result["entries"] = entries;
      if (!o.json_out) {
        for (const auto& e : catalog()) out << e.name << "  " << e.description << "\n";
        return 0;
      }
    } else if (*show) {
      const CatalogEntry& e = catalog_entry(show_name);
      r.result = {{"name", e.name}, {"description", e.description}, {"document", to_json(e.document)}, {"expected", e.expected}};
      if (!o.json_out) {
        out << r.result.dump(2) << "\n";
        return 0;
      }
    } else {
      std::string which;
      for (const auto& [name, sub] : apps)
        if (*sub) which = name;
      const AlgebraDocument doc = resolve(o.source);
      if (which == "validate") r = cmd_validate(doc, o);
      else if (which == "killing") r = cmd_killing(doc, o);
      else if (which == "derivations") r = cmd_derivations(doc, o);
      else if (which == "skew-derivations") r = cmd_skew(doc, o);
      else if (which == "pre-einstein") r = cmd_pre_einstein(doc, o);
      else if (which == "ricci") r = cmd_ricci(doc, o, false);
      else if (which == "einstein-check") r = cmd_ricci(doc, o, true);
      else if (which == "nilsoliton-check") r = cmd_nilsoliton_check(doc, o);
      else if (which == "nilsoliton-flow") r = cmd_flow(doc, o);
      else if (which == "extend-abelian") r = cmd_extend_abelian(doc, o);
      else if (which == "extend-semisimple") r = cmd_extend_semisimple(doc, o);
      else if (which == "standard-modification") r = cmd_modification(doc, o);
      else if (which == "g-phi") r = cmd_g_phi(doc, o);
      else if (which == "torus-closed") r = cmd_torus(doc, o);
    }
    emit(r, o, out, err);
    return r.code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    Outcome r;
    r.result["error"] = e.what();
    r.diagnostics.push_back(e.what());
    if (o.json_out) emit(r, o, out, err);
    else err << "check failed: " << e.what() << "\n";
    return 1;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace einsolv::cli

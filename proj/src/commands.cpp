#include "cyclab/commands.hpp"

#include "cyclab/acceptance.hpp"
#include "cyclab/catalog.hpp"
#include "cyclab/classifier.hpp"
#include "cyclab/curvature.hpp"
#include "cyclab/homogeneous.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <sstream>

namespace cyclab {

namespace {

json signature_json(const Signature& s) {
  return {{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}};
}

// Ascending eigenvalues as a sign pattern, e.g. "(-,-,+)".
std::string sign_pattern(const Signature& s) {
  std::string out = "(";
  auto add = [&](char c, int count) {
    for (int i = 0; i < count; ++i) {
      if (out.size() > 1) out += ',';
      out += c;
    }
  };
  add('-', s.negative);
  add('0', s.zero);
  add('+', s.positive);
  return out + ")";
}

std::string sign_pattern(const Vector& ascending) {
  const double scale = ascending.size() ? std::max(1.0, ascending.cwiseAbs().maxCoeff()) : 1.0;
  return sign_pattern(signature_of(ascending, 1e-9 * scale));
}

json structure_block(const MetricLieAlgebra& m, double tol) {
  const StructureReport r = structure_report(m, tol);
  return {{"abelian", r.abelian},
          {"solvable", r.solvable},
          {"nilpotent", r.nilpotent},
          {"semisimple", r.semisimple},
          {"unimodular", r.unimodular},
          {"center_dim", r.center.basis.cols()},
          {"derived_dim", r.derived.basis.cols()},
          {"derived_series_dims", r.derived_series_dims},
          {"lower_central_dims", r.lower_central_dims},
          {"ad_traces", vector_json(r.ad_traces)},
          {"killing",
           {{"matrix", matrix_json(r.killing.matrix)},
            {"eigenvalues", vector_json(r.killing.eigenvalues)},
            {"signature", signature_json(r.killing.signature)},
            {"rank", r.killing.rank}}}};
}

json homogeneous_block(const MetricLieAlgebra& m, double tol) {
  const HomogeneousStructure h = tv_decompose(m, tol);
  const CyclicCheck cyc = is_cyclic(m, tol);
  const TracelessCheck tr = is_traceless(m, tol);
  const BiinvariantCheck bi = is_biinvariant(m, tol);
  const VectorialData vec = is_vectorial(m, tol);
  json out = {{"verdict", to_string(h.verdict)},
              {"norm", h.norm},
              {"component_norms", {{"S1", h.norms[0]}, {"S2", h.norms[1]}, {"S3", h.norms[2]}}},
              {"threshold", h.threshold},
              {"c12", vector_json(h.c12)},
              {"cyclic", {{"cyclic", cyc.cyclic}, {"defect", cyc.defect}, {"threshold", cyc.threshold}}},
              {"traceless", {{"traceless", tr.traceless}, {"max_trace", tr.max_trace}}},
              {"biinvariant", {{"biinvariant", bi.biinvariant}, {"u_norm", bi.u_norm}}}};
  json v = {{"vectorial", vec.vectorial}, {"residual_norm", vec.residual_norm}};
  if (vec.vectorial) {
    v["xi"] = vector_json(vec.xi);
    v["xi_norm"] = m.norm(vec.xi);
  }
  out["vectorial"] = std::move(v);
  return out;
}

json curvature_block(const MetricLieAlgebra& m, double tol) {
  const CurvatureData c = riemann(m, tol);
  const BasicSections b = basic_sections(m, c);
  return {{"ricci", matrix_json(c.ricci)},
          {"ricci_eigenvalues", vector_json(c.ricci_eigenvalues)},
          {"ricci_eigenvectors", matrix_json(c.ricci_eigenvectors)},
          {"ricci_signature", sign_pattern(c.ricci_signature)},
          {"scalar", c.scalar},
          {"basic_sectional", {{"min", b.min}, {"max", b.max}}},
          {"flat", c.flat}};
}

json report_head(const char* command, const InputDocument& doc, double tol) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"tolerance", tol},
          {"input", to_json(doc)}};
}

// ---- expected-value checks ----------------------------------------------------

bool close(double got, double want) { return std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)); }

bool matches(const json& got, const json& want) {
  if (want.is_number()) return got.is_number() && close(got.get<double>(), want.get<double>());
  if (want.is_array()) {
    if (!got.is_array() || got.size() != want.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i)
      if (!matches(got[i], want[i])) return false;
    return true;
  }
  return got == want;
}

const std::vector<std::string> kExpectedKeys = {
    "scalar", "principal_ricci", "ricci_signature", "verdict", "cyclic",
    "unimodular", "flat", "feasibility", "classification"};

// Compares the keys of `expected` that `actual` provides; the others are
// listed as not checked.
json run_checks(const json& expected, const json& actual, bool& all_pass) {
  json checks = json::array();
  json skipped = json::array();
  all_pass = true;
  if (expected.is_null()) return json::object();
  for (const auto& [key, want] : expected.items()) {
    if (std::find(kExpectedKeys.begin(), kExpectedKeys.end(), key) == kExpectedKeys.end())
      throw InvalidInput("field 'expected." + key + "': unknown key");
    if (!actual.contains(key)) {
      skipped.push_back(key);
      continue;
    }
    bool pass;
    if (key == "classification") {
      const FamilyParams w = params_from_json(want, "expected.classification");
      const FamilyParams g = params_from_json(actual[key], "classification");
      pass = same_params(g, w, 1e-7);
    } else {
      pass = matches(actual[key], want);
    }
    all_pass = all_pass && pass;
    checks.push_back({{"key", key}, {"expected", want}, {"actual", actual[key]}, {"pass", pass}});
  }
  json out = {{"pass", all_pass}, {"checks", std::move(checks)}};
  if (!skipped.empty()) out["not_checked"] = std::move(skipped);
  return out;
}

CommandResult finish(json report, const InputDocument& doc, const json& actual) {
  CommandResult r;
  bool pass = true;
  if (!doc.expected.is_null()) report["expected_checks"] = run_checks(doc.expected, actual, pass);
  r.exit_code = pass ? kExitOk : kExitValidation;
  r.report = std::move(report);
  return r;
}

LieAlgebra checked_algebra(const InputDocument& doc, double tol) {
  LieAlgebra a = LieAlgebra::from_brackets(doc.dim, doc.entries, doc.labels);
  const ValidationReport v = validate(a, tol);
  if (!v.pass) {
    std::ostringstream os;
    os << "not a Lie algebra: antisymmetry defect " << v.antisymmetry_defect << ", Jacobi defect "
       << v.jacobi_defect;
    throw ValidationFailure(os.str(), std::max(v.antisymmetry_defect, v.jacobi_defect));
  }
  return a;
}

std::vector<double> numbers(const std::vector<std::string>& args, std::size_t from, std::size_t to) {
  std::vector<double> out;
  for (std::size_t i = from; i < to; ++i) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(args[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != args[i].size() || !std::isfinite(v))
      throw InvalidInput("catalog parameter '" + args[i] + "' is not a number");
    out.push_back(v);
  }
  return out;
}

// ---- text rendering -----------------------------------------------------------

std::string scalar_text(const json& v) {
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(10) << v.get<double>();
    return os.str();
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_flat_array(const json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
}

bool is_matrix(const json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const json& x) { return is_flat_array(x) && !x.empty(); });
}

std::string row_text(const json& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + scalar_text(v[i]);
  return out + "]";
}

void render(std::ostream& os, const json& j, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      os << pad << key << ":\n";
      render(os, v, indent + 2);
    } else if (is_matrix(v)) {
      os << pad << key << ":\n";
      for (const json& row : v) os << pad << "  " << row_text(row) << "\n";
    } else if (is_flat_array(v)) {
      os << pad << key << ": " << row_text(v) << "\n";
    } else if (v.is_array()) {
      os << pad << key << ":\n";
      for (const json& item : v) {
        if (item.is_object()) {
          std::ostringstream inner;
          render(inner, item, indent + 4);
          std::string s = inner.str();
          s.replace(0, indent + 4, pad + "  - ");
          os << s;
        } else {
          os << pad << "  - " << scalar_text(item) << "\n";
        }
      }
    } else {
      os << pad << key << ": " << scalar_text(v) << "\n";
    }
  }
}

}  // namespace

double effective_tolerance(const CommandOptions& opts, const InputDocument& doc) {
  if (opts.tol) {
    if (!(*opts.tol > 0.0)) throw InvalidInput("--tol must be positive");
    return *opts.tol;
  }
  if (doc.tolerance) return *doc.tolerance;
  if (const char* env = std::getenv("CYCLAB_DEFAULT_TOL"); env && *env) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (*end != '\0' || !(t > 0.0))
      throw InvalidInput(std::string("CYCLAB_DEFAULT_TOL='") + env + "' is not a positive number");
    return t;
  }
  return kDefaultTol;
}

json params_json(const FamilyParams& p) {
  json out = {{"family", to_string(p.family)}, {"name", display_name(p)}, {"dim", p.dim},
              {"values", p.values}};
  if (!p.factors.empty()) {
    json f = json::array();
    for (const FamilyParams& q : p.factors) f.push_back(params_json(q));
    out["factors"] = std::move(f);
  }
  return out;
}

FamilyParams params_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw InvalidInput("field '" + field + "': expected an object");
  if (!j.contains("family") || !j["family"].is_string())
    throw InvalidInput("field '" + field + ".family': expected a family tag");
  FamilyParams p;
  p.family = family_from_string(j["family"].get<std::string>());
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer()) throw InvalidInput("field '" + field + ".dim': expected an integer");
    p.dim = j["dim"].get<int>();
  }
  if (j.contains("values")) {
    const json& v = j["values"];
    if (!v.is_array()) throw InvalidInput("field '" + field + ".values': expected an array");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number())
        throw InvalidInput("field '" + field + ".values[" + std::to_string(i) + "]': expected a number");
      p.values.push_back(v[i].get<double>());
    }
  }
  if (j.contains("factors")) {
    const json& f = j["factors"];
    if (!f.is_array()) throw InvalidInput("field '" + field + ".factors': expected an array");
    for (std::size_t i = 0; i < f.size(); ++i)
      p.factors.push_back(params_from_json(f[i], field + ".factors[" + std::to_string(i) + "]"));
  }
  return p;
}

CommandResult cmd_analyze(const InputDocument& doc, const CommandOptions& opts) {
  const double tol = effective_tolerance(opts, doc);
  const MetricLieAlgebra m = build_algebra(doc, tol);
  json report = report_head("analyze", doc, tol);
  report["structure"] = structure_block(m, tol);
  report["homogeneous"] = homogeneous_block(m, tol);
  report["curvature"] = curvature_block(m, tol);

  const json& h = report["homogeneous"];
  const json& c = report["curvature"];
  const json actual = {{"scalar", c["scalar"]},
                       {"principal_ricci", c["ricci_eigenvalues"]},
                       {"ricci_signature", c["ricci_signature"]},
                       {"verdict", h["verdict"]},
                       {"cyclic", h["cyclic"]["cyclic"]},
                       {"unimodular", report["structure"]["unimodular"]},
                       {"flat", c["flat"]}};
  return finish(std::move(report), doc, actual);
}

CommandResult cmd_find_cyclic(const InputDocument& doc, const CommandOptions& opts) {
  const double tol = effective_tolerance(opts, doc);
  const LieAlgebra a = checked_algebra(doc, tol);
  SearchOptions search;
  search.restarts = opts.restarts;
  search.iterations = opts.iterations;
  search.seed = opts.seed;
  search.tol = tol;
  if (search.restarts < 1 || search.iterations < 1)
    throw InvalidInput("--restarts and --iters must be positive");

  const CyclicFeasibilityResult r = find_cyclic_metric(a, search);
  json block = {{"status", to_string(r.status)},
                {"seed", opts.seed},
                {"restarts", opts.restarts},
                {"iterations", opts.iterations},
                {"nullspace_dim", r.system.nullspace.size()},
                {"constraint_threshold", r.system.threshold},
                {"best_min_eigenvalue", r.best_min_eigenvalue}};
  if (!r.certificate.empty()) block["certificate"] = r.certificate;
  if (r.dual_certificate) block["dual_certificate"] = matrix_json(*r.dual_certificate);
  if (r.solution) {
    block["witness_gram"] = matrix_json(*r.solution);
    block["witness_cyclic_defect"] = r.solution_cyclic_defect;
    InputDocument witness = doc;
    witness.gram = *r.solution;
    witness.expected = json();
    block["witness_document"] = to_json(witness);
  }

  if (killing_form(a, tol).rank == a.dim() && a.dim() > 0) {
    const SemisimpleCyclicSolution s = semisimple_cyclic_metrics(a, search);
    json ss = {{"b_orthonormal_basis", matrix_json(s.b_orthonormal_basis)},
               {"epsilons", vector_json(s.epsilons)},
               {"solution_space_dim", s.solution_space_dim},
               {"feasible", s.feasible},
               {"best_margin", s.best_margin}};
    if (s.lambdas) ss["lambdas"] = vector_json(*s.lambdas);
    if (s.gram) {
      ss["gram"] = matrix_json(*s.gram);
      ss["cross_check_defect"] = s.cross_check_defect;
    }
    block["semisimple"] = std::move(ss);
  }

  json report = report_head("find-cyclic", doc, tol);
  report["feasibility"] = std::move(block);
  const json actual = {{"feasibility", report["feasibility"]["status"]}};
  return finish(std::move(report), doc, actual);
}

CommandResult cmd_classify(const InputDocument& doc, const CommandOptions& opts) {
  const double tol = effective_tolerance(opts, doc);
  if (doc.dim > 5) throw Unsupported("classification covers dimensions up to 5");
  const MetricLieAlgebra m = build_algebra(doc, tol);
  const FamilyIdentification id = classify(m, tol);
  json factors = json::array();
  for (const Subspace& f : id.factors) factors.push_back(matrix_json(f.basis));
  json block = params_json(id.params);
  block["unimodular"] = id.unimodular;
  block["decomposable"] = id.params.family == Family::DirectProduct;
  block["witness"] = matrix_json(id.witness);
  block["residual"] = id.residual;
  block["factor_bases"] = std::move(factors);

  json report = report_head("classify", doc, tol);
  report["classification"] = block;
  const json actual = {{"classification", params_json(id.params)},
                       {"unimodular", id.unimodular}};
  return finish(std::move(report), doc, actual);
}

CommandResult cmd_catalog(const std::vector<std::string>& args) {
  if (args.empty()) throw InvalidInput("catalog needs a family tag");
  CatalogEntry e;
  if (args[0] == "DirectProduct") {
    std::vector<CatalogEntry> parts;
    std::size_t start = 1;
    for (std::size_t i = 1; i <= args.size(); ++i) {
      if (i < args.size() && args[i] != "/") continue;
      if (i == start) throw InvalidInput("DirectProduct: empty factor");
      if (args[start] == "DirectProduct") throw InvalidInput("DirectProduct: nested products are flattened; list the factors");
      parts.push_back(make_named(args[start], numbers(args, start + 1, i)));
      start = i + 1;
    }
    if (parts.size() < 2) throw InvalidInput("DirectProduct needs at least two factors separated by '/'");
    e = make_direct_product(parts);
  } else if (args[0] == "Semidirect") {
    throw InvalidInput("Semidirect entries need action matrices and are built through the library");
  } else {
    e = make_named(args[0], numbers(args, 1, args.size()));
  }

  InputDocument doc = document_from(e.algebra);
  doc.description = display_name(e.params);
  json expected = json::object();
  const ReferenceInvariants& ref = e.reference;
  if (ref.scalar) expected["scalar"] = *ref.scalar;
  if (ref.principal_ricci) {
    expected["principal_ricci"] = vector_json(*ref.principal_ricci);
    expected["ricci_signature"] = sign_pattern(*ref.principal_ricci);
  }
  if (ref.verdict) expected["verdict"] = to_string(*ref.verdict);
  if (ref.cyclic) expected["cyclic"] = *ref.cyclic;
  if (ref.unimodular) expected["unimodular"] = *ref.unimodular;
  if (ref.cyclic.value_or(false) && e.algebra.dim() <= 5)
    expected["classification"] = params_json(canonicalize(e.params));
  if (!expected.empty()) doc.expected = std::move(expected);

  CommandResult r;
  r.report = to_json(doc);
  return r;
}

CommandResult cmd_selftest(const std::vector<int>& only) {
  std::vector<int> ids;
  for (int id = 1; id <= 10; ++id)
    if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) ids.push_back(id);
  for (int id : only)
    if (id < 1 || id > 10) throw InvalidInput("selftest criteria are numbered 1 to 10");

  std::vector<std::future<CriterionResult>> jobs;
  for (int id : ids) jobs.push_back(std::async(std::launch::async, run_criterion, id));

  CommandResult r;
  json rows = json::array();
  bool all = true;
  for (auto& job : jobs) {
    const CriterionResult c = job.get();
    all = all && c.pass;
    rows.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  r.report = {{"schema_version", kSchemaVersion}, {"command", "selftest"}, {"pass", all},
              {"criteria", std::move(rows)}};
  r.exit_code = all ? kExitOk : kExitValidation;
  return r;
}

std::string render_machine(const json& report) { return report.dump(2) + "\n"; }

std::string render_text(const json& report) {
  std::ostringstream os;
  if (report.value("command", "") == "selftest") {
    for (const json& c : report["criteria"])
      os << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << std::setw(2) << c["id"].get<int>()
         << "  " << c["name"].get<std::string>() << ": " << c["detail"].get<std::string>() << "\n";
    os << (report["pass"].get<bool>() ? "all criteria passed" : "some criteria failed") << "\n";
    return os.str();
  }
  json shown = json::object();
  for (const auto& [key, v] : report.items())
    if (key != "input" && key != "schema_version") shown[key] = v;
  render(os, shown, 0);
  return os.str();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvalidInput*>(&e)) return kExitInvalidInput;
  if (dynamic_cast<const Unsupported*>(&e)) return kExitUnsupported;
  return kExitValidation;
}

}  // namespace cyclab

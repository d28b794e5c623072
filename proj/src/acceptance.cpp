#include "cyclab/acceptance.hpp"

#include "cyclab/catalog.hpp"
#include "cyclab/classifier.hpp"
#include "cyclab/curvature.hpp"
#include "cyclab/feasibility.hpp"
#include "cyclab/homogeneous.hpp"
#include "cyclab/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace cyclab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string sci(double x) {
  std::ostringstream os;
  os << std::setprecision(2) << std::scientific << x;
  return os.str();
}

Vector unit(int n, int i) { return Vector::Unit(n, i); }

// ---- 1 ----------------------------------------------------------------------

CriterionResult gn_ricci() {
  CriterionResult r{1, "Gn Ricci eigen-data and scalar curvature (n = 5)", false, "", 0.0};
  const auto t0 = Clock::now();
  Rng rng(101);
  double worst_ricci = 0.0, worst_eigen = 0.0, worst_scalar = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    std::vector<double> a(4);
    for (double& x : a) x = uniform(rng, -3.0, 3.0);
    const CurvatureData c = riemann(make_gn(a).algebra);

    const double sum = std::accumulate(a.begin(), a.end(), 0.0);
    double sum2 = 0.0, pairs = 0.0;
    for (int i = 0; i < 4; ++i) {
      sum2 += a[i] * a[i];
      for (int j = i + 1; j < 4; ++j) pairs += a[i] * a[j];
    }
    Vector d(5);
    for (int i = 0; i < 4; ++i) d(i) = -a[i] * sum;
    d(4) = -sum2;
    const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
    worst_ricci = std::max(worst_ricci,
                           (c.ricci - Matrix(d.asDiagonal())).cwiseAbs().maxCoeff() / scale);
    std::sort(d.data(), d.data() + 5);
    worst_eigen = std::max(worst_eigen, (c.ricci_eigenvalues - d).cwiseAbs().maxCoeff() / scale);
    worst_scalar = std::max(worst_scalar, rel(c.scalar, -2.0 * (sum2 + pairs)));
  }
  r.seconds = seconds_since(t0);
  r.pass = worst_ricci <= 1e-9 && worst_eigen <= 1e-9 && worst_scalar <= 1e-9 && r.seconds < 1.0;
  r.detail = "100 draws; max rel err Ric " + sci(worst_ricci) + ", eigenvalues " +
             sci(worst_eigen) + ", scalar " + sci(worst_scalar) + "; limit 1 s";
  return r;
}

// ---- 2 ----------------------------------------------------------------------

CriterionResult hnp1_curvature() {
  CriterionResult r{2, "Hnp1 curvature components, sections, Ricci and scalar", false, "", 0.0};
  const auto t0 = Clock::now();
  Rng rng(202);
  double worst = 0.0;
  std::string where;
  auto track = [&](double err, const std::string& what) {
    if (err > worst) {
      worst = err;
      where = what;
    }
  };
  for (int draw = 0; draw < 100; ++draw) {
    const int m = 2 + draw % 3;
    const int n = m + 2;
    std::vector<double> rho(m), lambda(m);
    for (double& x : rho) x = uniform(rng, -3.0, 3.0);
    double partial = 0.0;
    for (int i = 0; i + 1 < m; ++i) partial += (lambda[i] = uniform(rng, -3.0, 3.0));
    lambda[m - 1] = -partial;

    const MetricLieAlgebra alg = make_hnp1(rho, lambda).algebra;
    const CurvatureData c = riemann(alg);
    double scale = 1.0;
    for (int i = 0; i < m; ++i) scale = std::max({scale, rho[i] * rho[i], lambda[i] * lambda[i]});

    auto check = [&](int i, int j, int k, const Vector& want, const char* what) {
      const Vector got = curvature_apply(c, unit(n, i), unit(n, j), unit(n, k));
      track((got - want).cwiseAbs().maxCoeff() / scale, what);
    };
    const int u0 = 0, v0 = 1;
    for (int i = 0; i < m; ++i) {
      const int vi = 2 + i;
      const double ri = rho[i], li = lambda[i];
      check(u0, vi, u0, -ri * ri * unit(n, vi), "R(u0,vi)u0");
      check(v0, vi, v0, -li * li * unit(n, vi), "R(v0,vi)v0");
      check(u0, vi, v0, -li * ri * unit(n, vi), "R(u0,vi)v0");
      check(v0, vi, u0, -li * ri * unit(n, vi), "R(v0,vi)u0");
      check(u0, vi, vi, ri * (ri * unit(n, u0) + li * unit(n, v0)), "R(u0,vi)vi");
      check(v0, vi, vi, li * (ri * unit(n, u0) + li * unit(n, v0)), "R(v0,vi)vi");
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        const int vj = 2 + j;
        const double w = lambda[i] * lambda[j] + rho[i] * rho[j];
        check(vi, vj, vi, -w * unit(n, vj), "R(vi,vj)vi");
        check(vi, vj, vj, w * unit(n, vi), "R(vi,vj)vj");
        track(std::abs(sectional(alg, c, unit(n, vi), unit(n, vj)) + w) / scale, "K(vi,vj)");
      }
      track(std::abs(sectional(alg, c, unit(n, u0), unit(n, vi)) + ri * ri) / scale, "K(u0,vi)");
      track(std::abs(sectional(alg, c, unit(n, v0), unit(n, vi)) + li * li) / scale, "K(v0,vi)");
    }
    track(std::abs(sectional(alg, c, unit(n, u0), unit(n, v0))) / scale, "K(u0,v0)");

    double sr = 0.0, srr = 0.0, sll = 0.0, slr = 0.0;
    for (int i = 0; i < m; ++i) {
      sr += rho[i];
      srr += rho[i] * rho[i];
      sll += lambda[i] * lambda[i];
      slr += lambda[i] * rho[i];
    }
    Matrix ric = Matrix::Zero(n, n);
    ric(u0, u0) = -srr;
    ric(v0, v0) = -sll;
    ric(u0, v0) = ric(v0, u0) = -slr;
    for (int i = 0; i < m; ++i) ric(2 + i, 2 + i) = -rho[i] * sr;
    track((c.ricci - ric).cwiseAbs().maxCoeff() / std::max(scale, ric.cwiseAbs().maxCoeff()),
          "Ricci entries");
    track(rel(c.scalar, -sll - srr - sr * sr), "scalar");
  }
  r.seconds = seconds_since(t0);
  r.pass = worst <= 1e-9;
  r.detail = "100 draws, n+1 in {4,5,6}; max rel err " + sci(worst) +
             (where.empty() ? "" : " (" + where + ")");
  return r;
}

// ---- 3 ----------------------------------------------------------------------

CriterionResult sl2_ricci() {
  CriterionResult r{3, "sl(2,R) cyclic metrics: cyclicity and principal Ricci", false, "", 0.0};
  const auto t0 = Clock::now();
  Rng rng(303);
  double worst_defect = 0.0, worst_ricci = 0.0;
  int bad_signature = 0;
  for (int draw = 0; draw < 50; ++draw) {
    const double l1 = uniform(rng, 0.1, 5.0), l2 = uniform(rng, 0.1, 5.0);
    const MetricLieAlgebra m = make_sl2_cyclic(l1, l2).algebra;
    worst_defect = std::max(worst_defect, is_cyclic(m).defect);
    const CurvatureData c = riemann(m);
    std::array<double, 3> want{-2.0 * l2 * (l1 + l2), -2.0 * l1 * (l1 + l2), 2.0 * l1 * l2};
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 3; ++i)
      worst_ricci = std::max(worst_ricci, rel(c.ricci_eigenvalues(i), want[i]));
    if (!(c.ricci_signature == Signature{1, 2, 0})) ++bad_signature;
  }
  r.seconds = seconds_since(t0);
  r.pass = worst_defect <= 1e-10 && worst_ricci <= 1e-9 && bad_signature == 0;
  r.detail = "50 draws; max cyclic defect " + sci(worst_defect) + ", max rel err " +
             sci(worst_ricci) + ", signature (-,-,+) failures " + std::to_string(bad_signature);
  return r;
}

// ---- 4 ----------------------------------------------------------------------

CriterionResult biinvariant() {
  CriterionResult r{4, "so(3) with the -B metric: T3 structure, Ric = -B/4, sections >= 0", false,
                    "", 0.0};
  const auto t0 = Clock::now();
  const LieAlgebra so3 =
      LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}});
  Rng rng(404);
  double s12 = 0.0, ric = 0.0, min_kappa = 0.0, quarter = 0.0;
  bool t3 = true;
  for (int trial = 0; trial < 6; ++trial) {
    // Trial 0 uses the standard basis, the rest random bases.
    const LieAlgebra a = trial == 0 ? so3 : so3.in_basis(random_invertible(3, rng));
    const Matrix b = killing_form(a).matrix;
    const MetricLieAlgebra m(a, InnerProduct(-b));
    const HomogeneousStructure h = tv_decompose(m);
    s12 = std::max({s12, h.norms[0], h.norms[1]});
    t3 = t3 && h.verdict == TvClass::T3;
    const CurvatureData c = riemann(m);
    ric = std::max(ric, (c.ricci + 0.25 * b).cwiseAbs().maxCoeff());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const double k = kappa(m, c, unit(3, i), unit(3, j));
        min_kappa = std::min(min_kappa, k);
        const double bracket_norm = m.norm(bracket(m, unit(3, i), unit(3, j)));
        quarter = std::max(quarter, std::abs(k - 0.25 * bracket_norm * bracket_norm));
      }
  }
  r.seconds = seconds_since(t0);
  r.pass = s12 <= 1e-10 && t3 && ric <= 1e-10 && min_kappa >= -1e-12 && quarter <= 1e-10;
  r.detail = "6 bases; max |S1|,|S2| " + sci(s12) + ", max |Ric + B/4| " + sci(ric) +
             ", min basic kappa " + sci(min_kappa) + ", max |kappa - |[X,Y]|^2/4| " + sci(quarter);
  return r;
}

// ---- 5 ----------------------------------------------------------------------

CriterionResult obstructions() {
  CriterionResult r{5, "cyclic metric existence: Heisenberg, so(3), sl(2,R)", false, "", 0.0};
  std::ostringstream detail;
  bool pass = true;
  double total = 0.0;

  auto timed = [&](auto&& fn) {
    const auto t0 = Clock::now();
    fn();
    const double s = seconds_since(t0);
    total += s;
    if (s > 5.0) pass = false;
    return s;
  };

  const LieAlgebra heis = LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}});
  FeasibilityStatus hs{};
  const double th = timed([&] { hs = find_cyclic_metric(heis).status; });
  pass = pass && hs == FeasibilityStatus::CertifiedInfeasible;
  detail << "Heisenberg " << to_string(hs) << " (" << std::fixed << std::setprecision(2) << th
         << " s)";

  const LieAlgebra so3 =
      LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}});
  FeasibilityStatus ss{};
  bool semisimple_feasible = true;
  const double ts = timed([&] {
    ss = find_cyclic_metric(so3).status;
    semisimple_feasible = semisimple_cyclic_metrics(so3).feasible;
  });
  pass = pass && ss != FeasibilityStatus::Feasible && !semisimple_feasible;
  detail << "; so(3) " << to_string(ss) << ", diagonal search "
         << (semisimple_feasible ? "feasible" : "infeasible") << " (" << ts << " s)";

  // H, E, F with [H,E] = 2E, [H,F] = -2F, [E,F] = H.
  const LieAlgebra sl2 =
      LieAlgebra::from_brackets(3, {{0, 1, 1, 2.0}, {0, 2, 2, -2.0}, {1, 2, 0, 1.0}});
  CyclicFeasibilityResult res;
  const double tl = timed([&] { res = find_cyclic_metric(sl2); });
  double defect = std::numeric_limits<double>::infinity();
  if (res.status == FeasibilityStatus::Feasible && res.solution)
    defect = is_cyclic(MetricLieAlgebra(sl2, InnerProduct(*res.solution))).defect;
  pass = pass && defect <= 1e-8;
  detail << "; sl(2,R) " << to_string(res.status) << ", witness defect " << sci(defect) << " ("
         << tl << " s); limit 5 s each";

  r.seconds = total;
  r.pass = pass;
  r.detail = detail.str();
  return r;
}

// ---- 6 ----------------------------------------------------------------------

CriterionResult curvature_signs() {
  CriterionResult r{6, "curvature sign properties of cyclic metrics (dims 3-5)", false, "", 0.0};
  const auto t0 = Clock::now();
  Rng rng(606);
  int violations = 0, abelian = 0, solvable = 0, unimodular = 0, nonunimodular = 0;
  std::string first;
  for (int draw = 0; draw < 240; ++draw) {
    const int dim = 3 + draw % 3;
    try {
      const MetricLieAlgebra m = random_cyclic(dim, rng);
      const CurvaturePropertyReport rep = curvature_property_suite(m);
      for (const PropertyClause& cl : rep.clauses) {
        if (!cl.applicable) continue;
        if (cl.name.rfind("solvable", 0) == 0) ++solvable;
        if (cl.name.rfind("unimodular nonabelian", 0) == 0) ++unimodular;
        if (cl.name.rfind("nonunimodular", 0) == 0) ++nonunimodular;
        if (!cl.pass) {
          ++violations;
          if (first.empty()) first = cl.name + " (" + cl.detail + ")";
        }
      }
      if (structure_report(m).abelian) ++abelian;
    } catch (const std::exception& e) {
      ++violations;
      if (first.empty()) first = e.what();
    }
  }
  r.seconds = seconds_since(t0);
  r.pass = violations == 0;
  r.detail = "240 algebras (" + std::to_string(abelian) + " abelian, " +
             std::to_string(solvable) + " solvable nonabelian, " + std::to_string(unimodular) +
             " unimodular nonabelian, " + std::to_string(nonunimodular) + " nonunimodular); " +
             std::to_string(violations) + " violations" + (first.empty() ? "" : ": " + first);
  return r;
}

// ---- 7, 8 -------------------------------------------------------------------

std::vector<MetricLieAlgebra> structure_inputs() {
  Rng rng(707);
  std::vector<MetricLieAlgebra> out;
  for (int i = 0; i < 500; ++i) {
    const int dim = 2 + i % 5;
    if (i % 4 == 3 && dim >= 3 && dim <= 5)
      out.push_back(random_cyclic(dim, rng));
    else
      out.push_back(random_metric_lie_algebra(dim, rng));
  }
  return out;
}

CriterionResult tv_decomposition() {
  CriterionResult r{7, "three-way decomposition of the homogeneous structure (dims 2-6)", false,
                    "", 0.0};
  const auto t0 = Clock::now();
  const std::vector<MetricLieAlgebra> inputs = structure_inputs();
  double recon = 0.0, ortho = 0.0;
  int cyclic_mismatch = 0, traceless_mismatch = 0, cyclic_count = 0, unimodular_count = 0;
  for (const MetricLieAlgebra& m : inputs) {
    const HomogeneousStructure h = tv_decompose(m);
    const Matrix& f = m.frame();
    const Tensor3 s = h.S.in_frame(f);
    std::array<Tensor3, 3> comp;
    for (int i = 0; i < 3; ++i) comp[i] = h.components[i].in_frame(f);
    const double norm2 = std::max(s.squared_norm(), 1e-300);
    const Tensor3 diff = s - comp[0] - comp[1] - comp[2];
    recon = std::max(recon, std::sqrt(diff.squared_norm() / norm2));
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        ortho = std::max(ortho, std::abs(contract(comp[a], comp[b])) / norm2);

    const bool cyclic = is_cyclic(m).cyclic;
    cyclic_count += cyclic;
    if (cyclic != (h.norms[2] <= h.threshold)) ++cyclic_mismatch;
    const bool unimodular = structure_report(m).unimodular;
    unimodular_count += unimodular;
    if (is_traceless(m).traceless != unimodular) ++traceless_mismatch;
  }
  r.seconds = seconds_since(t0);
  r.pass = recon <= 1e-9 && ortho <= 1e-9 && cyclic_mismatch == 0 && traceless_mismatch == 0;
  r.detail = "500 algebras (" + std::to_string(cyclic_count) + " cyclic, " +
             std::to_string(unimodular_count) + " unimodular); reconstruction " + sci(recon) +
             ", orthogonality " + sci(ortho) + ", cyclic/S3 mismatches " +
             std::to_string(cyclic_mismatch) + ", traceless/unimodular mismatches " +
             std::to_string(traceless_mismatch);
  return r;
}

CriterionResult torsion_round_trip() {
  CriterionResult r{8, "torsion to structure round trip", false, "", 0.0};
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const MetricLieAlgebra& m : structure_inputs()) {
    const Tensor3 s = koszul_tensor(m);
    const double scale = std::max(s.max_abs(), 1e-300);
    const Tensor3 via_s = structure_from_torsion(torsion_from_structure(s));
    const Tensor3 via_bracket = structure_from_torsion(cartan_schouten_torsion(m));
    worst = std::max({worst, (via_s - s).max_abs() / scale, (via_bracket - s).max_abs() / scale});
  }
  r.seconds = seconds_since(t0);
  r.pass = worst <= 1e-10;
  r.detail = "500 algebras; max rel err " + sci(worst);
  return r;
}

// ---- 9 ----------------------------------------------------------------------

CriterionResult classification() {
  CriterionResult r{9, "classification round trip in dimensions 3, 4, 5", false, "", 0.0};
  const auto t0 = Clock::now();
  Rng rng(909);
  int total = 0, wrong = 0, decomposed_ok = 0, decomposed_total = 0;
  double worst_residual = 0.0;
  std::string first;
  auto run = [&](const MetricLieAlgebra& input, const FamilyParams& want) {
    ++total;
    try {
      const FamilyIdentification id = classify(random_orthonormal_rebase(input, rng));
      worst_residual = std::max(worst_residual, id.residual);
      if (!same_params(id.params, want, 1e-8) || id.residual > 1e-8) {
        ++wrong;
        if (first.empty())
          first = display_name(id.params) + " instead of " + display_name(want);
        return false;
      }
      return true;
    } catch (const std::exception& e) {
      ++wrong;
      if (first.empty()) first = display_name(want) + ": " + e.what();
      return false;
    }
  };

  for (int dim = 3; dim <= 5; ++dim)
    for (int draw = 0; draw < 210; ++draw) {
      const CatalogEntry e = random_catalog_draw(dim, rng, draw);
      run(e.algebra, canonicalize(e.params));
    }
  for (int draw = 0; draw < 30; ++draw) {
    std::vector<double> sig{uniform(rng, -3, 3), uniform(rng, -3, 3)};
    std::vector<double> mu{uniform(rng, 0.3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3)};
    const CatalogEntry e = make_hnp_hat(sig, mu);
    run(e.algebra, canonicalize(e.params));
  }
  // Decomposable cases, expected in product form.
  const FamilyParams line{Family::Abelian, {}, 1, {}};
  for (int draw = 0; draw < 25; ++draw) {
    const double a = uniform(rng, 0.3, 3), b = -uniform(rng, 0.3, 3);
    const FamilyParams want = canonicalize(
        {Family::DirectProduct, {}, 4, {FamilyParams{Family::Gn, {a, b}, 3, {}}, line}});
    ++decomposed_total;
    if (run(make_gn({a, b, 0.0}).algebra, want)) ++decomposed_ok;
  }
  for (int draw = 0; draw < 25; ++draw) {
    const double rho = uniform(rng, 0.3, 3), sigma = uniform(rng, 0.3, 3),
                 lambda = uniform(rng, 0.3, 3);
    const FamilyParams want = canonicalize(
        {Family::DirectProduct, {}, 5,
         {FamilyParams{Family::Hnp1, {rho, sigma, lambda}, 4, {}}, line}});
    ++decomposed_total;
    if (run(make_h5(rho, sigma, 0.0, lambda, -lambda).algebra, want)) ++decomposed_ok;
  }
  r.seconds = seconds_since(t0);
  r.pass = wrong == 0 && decomposed_ok == decomposed_total && r.seconds < 30.0;
  r.detail = std::to_string(total) + " classifications (630 family draws, 30 Hhat, " +
             std::to_string(decomposed_total) + " decomposable); " + std::to_string(wrong) +
             " wrong; max witness residual " + sci(worst_residual) + "; limit 30 s" +
             (first.empty() ? "" : "; first failure: " + first);
  return r;
}

// ---- 10 ---------------------------------------------------------------------

CriterionResult semidirect() {
  CriterionResult r{10, "semidirect sums: cyclic iff the action is selfadjoint", false, "", 0.0};
  const auto t0 = Clock::now();
  Rng rng(1010);
  int symmetric_fail = 0, skew_fail = 0;
  double worst_symmetric = 0.0, least_skew = std::numeric_limits<double>::infinity();
  for (int draw = 0; draw < 100; ++draw) {
    const CatalogEntry e = make_semidirect(random_semidirect(rng, true));
    const CyclicCheck c = is_cyclic(e.algebra);
    worst_symmetric = std::max(worst_symmetric, c.defect);
    if (!c.cyclic || !e.reference.cyclic.value_or(false)) ++symmetric_fail;
  }
  for (int draw = 0; draw < 100; ++draw) {
    const CatalogEntry e = make_semidirect(random_semidirect(rng, false));
    const CyclicCheck c = is_cyclic(e.algebra);
    least_skew = std::min(least_skew, c.defect);
    if (c.defect <= 1e-6 || e.reference.cyclic.value_or(true)) ++skew_fail;
  }
  r.seconds = seconds_since(t0);
  r.pass = symmetric_fail == 0 && skew_fail == 0;
  r.detail = "selfadjoint: " + std::to_string(100 - symmetric_fail) + "/100 cyclic (max defect " +
             sci(worst_symmetric) + "); non-symmetric: " + std::to_string(100 - skew_fail) +
             "/100 with defect > 1e-6 (min " + sci(least_skew) + ")";
  return r;
}

}  // namespace

CriterionResult run_criterion(int id) {
  try {
    switch (id) {
      case 1: return gn_ricci();
      case 2: return hnp1_curvature();
      case 3: return sl2_ricci();
      case 4: return biinvariant();
      case 5: return obstructions();
      case 6: return curvature_signs();
      case 7: return tv_decomposition();
      case 8: return torsion_round_trip();
      case 9: return classification();
      case 10: return semidirect();
      default: break;
    }
  } catch (const std::exception& e) {
    return CriterionResult{id, "criterion " + std::to_string(id), false,
                           std::string("unexpected exception: ") + e.what(), 0.0};
  }
  return CriterionResult{id, "unknown", false, "no criterion with this number", 0.0};
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id)
    if (only.empty() || std::find(only.begin(), only.end(), id) != only.end())
      out.push_back(run_criterion(id));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name << ": "
     << r.detail << " [" << std::fixed << std::setprecision(2) << r.seconds << " s]";
  return os.str();
}

}  // namespace cyclab

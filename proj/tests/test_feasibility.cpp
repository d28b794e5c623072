#include "cyclab/catalog.hpp"
#include "cyclab/feasibility.hpp"
#include "cyclab/homogeneous.hpp"
#include "cyclab/random.hpp"

#include "support.hpp"

using namespace cyclab;

namespace {

LieAlgebra heisenberg() { return LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}}); }
LieAlgebra so3() { return LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}}); }
LieAlgebra sl2() { return LieAlgebra::from_brackets(3, {{0, 1, 1, 2.0}, {0, 2, 2, -2.0}, {1, 2, 0, 1.0}}); }

double min_eigenvalue(const Matrix& g) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(g).eigenvalues()(0);
}

}  // namespace

TEST_CASE("cyclic residuals are linear in the Gram matrix") {
  Rng rng(31);
  const LieAlgebra a = random_lie_algebra(4, rng);
  const Matrix g1 = random_positive_definite(4, rng), g2 = random_positive_definite(4, rng);
  const Vector lhs = cyclic_residuals(a, 2.0 * g1 - 0.5 * g2);
  const Vector rhs = 2.0 * cyclic_residuals(a, g1) - 0.5 * cyclic_residuals(a, g2);
  CHECK(oracle::max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("symmetric coordinates round trip") {
  Rng rng(32);
  const Matrix s = random_positive_definite(5, rng);
  CHECK(oracle::max_abs(from_symmetric_coordinates(5, to_symmetric_coordinates(s)) - s) < 1e-14);
  CHECK_CLOSE(to_symmetric_coordinates(s).norm(), s.norm(), 1e-12);
}

TEST_CASE("Heisenberg: the only constraint forces G33 = 0") {
  const CyclicConstraintSystem sys = cyclic_constraint_system(heisenberg());
  for (const Matrix& g : sys.nullspace) {
    CHECK(std::abs(g(2, 2)) < 1e-12);
    CHECK(oracle::max_abs(cyclic_residuals(heisenberg(), g)) < 1e-12);
  }
  const CyclicFeasibilityResult r = find_cyclic_metric(heisenberg());
  CHECK(r.status == FeasibilityStatus::CertifiedInfeasible);
  CHECK_FALSE(r.solution.has_value());
  CHECK(r.certificate.find("G(3,3) = 0") != std::string::npos);
}

TEST_CASE("so(3) admits no cyclic metric") {
  const CyclicFeasibilityResult r = find_cyclic_metric(so3());
  CHECK(r.status == FeasibilityStatus::CertifiedInfeasible);
  // a positive definite matrix orthogonal to every solution
  REQUIRE(r.dual_certificate.has_value());
  CHECK(min_eigenvalue(*r.dual_certificate) > 0.0);
  for (const Matrix& g : r.system.nullspace)
    CHECK(std::abs((*r.dual_certificate).cwiseProduct(g).sum()) < 1e-9);
  const SemisimpleCyclicSolution s = semisimple_cyclic_metrics(so3());
  CHECK_FALSE(s.feasible);
  // B-orthonormal basis: B(e'_i, e'_j) = eps_i delta_ij
  const Matrix b = killing_form(so3()).matrix;
  const Matrix p = s.b_orthonormal_basis;
  CHECK(oracle::max_abs(p.transpose() * b * p - Matrix(s.epsilons.asDiagonal())) < 1e-12);
}

TEST_CASE("sl(2) admits cyclic metrics") {
  SearchOptions opts;
  opts.seed = 5;
  const CyclicFeasibilityResult r = find_cyclic_metric(sl2(), opts);
  REQUIRE(r.status == FeasibilityStatus::Feasible);
  REQUIRE(r.solution.has_value());
  CHECK(min_eigenvalue(*r.solution) > 0.0);
  CHECK_CLOSE(r.solution->trace(), 3.0, 1e-12);
  const MetricLieAlgebra m(sl2(), InnerProduct(*r.solution));
  CHECK(is_cyclic(m, 1e-8).cyclic);

  const SemisimpleCyclicSolution s = semisimple_cyclic_metrics(sl2());
  CHECK(s.feasible);
  REQUIRE(s.gram.has_value());
  CHECK(s.cross_check_defect < 1e-9);
  CHECK(is_cyclic(MetricLieAlgebra(sl2(), InnerProduct(*s.gram))).cyclic);
  CHECK_THROWS_AS(semisimple_cyclic_metrics(heisenberg()), ValidationFailure);
}

TEST_CASE("the search is deterministic for a fixed seed") {
  SearchOptions opts;
  opts.seed = 99;
  opts.restarts = 4;
  const CyclicFeasibilityResult a = find_cyclic_metric(sl2(), opts), b = find_cyclic_metric(sl2(), opts);
  REQUIRE(a.solution.has_value());
  REQUIRE(b.solution.has_value());
  CHECK(*a.solution == *b.solution);
}

TEST_CASE("catalog algebras in random bases are found feasible") {
  Rng rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 3 + trial % 3;
    const CatalogEntry e = random_catalog_draw(dim, rng, trial);
    const LieAlgebra a = e.algebra.algebra().in_basis(random_invertible(dim, rng));
    SearchOptions opts;
    opts.seed = trial;
    const CyclicFeasibilityResult r = find_cyclic_metric(a, opts);
    CHECK(r.status == FeasibilityStatus::Feasible);
    if (!r.solution) continue;
    const MetricLieAlgebra m(a, InnerProduct(*r.solution), 1e-8);
    CHECK(is_cyclic(m, 1e-8).cyclic);

    // the metric restricted to the derived ideal is again cyclic
    const StructureReport s = structure_report(m);
    if (s.derived.basis.cols() > 0) CHECK(is_cyclic(restrict_to(m, s.derived), 1e-8).cyclic);
  }
}

TEST_CASE("nilpotent nonabelian algebras are never feasible") {
  // a 4-dimensional filiform algebra: [e1,e2] = e3, [e1,e3] = e4
  const LieAlgebra f = LieAlgebra::from_brackets(4, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}});
  CHECK(find_cyclic_metric(f).status != FeasibilityStatus::Feasible);
  const LieAlgebra h5 = LieAlgebra::from_brackets(5, {{0, 1, 4, 1.0}, {2, 3, 4, 1.0}});
  CHECK(find_cyclic_metric(h5).status != FeasibilityStatus::Feasible);
}

#include "cyclab/catalog.hpp"
#include "cyclab/curvature.hpp"
#include "cyclab/homogeneous.hpp"
#include "cyclab/random.hpp"

#include "support.hpp"

using namespace cyclab;

namespace {

struct Named {
  const char* tag;
  std::vector<double> values;
};

const std::vector<Named> kExamples = {
    {"Abelian", {3}},
    {"Gn", {1.0, 2.0}},
    {"Gn", {1.0, 2.0, -3.0}},
    {"Gn", {0.5, -1.5, 2.0, 1.0}},
    {"HyperbolicHn", {0.7, 4}},
    {"E11", {2.0}},
    {"H4", {1.0, -2.0, 0.5}},
    {"H5", {1.0, 1.0, 1.0, 1.0, 0.0}},
    {"Hnp1", {1.0, 2.0, -1.0, 0.5, 1.5}},
    {"HnpHat", {1.0, -1.0, 0.8, 1.2, -2.0}},
    {"Sl2Cyclic", {1.0, 2.0}},
    {"So3Biinv", {0.5}},
    {"Heisenberg", {}},
    {"Sl2xR", {1.0, 1.0}},
    {"Sl2xH2", {0.5, 2.0, -1.0}},
};

}  // namespace

TEST_CASE("catalog entries are valid with identity Gram matrices") {
  for (const Named& e : kExamples) {
    CAPTURE(e.tag);
    const CatalogEntry c = make_named(e.tag, e.values);
    CHECK(validate(c.algebra.algebra()).pass);
    if (std::string(e.tag) != "So3Biinv")
      CHECK(c.algebra.gram().isIdentity(0.0));
    CHECK(c.params.dim == c.algebra.dim());
  }
}

TEST_CASE("reference invariants agree with direct computation") {
  for (const Named& e : kExamples) {
    CAPTURE(e.tag);
    const CatalogEntry c = make_named(e.tag, e.values);
    const ReferenceInvariants& ref = c.reference;
    const CurvatureData d = riemann(c.algebra);
    const double scale = std::max(1.0, oracle::max_abs(d.ricci));
    if (ref.ricci) CHECK(oracle::max_abs(*ref.ricci - oracle::ricci(c.algebra)) <= 1e-10 * scale);
    if (ref.principal_ricci) CHECK(oracle::max_abs(*ref.principal_ricci - d.ricci_eigenvalues) <= 1e-10 * scale);
    if (ref.scalar) CHECK_CLOSE(*ref.scalar, oracle::scalar(c.algebra), 1e-10 * scale);
    if (ref.cyclic) CHECK(*ref.cyclic == is_cyclic(c.algebra).cyclic);
    if (ref.unimodular) CHECK(*ref.unimodular == structure_report(c.algebra).unimodular);
    if (ref.verdict) CHECK(*ref.verdict == tv_decompose(c.algebra).verdict);
    if (ref.basic_sectional) {
      const int n = c.algebra.dim();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j)
            CHECK_CLOSE((*ref.basic_sectional)(i, j),
                        oracle::sectional(c.algebra, Vector::Unit(n, i), Vector::Unit(n, j)), 1e-10 * scale);
    }
    for (const CurvatureComponent& k : ref.curvature) {
      const int n = c.algebra.dim();
      CHECK(oracle::max_abs(curvature_apply(d, Vector::Unit(n, k.i), Vector::Unit(n, k.j), Vector::Unit(n, k.k)) -
                            k.value) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("sl(2) principal Ricci in closed form") {
  const double l1 = 0.4, l2 = 1.7;
  const ReferenceInvariants r = make_sl2_cyclic(l1, l2).reference;
  REQUIRE(r.principal_ricci);
  std::vector<double> want{-2 * l2 * (l1 + l2), -2 * l1 * (l1 + l2), 2 * l1 * l2};
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 3; ++i) CHECK_CLOSE((*r.principal_ricci)(i), want[i], 1e-12);
  CHECK(r.unimodular.value_or(false));
  CHECK(r.cyclic.value_or(false));
  CHECK(r.verdict == TvClass::T2);
}

TEST_CASE("parameter constraints are enforced") {
  CHECK_THROWS_AS(make_sl2_cyclic(-1.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(make_sl2_cyclic(1.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(make_hnp1({1.0, 1.0}, {1.0, 1.0}), InvalidInput);  // lambdas must sum to zero
  CHECK_THROWS_AS(make_hnp1({0.0, 0.0}, {1.0, -1.0}), InvalidInput);
  CHECK_THROWS_AS(make_named("Nope", {}), InvalidInput);
  CHECK_THROWS_AS(make_named("Gn", {}), InvalidInput);
  CHECK_THROWS_AS(make_named("Abelian", {2.5}), InvalidInput);
  CHECK(family_from_string("HnpHat") == Family::HnpHat);
  CHECK_THROWS_AS(family_from_string("X"), InvalidInput);
}

TEST_CASE("the E(1,1) rebase gives the Minkowski-motion brackets") {
  const double alpha = 1.3;
  const CatalogEntry e = make_e11(alpha);
  REQUIRE(e.rebases.size() == 1);
  const Matrix& b = e.rebases[0].second;
  const MetricLieAlgebra r = e.algebra.in_basis(b);
  CHECK(r.gram().isIdentity(1e-14));
  CHECK_CLOSE(r.c(0, 1, 2), alpha, 1e-14);
  CHECK_CLOSE(r.c(2, 0, 1), -alpha, 1e-14);
  CHECK(std::abs(r.c(1, 2, 0)) + std::abs(r.c(1, 2, 1)) + std::abs(r.c(1, 2, 2)) < 1e-14);
}

TEST_CASE("unimodular Hhat(5) examples are cyclic") {
  const CatalogEntry e = make_hnp_hat({1.5, -1.5}, {1.0, 0.5, -1.5});
  CHECK(e.algebra.dim() == 5);
  CHECK(is_cyclic(e.algebra).cyclic);
  CHECK(structure_report(e.algebra).unimodular);
}

TEST_CASE("direct products") {
  const CatalogEntry p = make_direct_product({make_sl2_cyclic(1.0, 2.0), make_gn({1.0, -1.0}), make_abelian(1)});
  CHECK(p.algebra.dim() == 7);
  CHECK(p.params.family == Family::DirectProduct);
  CHECK(p.params.factors.size() == 3);
  CHECK(is_cyclic(p.algebra).cyclic);
  CHECK(structure_report(p.algebra).unimodular);
  // no bracket between factors
  CHECK(p.algebra.c(0, 3, 3) == 0.0);
}

TEST_CASE("semidirect sums are cyclic exactly for selfadjoint actions") {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const bool sym = trial % 2 == 0;
    const SemidirectSpec spec = random_semidirect(rng, sym);
    const SemidirectDefects d = semidirect_defects(spec);
    CHECK(d.derivation < 1e-9);
    CHECK(d.homomorphism < 1e-9);
    const CatalogEntry e = make_semidirect(spec);
    CHECK(is_cyclic(e.algebra).cyclic == sym);
    if (!sym) CHECK(is_cyclic(e.algebra).defect > 1e-6);
  }
  // A skew action on abelian factors.
  Matrix skew(2, 2);
  skew << 0.0, -1.0, 1.0, 0.0;
  const CatalogEntry rot = make_semidirect({make_abelian(1).algebra, make_abelian(2).algebra, {skew}});
  CHECK_FALSE(is_cyclic(rot.algebra).cyclic);

  // A map that is not a derivation of the Heisenberg algebra.
  Matrix bad = Matrix::Zero(3, 3);
  bad(0, 0) = 1.0;
  CHECK_THROWS_AS(make_semidirect({make_abelian(1).algebra, make_heisenberg().algebra, {bad}}), ValidationFailure);
}

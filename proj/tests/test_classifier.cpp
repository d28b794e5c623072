#include "cyclab/catalog.hpp"
#include "cyclab/classifier.hpp"
#include "cyclab/homogeneous.hpp"
#include "cyclab/random.hpp"

#include "support.hpp"

using namespace cyclab;

namespace {

// P^T G P against the representative's Gram and P-transported brackets.
double witness_defect(const MetricLieAlgebra& m, const FamilyIdentification& id) {
  const Matrix& p = id.witness;
  const int n = m.dim();
  double worst = oracle::max_abs(p.transpose() * m.gram() * p - id.representative.gram());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vector rep = Vector::Zero(n);
      for (int k = 0; k < n; ++k) rep += id.representative.c(i, j, k) * p.col(k);
      worst = std::max(worst, oracle::max_abs(bracket(m, p.col(i), p.col(j)) - rep));
    }
  return worst;
}

}  // namespace

TEST_CASE("G3(2,-2) is E(1,1) with alpha = 2") {
  const FamilyIdentification id = classify(make_gn({2.0, -2.0}).algebra);
  CHECK(id.params.family == Family::E11);
  REQUIRE(id.params.values.size() == 1);
  CHECK_CLOSE(std::abs(id.params.values[0]), 2.0, 1e-10);
  CHECK(id.unimodular);
}

TEST_CASE("sl(2) x R is detected as a product") {
  Rng rng(51);
  const MetricLieAlgebra m =
      random_orthonormal_rebase(make_direct_product({make_sl2_cyclic(1.0, 2.0), make_abelian(1)}).algebra, rng);
  const FamilyIdentification id = classify(m);
  REQUIRE(id.params.family == Family::DirectProduct);
  REQUIRE(id.params.factors.size() == 2);
  CHECK(id.params.factors[0].family == Family::Sl2Cyclic);
  CHECK(id.params.factors[1].family == Family::Abelian);
  CHECK(decomposability(m).decomposable());
  CHECK(witness_defect(m, id) < 1e-9);
}

TEST_CASE("H5(1,1,1;1,0) round trips") {
  const CatalogEntry e = make_h5(1.0, 1.0, 1.0, 1.0, 0.0);
  const FamilyIdentification id = classify(e.algebra);
  CHECK(same_params(id.params, canonicalize(e.params), 1e-9));
  CHECK(id.params.family == Family::Hnp1);
}

TEST_CASE("unsupported and invalid inputs") {
  CHECK_THROWS_AS(classify(make_gn({1.0, 2.0, 3.0, 4.0, 5.0}).algebra), Unsupported);
  CHECK_THROWS_AS(classify(make_heisenberg().algebra), ValidationFailure);
  CHECK_THROWS_AS(classify(make_so3_biinvariant().algebra), ValidationFailure);
}

TEST_CASE("adapted bases of solvable algebras") {
  Rng rng(52);
  const MetricLieAlgebra m = random_orthonormal_rebase(make_gn({1.0, 2.0, -3.0}).algebra, rng);
  const AdaptedBasis b = adapted_basis(m);
  CHECK(b.chain_dims == std::vector<int>{4, 3, 2, 1, 0});
  CHECK(b.solvable_defect < 1e-10);
  CHECK(oracle::max_abs(b.basis.transpose() * m.gram() * b.basis - Matrix::Identity(4, 4)) < 1e-10);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = std::max(i, j); k < 4; ++k) CHECK(std::abs(b.constants.c(i, j, k)) < 1e-10);

  const AdaptedCyclicity c = adapted_cyclicity(m, b);
  CHECK(c.index_symmetric);
  CHECK(c.selfadjoint);

  // the same algebra with a non-cyclic metric
  const MetricLieAlgebra skewed(m.algebra(), InnerProduct(random_positive_definite(4, rng)));
  REQUIRE_FALSE(is_cyclic(skewed).cyclic);
  const AdaptedCyclicity d = adapted_cyclicity(skewed, adapted_basis(skewed));
  CHECK_FALSE(d.index_symmetric);
  CHECK_FALSE(d.selfadjoint);

  CHECK_THROWS_AS(adapted_basis(make_sl2_cyclic(1.0, 1.0).algebra), ValidationFailure);
}

TEST_CASE("orthogonal splits") {
  const OrthogonalSplit u = orthogonal_split(make_gn({1.0, -1.0}).algebra);
  CHECK_FALSE(u.used_unimodular_kernel);
  CHECK(u.ideal_cyclic);
  CHECK(u.selfadjoint_defect < 1e-10);
  CHECK(u.ideal.basis.cols() == 2);

  const OrthogonalSplit n = orthogonal_split(make_h4(1.0, 2.0, 1.0).algebra);
  CHECK(n.used_unimodular_kernel);
  CHECK(n.ideal_cyclic);
  CHECK(n.selfadjoint_defect < 1e-10);
  CHECK(std::abs(n.w.dot(n.ideal.basis.col(0))) < 1e-10);

  CHECK_THROWS_AS(orthogonal_split(make_abelian(3).algebra), ValidationFailure);
}

TEST_CASE("decomposability of special cases") {
  CHECK(decomposability(make_gn({1.0, 2.0, 0.0}).algebra).decomposable());
  CHECK(decomposability(make_h5(1.0, 2.0, 0.0, 1.0, -1.0).algebra).decomposable());
  CHECK_FALSE(decomposability(make_sl2_cyclic(1.0, 2.0).algebra).decomposable());
  CHECK_FALSE(decomposability(make_gn({1.0, 2.0, 3.0}).algebra).decomposable());

  const FamilyParams g4 = canonicalize(make_gn({1.0, 2.0, 0.0}).params);
  CHECK(g4.family == Family::DirectProduct);
  const FamilyIdentification id = classify(make_gn({1.0, 2.0, 0.0}).algebra);
  CHECK(same_params(id.params, g4, 1e-9));
}

TEST_CASE("canonical weights ignore order and overall sign") {
  Matrix w(1, 3);
  w << 1.0, -2.0, 0.5;
  const WeightForm a = canonical_weights(w);
  Matrix v(1, 3);
  v << -0.5, -1.0, 2.0;  // permuted and negated
  const WeightForm b = canonical_weights(v);
  CHECK(same_params(a.params, b.params, 1e-12));
  Matrix zero_col(1, 2);
  zero_col << 1.0, 0.0;
  CHECK_THROWS_AS(canonical_weights(zero_col), ValidationFailure);
}

TEST_CASE("random round trips with witnesses") {
  Rng rng(53);
  for (int dim = 3; dim <= 5; ++dim)
    for (int trial = 0; trial < 3 * catalog_draw_families(dim); ++trial) {
      const CatalogEntry e = random_catalog_draw(dim, rng, trial);
      CAPTURE(display_name(e.params));
      const MetricLieAlgebra m = random_orthonormal_rebase(e.algebra, rng);
      const FamilyIdentification id = classify(m);
      CHECK(same_params(id.params, canonicalize(e.params), 1e-8));
      CHECK(id.residual <= 1e-8);
      CHECK(witness_defect(m, id) <= 1e-8);
    }
}

TEST_CASE("classification is invariant under non-orthonormal rebasing") {
  Rng rng(54);
  const CatalogEntry e = make_hnp1({1.0, 2.0, -0.5}, {1.0, 0.5, -1.5});
  const FamilyIdentification a = classify(e.algebra);
  const FamilyIdentification b = classify(random_rebase(e.algebra, rng));
  CHECK(same_params(a.params, b.params, 1e-8));
}

#include "cyclab/catalog.hpp"
#include "cyclab/core.hpp"
#include "cyclab/random.hpp"

#include "support.hpp"

using namespace cyclab;

namespace {

LieAlgebra so3() { return LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}}); }
LieAlgebra heisenberg() { return LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}}); }
// H, E, F
LieAlgebra sl2() { return LieAlgebra::from_brackets(3, {{0, 1, 1, 2.0}, {0, 2, 2, -2.0}, {1, 2, 0, 1.0}}); }

}  // namespace

TEST_CASE("brackets are bilinear and antisymmetric") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const LieAlgebra a = random_lie_algebra(4, rng);
    const Vector x = Vector::Random(4), y = Vector::Random(4), z = Vector::Random(4);
    CHECK(oracle::max_abs(bracket(a, x, y) + bracket(a, y, x)) < 1e-12);
    CHECK(oracle::max_abs(bracket(a, 2.0 * x + z, y) - 2.0 * bracket(a, x, y) - bracket(a, z, y)) < 1e-12);
    CHECK(oracle::max_abs(ad_matrix(a, x) * y - bracket(a, x, y)) < 1e-12);
  }
}

TEST_CASE("from_brackets fills the antisymmetric partner") {
  const LieAlgebra h = heisenberg();
  CHECK(h.c(0, 1, 2) == 1.0);
  CHECK(h.c(1, 0, 2) == -1.0);
  CHECK(h.scale() == 1.0);
  CHECK_THROWS_AS(bracket(h, Vector::Zero(2), Vector::Zero(3)), InvalidInput);
}

TEST_CASE("validate reports antisymmetry and Jacobi defects") {
  CHECK(validate(so3()).pass);
  CHECK(validate(sl2()).pass);

  // [e1,e2] = e3, [e1,e3] = e1 breaks the Jacobi identity.
  const LieAlgebra bad = LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}, {0, 2, 0, 1.0}});
  const ValidationReport r = validate(bad);
  CHECK_FALSE(r.pass);
  CHECK(r.jacobi_defect > 0.5);

  // so(3) with c_12^3 changed to 1.1 but c_21^3 left at -1.
  Tensor3 c = so3().constants();
  c(0, 1, 2) = 1.1;
  const ValidationReport p = validate(LieAlgebra(c));
  CHECK_FALSE(p.pass);
  CHECK_CLOSE(p.antisymmetry_defect, 0.1, 1e-12);
  CHECK_THROWS_AS(MetricLieAlgebra(LieAlgebra(c)), ValidationFailure);
}

TEST_CASE("inner products are validated") {
  CHECK_THROWS_AS(InnerProduct(Matrix::Zero(2, 3)), InvalidInput);
  Matrix indefinite = Matrix::Identity(3, 3);
  indefinite(2, 2) = -1.0;
  CHECK_THROWS_AS(InnerProduct{indefinite}, ValidationFailure);
  Matrix skewed = Matrix::Identity(2, 2);
  skewed(0, 1) = 0.5;
  CHECK_THROWS_AS(InnerProduct{skewed}, ValidationFailure);
  Matrix spd(2, 2);
  spd << 2.0, 0.5, 0.5, 1.0;
  CHECK(InnerProduct(spd).min_eigenvalue() > 0.0);
}

TEST_CASE("the orthonormal frame is orthonormal") {
  Rng rng(2);
  for (int n = 2; n <= 6; ++n) {
    const MetricLieAlgebra m = random_metric_lie_algebra(n, rng);
    const Matrix f = m.frame();
    CHECK(oracle::max_abs(f.transpose() * m.gram() * f - Matrix::Identity(n, n)) < 1e-10);
    CHECK(oracle::max_abs(f * m.frame_inverse() - Matrix::Identity(n, n)) < 1e-10);
    // frame constants agree with brackets of frame vectors
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Vector br = bracket(m, f.col(a), f.col(b));
        for (int c = 0; c < n; ++c)
          CHECK_CLOSE(m.frame_constants()(a, b, c), m.inner(br, f.col(c)), 1e-9);
      }
  }
}

TEST_CASE("change of basis transforms brackets covariantly") {
  Rng rng(3);
  const LieAlgebra a = random_lie_algebra(4, rng);
  const Matrix p = random_invertible(4, rng);
  const LieAlgebra b = a.in_basis(p);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Vector in_a = bracket(a, p.col(i), p.col(j));
      Vector in_b = Vector::Zero(4);
      for (int k = 0; k < 4; ++k) in_b += b.c(i, j, k) * p.col(k);
      CHECK(oracle::max_abs(in_a - in_b) < 1e-9);
    }
  CHECK(validate(b).pass);
}

TEST_CASE("Killing form values") {
  // so(3): ad_{e1} has eigenvalues 0, +-i, so B(e1, e1) = -2.
  const KillingData k = killing_form(so3());
  CHECK(oracle::max_abs(k.matrix + 2.0 * Matrix::Identity(3, 3)) < 1e-14);
  CHECK(k.signature.negative == 3);
  CHECK(k.rank == 3);

  // sl(2): B(H,H) = 8, B(E,F) = 4.
  const KillingData s = killing_form(sl2());
  CHECK_CLOSE(s.matrix(0, 0), 8.0, 1e-14);
  CHECK_CLOSE(s.matrix(1, 2), 4.0, 1e-14);
  CHECK_CLOSE(s.matrix(1, 1), 0.0, 1e-14);
  CHECK(s.signature.positive == 2);
  CHECK(s.signature.negative == 1);

  CHECK(killing_form(heisenberg()).rank == 0);
}

TEST_CASE("Killing form is ad-invariant") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const LieAlgebra a = random_lie_algebra(2 + trial % 5, rng);
    const int n = a.dim();
    const Matrix b = killing_form(a).matrix;
    const Vector x = Vector::Random(n), y = Vector::Random(n), z = Vector::Random(n);
    const double lhs = bracket(a, x, y).dot(b * z);
    const double rhs = -y.dot(b * bracket(a, x, z));
    const double scale = std::max(1.0, oracle::max_abs(b));
    CHECK(std::abs(lhs - rhs) <= 1e-9 * scale * 10.0);
  }
}

TEST_CASE("structure reports") {
  const StructureReport h = structure_report(MetricLieAlgebra(heisenberg()));
  CHECK(h.nilpotent);
  CHECK(h.solvable);
  CHECK_FALSE(h.abelian);
  CHECK(h.unimodular);
  CHECK(h.center.basis.cols() == 1);
  CHECK(h.derived.basis.cols() == 1);
  CHECK(h.lower_central_dims == std::vector<int>{3, 1, 0});

  const StructureReport s = structure_report(MetricLieAlgebra(so3()));
  CHECK(s.semisimple);
  CHECK_FALSE(s.solvable);
  CHECK(s.unimodular);
  CHECK(s.center.basis.cols() == 0);

  const StructureReport g = structure_report(make_gn({1.0, 2.0}).algebra);
  CHECK(g.solvable);
  CHECK_FALSE(g.nilpotent);
  CHECK_FALSE(g.unimodular);
  CHECK(g.unimodular_kernel.basis.cols() == 2);
  CHECK(g.derived_series_dims == std::vector<int>{3, 2, 0});

  CHECK(structure_report(make_gn({1.0, -1.0}).algebra).unimodular);
  CHECK(structure_report(make_abelian(4).algebra).abelian);
}

TEST_CASE("subspaces, ideals and restriction") {
  const MetricLieAlgebra m = make_gn({1.0, 2.0, -3.0}).algebra;
  const StructureReport r = structure_report(m);
  CHECK(is_ideal(m, r.derived));
  CHECK(ideal_defect(m, r.derived) < 1e-12);

  // span{e1, e4} is a subalgebra but not an ideal
  Matrix v = Matrix::Zero(4, 2);
  v(0, 0) = 1.0;
  v(3, 1) = 1.0;
  const SubspaceInfo info = subspace_ops(m, v);
  CHECK_FALSE(info.is_ideal);
  CHECK(info.complement.basis.cols() == 2);
  CHECK(is_subalgebra(m, info.span));

  const MetricLieAlgebra d = restrict_to(m, r.derived);
  CHECK(d.dim() == 3);
  CHECK(structure_report(d).abelian);

  const Matrix p = projector(m, info.span);
  CHECK(oracle::max_abs(p * p - p) < 1e-12);
}

#include "cyclab/catalog.hpp"
#include "cyclab/curvature.hpp"
#include "cyclab/homogeneous.hpp"
#include "cyclab/random.hpp"

#include "support.hpp"

using namespace cyclab;

TEST_CASE("curvature, Ricci and scalar agree with the textbook formulas") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const MetricLieAlgebra m = random_metric_lie_algebra(2 + trial % 4, rng);
    const int n = m.dim();
    const CurvatureData c = riemann(m);
    const auto nabla = oracle::connection(m);
    const Matrix ric = oracle::ricci(m);
    const double scale = std::max(1.0, oracle::max_abs(ric));
    CHECK(oracle::max_abs(c.ricci - ric) <= 1e-8 * scale);
    CHECK_CLOSE(c.scalar, oracle::scalar(m), 1e-8 * scale);
    for (int k = 0; k < 4; ++k) {
      const Vector x = Vector::Random(n), y = Vector::Random(n), z = Vector::Random(n);
      // library sign: R(X,Y) = nabla_[X,Y] - [nabla_X, nabla_Y]
      const Vector want = -oracle::curvature_operator(m, nabla, x, y) * z;
      CHECK(oracle::max_abs(curvature_apply(c, x, y, z) - want) <= 1e-8 * scale * 10.0);
      CHECK_CLOSE(sectional(m, c, x, y), oracle::sectional(m, x, y), 1e-8 * scale * 10.0);
    }
    const CurvatureDefects d = curvature_defects(m, c);
    CHECK(d.antisymmetry <= 1e-9 * scale);
    CHECK(d.metric_skew <= 1e-9 * scale);
    CHECK(d.bianchi <= 1e-9 * scale);
  }
}

TEST_CASE("principal Ricci curvatures are metric eigenvalues") {
  Rng rng(22);
  const MetricLieAlgebra m = random_metric_lie_algebra(4, rng);
  const CurvatureData c = riemann(m);
  const Matrix v = c.ricci_eigenvectors;
  CHECK(oracle::max_abs(v.transpose() * m.gram() * v - Matrix::Identity(4, 4)) < 1e-9);
  CHECK(oracle::max_abs(v.transpose() * c.ricci * v - Matrix(c.ricci_eigenvalues.asDiagonal())) < 1e-9);
  for (int i = 0; i + 1 < 4; ++i) CHECK(c.ricci_eigenvalues(i) <= c.ricci_eigenvalues(i + 1));
  const RicciData r = ricci_scalar(m);
  CHECK_CLOSE(r.scalar, c.scalar, 1e-12);
}

TEST_CASE("hyperbolic space has constant curvature -c^2") {
  Rng rng(23);
  const double cc = 0.8;
  const MetricLieAlgebra m = make_hyperbolic(cc, 4).algebra;
  const CurvatureData c = riemann(m);
  for (int k = 0; k < 10; ++k)
    CHECK_CLOSE(sectional(m, c, Vector::Random(4), Vector::Random(4)), -cc * cc, 1e-10);
  CHECK_CLOSE(c.scalar, -12.0 * cc * cc, 1e-10);
}

TEST_CASE("biinvariant metrics: kappa = |[X,Y]|^2 / 4") {
  const MetricLieAlgebra m = make_so3_biinvariant(1.3).algebra;
  const CurvatureData c = riemann(m);
  for (int k = 0; k < 10; ++k) {
    const Vector x = Vector::Random(3), y = Vector::Random(3);
    const double b = m.norm(bracket(m, x, y));
    CHECK_CLOSE(kappa(m, c, x, y), 0.25 * b * b, 1e-10);
  }
}

TEST_CASE("Gn Ricci in closed form") {
  const std::vector<double> a{1.0, 2.0, -0.5};
  const CurvatureData c = riemann(make_gn(a).algebra);
  const double sum = 2.5, sum2 = 1.0 + 4.0 + 0.25;
  for (int i = 0; i < 3; ++i) CHECK_CLOSE(c.ricci(i, i), -a[i] * sum, 1e-12);
  CHECK_CLOSE(c.ricci(3, 3), -sum2, 1e-12);
  // s = -2(sum a_i^2 + sum_{i<j} a_i a_j)
  CHECK_CLOSE(c.scalar, -2.0 * (sum2 + (2.0 - 0.5 - 1.0)), 1e-12);
}

TEST_CASE("G3(1,2) scalar curvature is -14") {
  CHECK_CLOSE(riemann(make_gn({1.0, 2.0}).algebra).scalar, -14.0, 1e-12);
}

TEST_CASE("sl(2) cyclic metrics have Ricci signature (-,-,+)") {
  const double l1 = 1.0, l2 = 2.0;
  const CurvatureData c = riemann(make_sl2_cyclic(l1, l2).algebra);
  CHECK(c.ricci_signature.negative == 2);
  CHECK(c.ricci_signature.positive == 1);
  CHECK_CLOSE(c.ricci_eigenvalues(2), 2.0 * l1 * l2, 1e-12);
}

TEST_CASE("kappa from R agrees with the cyclic shortcut") {
  Rng rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const MetricLieAlgebra m = random_cyclic(3 + trial % 3, rng);
    const int n = m.dim();
    const CurvatureData c = riemann(m);
    for (int k = 0; k < 3; ++k) {
      const Vector x = Vector::Random(n), y = Vector::Random(n);
      const double k1 = kappa(m, c, x, y), k2 = kappa_cyclic_formula(m, x, y);
      CHECK_CLOSE(k1, k2, 1e-8 * std::max(1.0, std::abs(k2)));
    }
  }
}

TEST_CASE("central directions are flat in cyclic metrics") {
  const MetricLieAlgebra m = make_direct_product({make_gn({1.0, 2.0}), make_abelian(1)}).algebra;
  const CurvatureData c = riemann(m);
  const Vector z = Vector::Unit(4, 3);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(kappa(m, c, z, Vector::Random(4))) < 1e-12);
}

TEST_CASE("property suite on a unimodular solvable example") {
  const MetricLieAlgebra m = make_gn({1.0, 2.0, -3.0}).algebra;
  const CurvatureData c = riemann(m);
  CHECK(c.scalar < 0.0);
  const BasicSections b = basic_sections(m, c);
  CHECK(b.min < 0.0);
  CHECK(b.max > 0.0);
  const SectionalRange r = sectional_range(m, c);
  CHECK(r.min <= b.min + 1e-12);
  CHECK(r.max >= b.max - 1e-12);
  CHECK(curvature_property_suite(m).pass);
  CHECK_THROWS_AS(curvature_property_suite(make_heisenberg().algebra), ValidationFailure);
}

TEST_CASE("flat iff abelian over random cyclic metrics") {
  Rng rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const MetricLieAlgebra m = random_cyclic(3 + trial % 3, rng);
    CHECK(riemann(m).flat == structure_report(m).abelian);
    CHECK(curvature_property_suite(m).pass);
  }
}

#include "cyclab/catalog.hpp"
#include "cyclab/homogeneous.hpp"
#include "cyclab/random.hpp"

#include "support.hpp"

using namespace cyclab;

namespace {

MetricLieAlgebra so3_minus_killing() {
  const LieAlgebra a = LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}});
  return MetricLieAlgebra(a, InnerProduct(-killing_form(a).matrix));
}

// Largest component of S - S1 - S2 - S3 and of pairwise products, frame coordinates.
std::pair<double, double> decomposition_defects(const MetricLieAlgebra& m) {
  const HomogeneousStructure h = tv_decompose(m);
  const Tensor3 s = h.S.in_frame(m.frame());
  std::array<Tensor3, 3> c;
  for (int i = 0; i < 3; ++i) c[i] = h.components[i].in_frame(m.frame());
  const double recon = (s - c[0] - c[1] - c[2]).max_abs();
  double ortho = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) ortho = std::max(ortho, std::abs(contract(c[a], c[b])));
  return {recon, ortho};
}

}  // namespace

TEST_CASE("Koszul tensor matches the basis-coordinate connection") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const MetricLieAlgebra m = random_metric_lie_algebra(2 + trial % 5, rng);
    const int n = m.dim();
    const Tensor3 s = koszul_tensor(m);
    const auto nabla = oracle::connection(m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Vector cov = m.gram() * nabla[i].col(j);
        for (int k = 0; k < n; ++k) CHECK_CLOSE(s(i, j, k), cov(k), 1e-9 * std::max(1.0, s.max_abs()));
        // metric connection: S_X skew
        for (int k = 0; k < n; ++k) CHECK_CLOSE(s(i, j, k), -s(i, k, j), 1e-9 * std::max(1.0, s.max_abs()));
      }
  }
}

TEST_CASE("torsion of the canonical connection") {
  Rng rng(12);
  const MetricLieAlgebra m = random_metric_lie_algebra(4, rng);
  const Tensor3 t = cartan_schouten_torsion(m);
  const Tensor3 s = koszul_tensor(m);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        CHECK_CLOSE(t(i, j, k), -oracle::lowered(m, i, j, k), 1e-10);
        CHECK_CLOSE(t(i, j, k), s(j, i, k) - s(i, j, k), 1e-9);
      }
  const Tensor3 back = structure_from_torsion(torsion_from_structure(s));
  CHECK((back - s).max_abs() < 1e-12 * std::max(1.0, s.max_abs()));
}

TEST_CASE("U tensor vanishes exactly for biinvariant metrics") {
  CHECK(is_biinvariant(so3_minus_killing()).biinvariant);
  CHECK(u_tensor(so3_minus_killing()).max_abs() < 1e-12);
  CHECK_FALSE(is_biinvariant(make_sl2_cyclic(1.0, 2.0).algebra).biinvariant);
}

TEST_CASE("class verdicts of catalog examples") {
  CHECK(tv_decompose(make_abelian(4).algebra).verdict == TvClass::Zero);
  CHECK(tv_decompose(so3_minus_killing()).verdict == TvClass::T3);
  CHECK(tv_decompose(make_gn({1.0, -1.0}).algebra).verdict == TvClass::T2);
  CHECK(tv_decompose(make_sl2_cyclic(1.0, 3.0).algebra).verdict == TvClass::T2);
  CHECK(tv_decompose(make_hyperbolic(1.5, 4).algebra).verdict == TvClass::T1);
  CHECK(tv_decompose(make_gn({1.0, 2.0}).algebra).verdict == TvClass::T1T2);
  CHECK(tv_decompose(make_heisenberg().algebra).verdict == TvClass::T2T3);
}

TEST_CASE("hyperbolic space is vectorial along the non-ideal direction") {
  const double c = 1.5;
  const MetricLieAlgebra m = make_hyperbolic(c, 4).algebra;
  const VectorialData v = is_vectorial(m);
  REQUIRE(v.vectorial);
  // S_X Y = <X,Y> xi - <xi,Y> X, and Koszul gives <S_{e1} e1, e4> = c.
  const Tensor3 s = koszul_tensor(m);
  CHECK(oracle::max_abs(v.xi.head(3)) < 1e-12);
  CHECK_CLOSE(v.xi(3), c, 1e-12);
  for (int i = 0; i < 3; ++i) CHECK_CLOSE(s(i, i, 3), c, 1e-12);
}

TEST_CASE("cyclic and traceless checks") {
  const CyclicCheck sl = is_cyclic(make_sl2_cyclic(0.7, 2.0).algebra);
  CHECK(sl.cyclic);
  CHECK(sl.defect < 1e-12);

  // so(3) with -B: <[e1,e2],e3> = 2 so the cyclic sum is 6.
  const CyclicCheck so = is_cyclic(so3_minus_killing());
  CHECK_FALSE(so.cyclic);
  CHECK_CLOSE(so.defect, 6.0, 1e-12);

  CHECK(is_traceless(make_gn({1.0, 2.0, -3.0}).algebra).traceless);
  CHECK_FALSE(is_traceless(make_gn({1.0, 2.0}).algebra).traceless);
}

// Koszul plus the vanishing cyclic sum: 2 S(X,Y,Z) = 2 <[X,Y],Z> + 2 <[Z,X],Y> = -2 <[Y,Z],X>.
TEST_CASE("cyclic metrics satisfy S(X,Y,Z) = -<[Y,Z],X>") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const MetricLieAlgebra m = random_cyclic(3 + trial % 3, rng);
    const Tensor3 s = koszul_tensor(m);
    const int n = m.dim();
    const double scale = std::max(1.0, s.max_abs());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) CHECK_CLOSE(s(i, j, k), -oracle::lowered(m, j, k, i), 1e-8 * scale);
  }
}

TEST_CASE("three-way decomposition is orthogonal and complete") {
  Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const MetricLieAlgebra m = trial % 3 == 0 ? random_cyclic(3 + trial % 3, rng)
                                              : random_metric_lie_algebra(2 + trial % 5, rng);
    const HomogeneousStructure h = tv_decompose(m);
    const double norm2 = std::max(1.0, h.norm * h.norm);
    const auto [recon, ortho] = decomposition_defects(m);
    CHECK(recon <= 1e-9 * std::sqrt(norm2));
    CHECK(ortho <= 1e-9 * norm2);
    CHECK(is_cyclic(m).cyclic == (h.norms[2] <= h.threshold));
    CHECK(is_traceless(m).traceless == structure_report(m).unimodular);
    // the norm is basis independent
    const MetricLieAlgebra moved = random_rebase(m, rng);
    CHECK_CLOSE(tv_decompose(moved).norm, h.norm, 1e-8 * std::max(1.0, h.norm));
  }
}

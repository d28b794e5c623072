#pragma once

#include "cyclab/catalog.hpp"
#include "cyclab/core.hpp"

#include <random>

namespace cyclab {

using Rng = std::mt19937_64;

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, signs fixed).
Matrix random_orthogonal(int n, Rng& rng);

/// Invertible matrix with singular values in [1/spread, spread].
Matrix random_invertible(int n, Rng& rng, double spread = 3.0);

/// Positive-definite matrix with eigenvalues in [1/spread, spread].
Matrix random_positive_definite(int n, Rng& rng, double spread = 3.0);

/// Derivations of `a` as a basis of matrices (nullspace of the derivation identity).
std::vector<Matrix> derivation_basis(const LieAlgebra& a, double tol = 1e-10);

/// Random Lie algebra of dimension n: repeated one-dimensional extensions
/// R x_D h by random derivations, started from an abelian, Heisenberg,
/// so(3) or sl(2,R) seed. Returned in a random basis.
LieAlgebra random_lie_algebra(int n, Rng& rng);

/// random_lie_algebra with a random positive-definite metric.
MetricLieAlgebra random_metric_lie_algebra(int n, Rng& rng);

/// A cyclic catalog algebra of the given dimension (3..5) with random
/// parameters, before any change of basis. `family_index` picks among the
/// families available in that dimension; pass -1 for a random pick.
CatalogEntry random_catalog_draw(int dim, Rng& rng, int family_index = -1);
int catalog_draw_families(int dim);

/// The same metric Lie algebra in a random orthonormal basis.
MetricLieAlgebra random_orthonormal_rebase(const MetricLieAlgebra& m, Rng& rng);

/// The same metric Lie algebra in a random (non-orthonormal) basis.
MetricLieAlgebra random_rebase(const MetricLieAlgebra& m, Rng& rng);

/// Random cyclic metric Lie algebra of dimension 3..5: either a catalog draw
/// in a random basis or a feasibility witness on a catalog algebra.
MetricLieAlgebra random_cyclic(int dim, Rng& rng);

/// Semidirect data g1 = R or R^2 acting on g2 = R^k or G^k(alpha). With
/// `selfadjoint` the action matrices are symmetric derivations; otherwise
/// each has a nonzero antisymmetric part.
SemidirectSpec random_semidirect(Rng& rng, bool selfadjoint);

}  // namespace cyclab

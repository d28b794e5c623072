#pragma once

#include "cyclab/catalog.hpp"
#include "cyclab/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyclab {

/// Orthonormal basis e_1..e_n of a solvable metric Lie algebra such that
/// g_{n-i} = span{e_1..e_i} is a chain of codimension-one subideals, hence
/// c_ij^k = 0 whenever k >= max(i, j).
struct AdaptedBasis {
  Matrix basis;                 ///< columns e_1..e_n in input coordinates
  std::vector<int> chain_dims;  ///< n, n-1, ..., 0
  LieAlgebra constants;         ///< structure constants in the adapted basis
  double solvable_defect = 0.0; ///< max |c_ij^k| over k >= max(i, j)
};

/// Throws ValidationFailure for non-solvable input or when no codimension-one
/// subideal can be found numerically.
AdaptedBasis adapted_basis(const MetricLieAlgebra& m, double tol = kDefaultTol);

/// The two adapted-basis reformulations of cyclicity for solvable algebras.
struct AdaptedCyclicity {
  double index_symmetry_defect = 0.0;  ///< max |c_ik^j - c_jk^i|, i < j < k
  double selfadjoint_defect = 0.0;     ///< max asymmetry of ad_{e_i} on span{e_1..e_i}
  bool index_symmetric = false;
  bool selfadjoint = false;
};

AdaptedCyclicity adapted_cyclicity(const MetricLieAlgebra& m, const AdaptedBasis& b,
                                   double tol = kDefaultTol);

/// g = RW + ideal with ad_W selfadjoint on the ideal when the metric is cyclic.
struct OrthogonalSplit {
  Vector w;                 ///< unit vector, input coordinates
  Subspace ideal;           ///< codimension one, orthogonal to w
  MetricLieAlgebra ideal_algebra;  ///< in the orthonormal basis of `ideal`
  Matrix ad_w;              ///< ad_W restricted to the ideal, orthonormal coordinates
  double selfadjoint_defect = 0.0;
  bool ideal_cyclic = false;
  bool used_unimodular_kernel = false;
};

/// Throws ValidationFailure when the input is not cyclic, not solvable or abelian.
OrthogonalSplit orthogonal_split(const MetricLieAlgebra& m, double tol = kDefaultTol);

/// Orthogonal decomposition into ideals; a single factor means indecomposable.
struct Decomposition {
  std::vector<Subspace> factors;  ///< metric-orthonormal bases, input coordinates
  int commutant_dim = 0;          ///< symmetric maps commuting with every ad
  bool decomposable() const { return factors.size() > 1; }
};

Decomposition decomposability(const MetricLieAlgebra& m, double tol = kDefaultTol);

struct FamilyIdentification {
  FamilyParams params;
  /// Columns are the representative's basis vectors in input coordinates.
  Matrix witness;
  /// max(|P^T G P - G_rep|, |c_P - c_rep|)
  double residual = 0.0;
  bool unimodular = false;
  /// Orthogonal ideal factors (input coordinates), in the order of params.factors.
  std::vector<Subspace> factors;
  MetricLieAlgebra representative;
};

/// Identifies a cyclic metric Lie algebra of dimension at most 5 with a
/// catalog family. Throws Unsupported above dimension 5 and ValidationFailure
/// for non-cyclic input or when no family matches.
FamilyIdentification classify(const MetricLieAlgebra& m, double tol = kDefaultTol);

/// Canonical parameters for the algebra a catalog entry describes: products
/// are flattened and sorted, central directions split off as abelian factors,
/// and sign/permutation symmetries fixed (sum of weights positive, tuples
/// sorted descending, lexicographic maximum on ties).
FamilyParams canonicalize(const FamilyParams& params);

/// Diagonal weights of an abelian algebra acting on an abelian ideal
/// (rows: generators, columns: ideal basis vectors) in canonical form.
/// `generators` holds the new generators as columns in old generator
/// coordinates and `order` the ideal basis vectors in representative order.
struct WeightForm {
  FamilyParams params;
  Matrix generators;
  std::vector<int> order;
};

/// Requires full row rank and no zero column; throws ValidationFailure otherwise.
WeightForm canonical_weights(const Matrix& weights);

/// Whether two parameter sets agree to within `tol` (same tags, dims, factors).
bool same_params(const FamilyParams& a, const FamilyParams& b, double tol);

}  // namespace cyclab

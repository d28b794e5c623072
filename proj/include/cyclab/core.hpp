#pragma once

#include "cyclab/tensor.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cyclab {

/// Default relative tolerance. Predicates scale it by the size of the data
/// they look at (max |c_ij^k|, max |G_ij|, norms of tensors).
inline constexpr double kDefaultTol = 1e-9;

/// One nonzero structure constant: [e_i, e_j] has coefficient `value` on e_k.
/// Indices are 0-based here; the file format uses 1-based indices.
struct BracketEntry {
  int i;
  int j;
  int k;
  double value;
};

/// A real Lie algebra given by structure constants c(i,j,k) = c_ij^k,
/// [e_i, e_j] = sum_k c_ij^k e_k.
///
/// Construction only checks shapes; use validate() for the algebraic
/// identities. MetricLieAlgebra refuses algebras that fail validation.
class LieAlgebra {
public:
  LieAlgebra() = default;
  explicit LieAlgebra(Tensor3 constants, std::vector<std::string> labels = {});

  /// Fills c_ij^k and c_ji^k = -c_ij^k for each entry. Repeated (i,j,k) add up.
  static LieAlgebra from_brackets(int n, const std::vector<BracketEntry>& entries,
                                  std::vector<std::string> labels = {});
  static LieAlgebra abelian(int n);

  int dim() const { return constants_.dim(); }
  double c(int i, int j, int k) const { return constants_(i, j, k); }
  const Tensor3& constants() const { return constants_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// max |c_ij^k|
  double scale() const { return constants_.max_abs(); }

  /// Structure constants with respect to the basis whose vectors are the
  /// columns of `basis` (expressed in the current basis). `basis` must be invertible.
  LieAlgebra in_basis(const Matrix& basis) const;

private:
  Tensor3 constants_;
  std::vector<std::string> labels_;
};

struct ValidationReport {
  double antisymmetry_defect = 0.0;  ///< max |c_ij^k + c_ji^k|
  double jacobi_defect = 0.0;        ///< max over i<j<k, l of the Jacobi sum
  double antisymmetry_threshold = 0.0;
  double jacobi_threshold = 0.0;
  bool pass = true;
};

/// Antisymmetry and Jacobi defects. Thresholds are tol * max|c| and tol * max|c|^2.
ValidationReport validate(const LieAlgebra& algebra, double tol = kDefaultTol);

/// Symmetric positive-definite Gram matrix G_ij = <e_i, e_j>.
class InnerProduct {
public:
  InnerProduct() = default;
  /// Rejects non-square input (InvalidInput), asymmetry above tol * max|G|
  /// and non-positive-definite matrices (ValidationFailure). Stores the
  /// exact symmetrization.
  explicit InnerProduct(const Matrix& gram, double tol = kDefaultTol);
  static InnerProduct identity(int n) { return InnerProduct(Matrix::Identity(n, n)); }

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

private:
  Matrix gram_;
  double min_eigenvalue_ = 0.0;
};

/// A Lie algebra together with an inner product: the Lie-algebra model of
/// a Lie group with a left-invariant Riemannian metric.
///
/// On construction the algebra is validated (ValidationFailure on failure)
/// and its constants are made exactly antisymmetric. A metric-orthonormal
/// frame is fixed once: frame() = R^{-1} where G = R^T R is the Cholesky
/// factorization, i.e. Gram-Schmidt of e_1, e_2, ... in order.
class MetricLieAlgebra {
public:
  MetricLieAlgebra() = default;
  MetricLieAlgebra(LieAlgebra algebra, InnerProduct metric, double tol = kDefaultTol);
  /// Convenience: identity Gram matrix.
  explicit MetricLieAlgebra(LieAlgebra algebra, double tol = kDefaultTol);

  int dim() const { return algebra_.dim(); }
  const LieAlgebra& algebra() const { return algebra_; }
  const InnerProduct& metric() const { return metric_; }
  const Matrix& gram() const { return metric_.gram(); }
  const Matrix& gram_inverse() const { return gram_inverse_; }
  const std::vector<std::string>& labels() const { return algebra_.labels(); }

  /// Columns are a metric-orthonormal frame u_a in basis coordinates.
  const Matrix& frame() const { return frame_; }
  const Matrix& frame_inverse() const { return frame_inverse_; }
  /// Structure constants in the orthonormal frame: [u_a,u_b] = sum_c f(a,b,c) u_c.
  const Tensor3& frame_constants() const { return frame_constants_; }
  /// Lowered constants b(i,j,k) = <[e_i,e_j], e_k>.
  const Tensor3& lowered() const { return lowered_; }

  double c(int i, int j, int k) const { return algebra_.c(i, j, k); }
  double inner(const Vector& x, const Vector& y) const { return x.dot(gram() * y); }
  double norm(const Vector& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

  /// Scale used for relative tolerances: max |c| * max |G| (0 for abelian).
  double pairing_scale() const;
  /// Scale of the bracket in the orthonormal frame: max |f(a,b,c)|.
  double frame_scale() const { return frame_constants_.max_abs(); }

  /// Same algebra and metric expressed in another basis (columns of `basis`).
  MetricLieAlgebra in_basis(const Matrix& basis) const;

private:
  LieAlgebra algebra_;
  InnerProduct metric_;
  Matrix gram_inverse_;
  Matrix frame_;
  Matrix frame_inverse_;
  Tensor3 frame_constants_;
  Tensor3 lowered_;
};

/// sum_ij c_ij^k x_i y_j. Throws InvalidInput on length mismatch.
Vector bracket(const LieAlgebra& algebra, const Vector& x, const Vector& y);
inline Vector bracket(const MetricLieAlgebra& m, const Vector& x, const Vector& y) {
  return bracket(m.algebra(), x, y);
}

/// Matrix of ad_x: column j holds the coordinates of [x, e_j].
Matrix ad_matrix(const LieAlgebra& algebra, const Vector& x);
inline Matrix ad_matrix(const MetricLieAlgebra& m, const Vector& x) {
  return ad_matrix(m.algebra(), x);
}

/// tr ad_{e_i} for each basis vector.
Vector ad_traces(const LieAlgebra& algebra);

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

/// Counts eigenvalues above / below +-threshold.
Signature signature_of(const Vector& eigenvalues, double threshold);

struct KillingData {
  Matrix matrix;  ///< B_ij = tr(ad_{e_i} ad_{e_j})
  Vector eigenvalues;
  Signature signature;
  int rank = 0;
};

/// Killing form. Zero eigenvalues are those below tol * max(|eigenvalue|, scale^2).
KillingData killing_form(const LieAlgebra& algebra, double tol = kDefaultTol);

/// A subspace represented by metric-orthonormal spanning columns (basis coordinates).
struct Subspace {
  Matrix basis;
  int dim() const { return static_cast<int>(basis.cols()); }
};

struct StructureReport {
  bool abelian = false;
  bool solvable = false;
  bool nilpotent = false;
  bool semisimple = false;
  bool unimodular = false;
  Subspace center;
  Subspace derived;  ///< [g, g]
  std::vector<int> derived_series_dims;
  std::vector<int> lower_central_dims;
  Subspace unimodular_kernel;
  Vector ad_traces;
  KillingData killing;
};

StructureReport structure_report(const MetricLieAlgebra& m, double tol = kDefaultTol);

// ---- subspace machinery -------------------------------------------------

/// Span of the given vectors (columns, basis coordinates), rank decided by
/// singular-value thresholding at tol * max(largest singular value, reference).
/// `reference` is measured in the metric.
Subspace span_of(const MetricLieAlgebra& m, const Matrix& vectors, double tol = kDefaultTol,
                 double reference = 0.0);

/// Metric Gram-Schmidt of the columns in the given order. Throws InvalidInput
/// naming the first column that is dependent on the previous ones.
Subspace orthonormalize(const MetricLieAlgebra& m, const Matrix& vectors,
                        double tol = kDefaultTol);

Subspace orthogonal_complement(const MetricLieAlgebra& m, const Subspace& v,
                               const Subspace& inside);
Subspace orthogonal_complement(const MetricLieAlgebra& m, const Subspace& v);

Subspace whole_space(const MetricLieAlgebra& m);

/// Span of all brackets [a, b] with a in A, b in B.
Subspace bracket_span(const MetricLieAlgebra& m, const Subspace& a, const Subspace& b,
                      double tol = kDefaultTol);


/// max over basis vectors e_i and v in V of the metric norm of the component
/// of [e_i, v] orthogonal to V.
double ideal_defect(const MetricLieAlgebra& m, const Subspace& v);
bool is_ideal(const MetricLieAlgebra& m, const Subspace& v, double tol = kDefaultTol);

/// Whether V is closed under the bracket.
bool is_subalgebra(const MetricLieAlgebra& m, const Subspace& v, double tol = kDefaultTol);

/// Metric projection onto V (basis coordinates).
Matrix projector(const MetricLieAlgebra& m, const Subspace& v);

struct SubspaceInfo {
  Subspace span;
  bool is_ideal = false;
  double ideal_defect = 0.0;
  Subspace complement;
};

/// Orthonormalizes user-supplied vectors, tests the ideal property and
/// returns the orthogonal complement.
SubspaceInfo subspace_ops(const MetricLieAlgebra& m, const Matrix& vectors,
                          double tol = kDefaultTol);

/// The subalgebra V with its induced inner product, in the orthonormal basis
/// given by V's columns. V must be a subalgebra.
MetricLieAlgebra restrict_to(const MetricLieAlgebra& m, const Subspace& v,
                             double tol = kDefaultTol);

}  // namespace cyclab

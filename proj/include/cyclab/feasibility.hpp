#pragma once

#include "cyclab/core.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace cyclab {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct SearchOptions {
  int restarts = 32;
  int iterations = 500;
  std::uint64_t seed = kDefaultSeed;
  double tol = kDefaultTol;  ///< rank and positivity cutoff
};

/// The cyclic condition as a linear map on symmetric matrices. Coordinates
/// on Sym(n) are Frobenius-orthonormal: E_pp, and (E_pq + E_qp)/sqrt(2) for p < q.
struct CyclicConstraintSystem {
  int n = 0;
  std::vector<std::array<int, 3>> rows;         ///< triples i < j < k
  std::vector<std::pair<int, int>> coordinates;  ///< (p, q), p <= q
  Matrix matrix;                                  ///< rows.size() x coordinates.size()
  std::vector<Matrix> nullspace;                  ///< Frobenius-orthonormal symmetric matrices
  double threshold = 0.0;                         ///< singular-value cutoff used
};

/// Cyclic sums S_ijk(G) = sum_m (c_ij^m G_mk + c_jk^m G_mi + c_ki^m G_mj), i < j < k.
Vector cyclic_residuals(const LieAlgebra& a, const Matrix& gram);

Matrix symmetric_basis_element(int n, int p, int q);
Vector to_symmetric_coordinates(const Matrix& s);
Matrix from_symmetric_coordinates(int n, const Vector& v);

CyclicConstraintSystem cyclic_constraint_system(const LieAlgebra& a, double tol = kDefaultTol);

enum class FeasibilityStatus { Feasible, InfeasibleWithinBudget, CertifiedInfeasible };
std::string to_string(FeasibilityStatus s);

struct RestartTrace {
  int restart = 0;
  double start_value = 0.0;
  double best_value = 0.0;
  int best_iteration = 0;
};

/// Result of maximizing lambda_min(sum_k y_k M_k) over the unit sphere |y| = 1.
struct MaxMinResult {
  Vector coefficients;
  Matrix matrix;
  double value = -std::numeric_limits<double>::infinity();
  std::vector<RestartTrace> trace;
};

/// Projected supergradient ascent with random restarts. The first restart
/// starts from `start` when it is nonzero. Deterministic for a given seed.
MaxMinResult maximize_min_eigenvalue(const std::vector<Matrix>& basis, const Vector& start,
                                     const SearchOptions& options);

struct CyclicFeasibilityResult {
  CyclicConstraintSystem system;
  FeasibilityStatus status = FeasibilityStatus::InfeasibleWithinBudget;
  double best_min_eigenvalue = 0.0;       ///< of the Frobenius-normalized candidate
  std::optional<Matrix> normalized_solution;  ///< |G|_F = 1
  std::optional<Matrix> solution;             ///< rescaled to trace n
  double solution_cyclic_defect = 0.0;
  std::string certificate;  ///< why infeasibility is certified, empty otherwise
  std::optional<Matrix> dual_certificate;  ///< positive definite, orthogonal to every solution
  std::vector<RestartTrace> trace;
};

CyclicFeasibilityResult find_cyclic_metric(const LieAlgebra& a,
                                           const SearchOptions& options = {});

/// Cyclic metrics on a semisimple algebra that are diagonal in a fixed
/// Killing-orthonormal basis e'_i: <e'_i, e'_i> = eps_i lambda_i with
/// cbar_ij^k (lambda_i + lambda_j + lambda_k) = 0 for i < j < k.
struct SemisimpleCyclicSolution {
  Matrix b_orthonormal_basis;  ///< columns e'_i in input coordinates
  Vector epsilons;             ///< B(e'_i, e'_i) = +-1
  Tensor3 cbar;                ///< eps_k c'_ij^k
  std::vector<std::array<int, 3>> active;  ///< triples with cbar_ij^k != 0
  Matrix constraints;          ///< one row per active triple, acting on lambda
  Matrix solution_space;       ///< columns span the lambda solutions
  int solution_space_dim = 0;
  bool feasible = false;
  double best_margin = 0.0;    ///< max over |lambda| = 1 of min_i eps_i lambda_i found
  std::optional<Vector> lambdas;
  std::optional<Matrix> gram;  ///< input-basis Gram matrix of the metric found
  double cross_check_defect = 0.0;  ///< cyclic residual of `gram` through the general system
};

/// Throws ValidationFailure when the Killing form is degenerate.
SemisimpleCyclicSolution semisimple_cyclic_metrics(const LieAlgebra& a,
                                                   const SearchOptions& options = {});

}  // namespace cyclab

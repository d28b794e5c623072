#pragma once

#include "cyclab/core.hpp"
#include "cyclab/homogeneous.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyclab {

enum class Family {
  Abelian,
  Gn,            ///< [e_n, e_i] = alpha_i e_i
  HyperbolicHn,  ///< Gn(c, ..., c)
  E11,           ///< Gn(alpha, -alpha)
  Hnp1,          ///< [u0, v_i] = rho_i v_i, [v0, v_i] = lambda_i v_i, sum lambda = 0
  HnpHat,        ///< [u0^, v_i] = sigma_i v_i (sigma_1 = 0), [v0^, v_i] = mu_i v_i
  Sl2Cyclic,
  So3Biinv,
  Heisenberg,
  Semidirect,
  DirectProduct,
};

std::string to_string(Family f);
/// Inverse of to_string; throws InvalidInput for unknown tags.
Family family_from_string(const std::string& tag);

/// A family tag with its parameters, in the order they appear in the
/// family's name:
///   Abelian: none (dimension in `dim`)      Gn: alpha_1..alpha_{n-1}
///   HyperbolicHn: c (dimension in `dim`)    E11: alpha
///   Hnp1: rho_1..rho_{n-1}, lambda_1..lambda_{n-2} (lambda_{n-1} implied)
///   HnpHat: sigma_2..sigma_{n-1}, mu_1..mu_{n-1}
///   Sl2Cyclic: lambda_1, lambda_2           So3Biinv: beta (metric -beta B)
///   Heisenberg: none                        DirectProduct: `factors`
struct FamilyParams {
  Family family = Family::Abelian;
  std::vector<double> values;
  int dim = 0;
  std::vector<FamilyParams> factors;
};

/// Human-readable name such as "G^4(1, 2, -3)" or "SL2(1, 2) x R".
std::string display_name(const FamilyParams& p);

/// R(e_i, e_j) e_k = value (basis coordinates).
struct CurvatureComponent {
  int i, j, k;
  Vector value;
};

/// Closed-form curvature data of a family in its preferred basis.
struct ReferenceInvariants {
  std::optional<Matrix> ricci;             ///< Ric(e_i, e_j)
  std::optional<Vector> principal_ricci;   ///< ascending
  std::optional<double> scalar;
  std::optional<Matrix> basic_sectional;   ///< K(e_i, e_j), i != j
  std::vector<CurvatureComponent> curvature;
  /// The listed components, completed by R(e_j,e_i) = -R(e_i,e_j), are all
  /// the nonzero ones.
  bool curvature_complete = false;
  std::optional<double> constant_curvature;
  std::optional<TvClass> verdict;
  std::optional<bool> unimodular;
  std::optional<bool> cyclic;
  std::optional<bool> harmonic_flag;       ///< Gn: sum alpha_i^3 == 0
};

struct CatalogEntry {
  MetricLieAlgebra algebra;
  FamilyParams params;
  ReferenceInvariants reference;
  /// Isometric re-descriptions: columns are the new basis in the entry's basis.
  std::vector<std::pair<std::string, Matrix>> rebases;
};

CatalogEntry make_abelian(int n);
CatalogEntry make_gn(const std::vector<double>& alphas);
CatalogEntry make_hyperbolic(double c, int n);
CatalogEntry make_e11(double alpha);
/// `lambdas` has n-1 entries summing to zero.
CatalogEntry make_hnp1(const std::vector<double>& rhos, const std::vector<double>& lambdas);
/// H^4(rho, sigma; lambda) = Hnp1(rho, sigma; lambda, -lambda).
CatalogEntry make_h4(double rho, double sigma, double lambda);
/// H^5(rho, sigma, tau; lambda, mu) = Hnp1(rho, sigma, tau; lambda, mu, -lambda-mu).
CatalogEntry make_h5(double rho, double sigma, double tau, double lambda, double mu);
/// `sigmas` = sigma_2..sigma_{n-1}, `mus` = mu_1..mu_{n-1}, mu_1 != 0.
CatalogEntry make_hnp_hat(const std::vector<double>& sigmas, const std::vector<double>& mus);
CatalogEntry make_sl2_cyclic(double l1, double l2);
CatalogEntry make_so3_biinvariant(double beta = 1.0);
CatalogEntry make_heisenberg();

/// Orthogonal direct sum.
CatalogEntry make_direct_product(const std::vector<CatalogEntry>& factors);

/// Semidirect sum g1 + g2 with bracket
/// [(X1,X2),(Y1,Y2)] = ([X1,Y1], [X2,Y2] + D(X1)Y2 - D(Y1)X2) and the
/// orthogonal sum of the two metrics.
struct SemidirectSpec {
  MetricLieAlgebra left;
  MetricLieAlgebra right;
  std::vector<Matrix> action;  ///< D(e_a) for each basis vector of `left`
};

struct SemidirectDefects {
  double derivation = 0.0;    ///< max |D[x,y] - [Dx,y] - [x,Dy]|
  double homomorphism = 0.0;  ///< max |D([a,b]) - [D(a), D(b)]|
  double selfadjoint = 0.0;   ///< max |G D - (G D)^T|
};

SemidirectDefects semidirect_defects(const SemidirectSpec& spec);

/// Throws ValidationFailure when an action matrix is not a derivation or the
/// action is not a homomorphism.
CatalogEntry make_semidirect(const SemidirectSpec& spec, double tol = kDefaultTol);

/// Builds any family from its parameters.
CatalogEntry make(const FamilyParams& params);

/// Dispatch by tag with a flat parameter list. Besides the family tags this
/// accepts H4 (rho sigma lambda), H5 (rho sigma tau lambda mu),
/// Sl2xR (l1 l2 [k]) and Sl2xH2 (l1 l2 alpha). Abelian and HyperbolicHn take
/// the dimension as their last parameter.
CatalogEntry make_named(const std::string& tag, const std::vector<double>& values);

/// Closed-form invariants; families without stated formulas leave fields empty.
ReferenceInvariants reference_invariants(const FamilyParams& params);

}  // namespace cyclab

#pragma once

#include "cyclab/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cyclab {

/// Curvature of the Levi-Civita connection, R(X,Y) = S_[X,Y] - [S_X, S_Y],
/// with kappa(X,Y) = <R(X,Y)X, Y> and K = kappa / |X ^ Y|^2.
struct CurvatureData {
  Tensor4 R;            ///< R(i,j,k,l): coefficient of e_l in R(e_i,e_j) e_k
  Tensor4 R_lowered;    ///< <R(e_i,e_j) e_k, e_l>
  Matrix kappa;         ///< kappa(e_i, e_j)
  Matrix ricci;         ///< Ric(e_i, e_j)
  Vector ricci_eigenvalues;   ///< relative to the metric, ascending
  Matrix ricci_eigenvectors;  ///< metric-orthonormal columns, basis coordinates
  Signature ricci_signature;
  double scalar = 0.0;
  bool flat = false;
  double scale = 0.0;  ///< largest |component| of R in an orthonormal frame
};

CurvatureData riemann(const MetricLieAlgebra& m, double tol = kDefaultTol);

struct RicciData {
  Matrix ricci;
  Vector eigenvalues;   ///< principal Ricci curvatures, ascending
  Matrix eigenvectors;  ///< metric-orthonormal columns
  Signature signature;
  double scalar = 0.0;
};

/// Ric(X,Y) = sum_i <R(u_i,X)u_i, Y> over an orthonormal frame, with eigen-data.
RicciData ricci_scalar(const MetricLieAlgebra& m, double tol = kDefaultTol);

/// R(x,y)z for arbitrary vectors.
Vector curvature_apply(const CurvatureData& c, const Vector& x, const Vector& y, const Vector& z);

double kappa(const MetricLieAlgebra& m, const CurvatureData& c, const Vector& x, const Vector& y);
double kappa(const MetricLieAlgebra& m, const Vector& x, const Vector& y);

/// -|[X,Y]|^2 + <S_X Y, S_Y X> - <S_X X, S_Y Y>; equals kappa when the metric is cyclic.
double kappa_cyclic_formula(const MetricLieAlgebra& m, const Vector& x, const Vector& y);

/// Sectional curvature of the plane spanned by x and y. Throws InvalidInput
/// when the plane is degenerate.
double sectional(const MetricLieAlgebra& m, const CurvatureData& c, const Vector& x,
                 const Vector& y, double tol = kDefaultTol);
double sectional(const MetricLieAlgebra& m, const Vector& x, const Vector& y,
                 double tol = kDefaultTol);

struct CurvatureDefects {
  double antisymmetry = 0.0;   ///< max |R(X,Y) + R(Y,X)|
  double metric_skew = 0.0;    ///< max |<R(X,Y)Z,W> + <R(X,Y)W,Z>|
  double bianchi = 0.0;        ///< max |R(X,Y)Z + R(Y,Z)X + R(Z,X)Y|
  double scalar_trace = 0.0;   ///< |s - tr(G^{-1} Ric)| with s from the frame sum
};

CurvatureDefects curvature_defects(const MetricLieAlgebra& m, const CurvatureData& c);

/// Sectional curvatures of the coordinate planes span{e_i, e_j}, i < j.
struct BasicSections {
  double min = 0.0;
  double max = 0.0;
  std::pair<int, int> argmin{0, 1};
  std::pair<int, int> argmax{0, 1};
};

BasicSections basic_sections(const MetricLieAlgebra& m, const CurvatureData& c);

/// Best sectional curvatures found over all 2-planes: coordinate planes of
/// the basis, of the orthonormal frame and of the Ricci eigenframe, refined
/// by projected gradient steps on orthonormal pairs.
struct SectionalRange {
  double min = 0.0;
  double max = 0.0;
  Matrix min_plane;  ///< two columns, basis coordinates
  Matrix max_plane;
};

SectionalRange sectional_range(const MetricLieAlgebra& m, const CurvatureData& c,
                               int iterations = 200);

struct PropertyClause {
  std::string name;
  bool applicable = false;
  bool pass = true;
  std::string detail;
};

struct CurvaturePropertyReport {
  std::vector<PropertyClause> clauses;
  bool pass = true;
};

/// Flatness and sign properties of cyclic metrics: flat iff abelian;
/// solvable nonabelian gives s < 0; unimodular nonabelian gives some K > 0
/// (and some K < 0 if also solvable); nonunimodular gives some K < 0.
/// Throws ValidationFailure on non-cyclic input.
CurvaturePropertyReport curvature_property_suite(const MetricLieAlgebra& m,
                                                 double tol = kDefaultTol);

}  // namespace cyclab

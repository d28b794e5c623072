#pragma once

#include "cyclab/core.hpp"

#include <array>
#include <string>

namespace cyclab {

/// Which of the three irreducible components of a homogeneous structure
/// are present. T1: vectorial, T2: traceless cyclic, T3: totally skew.
enum class TvClass { Zero, T1, T2, T3, T1T2, T1T3, T2T3, Generic };

std::string to_string(TvClass c);

/// The left-invariant homogeneous structure S = nabla - nabla~ of a metric
/// Lie algebra, where nabla~ is the Cartan-Schouten (-)-connection, together
/// with its decomposition S = S1 + S2 + S3.
///
/// All rank-3 arrays hold covariant components in the algebra's basis:
/// S(i,j,k) = <S_{e_i} e_j, e_k>. Norms are taken in an orthonormal frame.
struct HomogeneousStructure {
  Tensor3 S;
  Tensor3 U;        ///< U(i,j,k) = <U(e_i,e_j), e_k>
  Tensor3 torsion;  ///< <T~_{e_i} e_j, e_k> = -<[e_i,e_j], e_k>
  Vector c12;       ///< c12(S)(e_k) = sum_a S(u_a,u_a,e_k), {u_a} orthonormal
  std::array<Tensor3, 3> components;
  std::array<double, 3> norms{};
  double norm = 0.0;
  double threshold = 0.0;  ///< component norms above this count as present
  TvClass verdict = TvClass::Zero;
};

/// Koszul formula: 2<S_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>.
Tensor3 koszul_tensor(const MetricLieAlgebra& m);

/// 2<U(X,Y),Z> = <[Z,X],Y> + <[Z,Y],X>.
Tensor3 u_tensor(const MetricLieAlgebra& m);

/// Torsion of the (-)-connection, T~_X Y = -[X,Y], lowered with the metric.
Tensor3 cartan_schouten_torsion(const MetricLieAlgebra& m);

/// T~_{XYZ} = S_{YXZ} - S_{XYZ}
Tensor3 torsion_from_structure(const Tensor3& s);
/// 2 S_{XYZ} = T~_{YXZ} + T~_{YZX} + T~_{XZY}
Tensor3 structure_from_torsion(const Tensor3& t);

/// Matrix of the operator S_x (column j = coordinates of S_x e_j).
Matrix connection_operator(const MetricLieAlgebra& m, const Tensor3& s, const Vector& x);

/// Full structure with its three-way decomposition and class verdict.
HomogeneousStructure tv_decompose(const MetricLieAlgebra& m, double tol = kDefaultTol);
inline HomogeneousStructure structure_tensor(const MetricLieAlgebra& m, double tol = kDefaultTol) {
  return tv_decompose(m, tol);
}

/// Norm of a covariant rank-3 tensor measured in an orthonormal frame.
double frame_norm(const MetricLieAlgebra& m, const Tensor3& t);

struct CyclicCheck {
  bool cyclic = false;
  double defect = 0.0;     ///< max over i<j<k of |cyclic sum of <[e_i,e_j],e_k>|
  double threshold = 0.0;  ///< tol * max|c| * max|G|
};

CyclicCheck is_cyclic(const MetricLieAlgebra& m, double tol = kDefaultTol);

struct VectorialData {
  bool vectorial = false;
  Vector xi;   ///< basis coordinates
  Vector phi;  ///< phi(e_k) = <xi, e_k>
  double residual_norm = 0.0;  ///< ||S - S1||
  double threshold = 0.0;
};

VectorialData is_vectorial(const MetricLieAlgebra& m, double tol = kDefaultTol);

struct TracelessCheck {
  bool traceless = false;
  double max_trace = 0.0;        ///< max |tr ad_{e_i}|
  double c12_mismatch = 0.0;     ///< max |c12(S)(e_i) + tr ad_{e_i}|
};

/// Traceless torsion, i.e. unimodular algebra.
TracelessCheck is_traceless(const MetricLieAlgebra& m, double tol = kDefaultTol);

struct BiinvariantCheck {
  bool biinvariant = false;
  double u_norm = 0.0;
};

BiinvariantCheck is_biinvariant(const MetricLieAlgebra& m, double tol = kDefaultTol);

}  // namespace cyclab

#pragma once

// Reference computations written directly from textbook formulas in basis
// coordinates, without going through the library's frames or tensors.

#include "cyclab/core.hpp"

#include <doctest.h>

#include <vector>

namespace oracle {

using cyclab::Matrix;
using cyclab::Vector;

// <[e_i, e_j], e_k>
inline double lowered(const cyclab::MetricLieAlgebra& m, int i, int j, int k) {
  double s = 0.0;
  for (int l = 0; l < m.dim(); ++l) s += m.c(i, j, l) * m.gram()(l, k);
  return s;
}

// Levi-Civita of left-invariant fields: nabla[i] has column j = nabla_{e_i} e_j,
// from 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>.
inline std::vector<Matrix> connection(const cyclab::MetricLieAlgebra& m) {
  const int n = m.dim();
  const Matrix ginv = m.gram().inverse();
  std::vector<Matrix> nabla(n, Matrix::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vector cov(n);
      for (int k = 0; k < n; ++k)
        cov(k) = 0.5 * (lowered(m, i, j, k) - lowered(m, j, k, i) + lowered(m, k, i, j));
      nabla[i].col(j) = ginv * cov;
    }
  return nabla;
}

inline Matrix nabla_along(const std::vector<Matrix>& nabla, const Vector& x) {
  Matrix out = Matrix::Zero(x.size(), x.size());
  for (int i = 0; i < x.size(); ++i) out += x(i) * nabla[i];
  return out;
}

// Standard sign: R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
inline Matrix curvature_operator(const cyclab::MetricLieAlgebra& m, const std::vector<Matrix>& nabla,
                                 const Vector& x, const Vector& y) {
  const Matrix nx = nabla_along(nabla, x), ny = nabla_along(nabla, y);
  return nx * ny - ny * nx - nabla_along(nabla, cyclab::bracket(m, x, y));
}

// Ric(Y, Z) = tr(X -> R(X,Y)Z)
inline Matrix ricci(const cyclab::MetricLieAlgebra& m) {
  const int n = m.dim();
  const auto nabla = connection(m);
  Matrix ric = Matrix::Zero(n, n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) {
        const Vector ea = Vector::Unit(n, a);
        ric(b, c) += (curvature_operator(m, nabla, ea, Vector::Unit(n, b)) * Vector::Unit(n, c))(a);
      }
  return ric;
}

inline double scalar(const cyclab::MetricLieAlgebra& m) {
  return (m.gram().inverse() * ricci(m)).trace();
}

// K(X,Y) = <R(X,Y)Y, X> / |X ^ Y|^2
inline double sectional(const cyclab::MetricLieAlgebra& m, const Vector& x, const Vector& y) {
  const auto nabla = connection(m);
  const Vector r = curvature_operator(m, nabla, x, y) * y;
  const double area = m.inner(x, x) * m.inner(y, y) - m.inner(x, y) * m.inner(x, y);
  return m.inner(r, x) / area;
}

inline double max_abs(const Matrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace oracle

#define CHECK_CLOSE(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

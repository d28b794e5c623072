#include "cyclab/homogeneous.hpp"

#include <cmath>

namespace cyclab {

std::string to_string(TvClass c) {
  switch (c) {
    case TvClass::Zero: return "zero";
    case TvClass::T1: return "T1";
    case TvClass::T2: return "T2";
    case TvClass::T3: return "T3";
    case TvClass::T1T2: return "T1+T2";
    case TvClass::T1T3: return "T1+T3";
    case TvClass::T2T3: return "T2+T3";
    case TvClass::Generic: return "generic";
  }
  return "unknown";
}

Tensor3 koszul_tensor(const MetricLieAlgebra& m) {
  const int n = m.dim();
  const Tensor3& b = m.lowered();
  Tensor3 s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s(i, j, k) = 0.5 * (b(i, j, k) - b(j, k, i) + b(k, i, j));
  return s;
}

Tensor3 u_tensor(const MetricLieAlgebra& m) {
  const int n = m.dim();
  const Tensor3& b = m.lowered();
  Tensor3 u(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) u(i, j, k) = 0.5 * (b(k, i, j) + b(k, j, i));
  return u;
}

Tensor3 cartan_schouten_torsion(const MetricLieAlgebra& m) {
  Tensor3 t = m.lowered();
  t *= -1.0;
  return t;
}

Tensor3 torsion_from_structure(const Tensor3& s) {
  const int n = s.dim();
  Tensor3 t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t(i, j, k) = s(j, i, k) - s(i, j, k);
  return t;
}

Tensor3 structure_from_torsion(const Tensor3& t) {
  const int n = t.dim();
  Tensor3 s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s(i, j, k) = 0.5 * (t(j, i, k) + t(j, k, i) + t(i, k, j));
  return s;
}

Matrix connection_operator(const MetricLieAlgebra& m, const Tensor3& s, const Vector& x) {
  const int n = m.dim();
  // lowered(j, l) = sum_i x_i S(i, j, l) = <S_x e_j, e_l>
  Matrix lowered = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) lowered(j, l) += x(i) * s(i, j, l);
  }
  // column j of the operator = G^{-1} (<S_x e_j, e_l>)_l
  return m.gram_inverse() * lowered.transpose();
}

double frame_norm(const MetricLieAlgebra& m, const Tensor3& t) {
  return std::sqrt(t.in_frame(m.frame()).squared_norm());
}

HomogeneousStructure tv_decompose(const MetricLieAlgebra& m, double tol) {
  const int n = m.dim();
  HomogeneousStructure h;
  h.S = koszul_tensor(m);
  h.U = u_tensor(m);
  h.torsion = cartan_schouten_torsion(m);

  const Tensor3 sf = h.S.in_frame(m.frame());
  h.norm = std::sqrt(sf.squared_norm());

  // Decomposition in the orthonormal frame.
  Tensor3 s3(n), s1(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) s3(a, b, c) = (sf(a, b, c) + sf(b, c, a) + sf(c, a, b)) / 3.0;

  Vector c12f = Vector::Zero(n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a) c12f(c) += sf(a, a, c);
  if (n > 1) {
    const Vector phi = c12f / static_cast<double>(n - 1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          s1(a, b, c) = (a == b ? phi(c) : 0.0) - (a == c ? phi(b) : 0.0);
  }
  Tensor3 s2 = sf - s1 - s3;

  h.norms = {std::sqrt(s1.squared_norm()), std::sqrt(s2.squared_norm()),
             std::sqrt(s3.squared_norm())};
  const Matrix& back = m.frame_inverse();
  h.components = {s1.in_frame(back), s2.in_frame(back), s3.in_frame(back)};
  // c12 in basis coordinates: c12(e_k) = sum_a S(u_a, u_a, e_k).
  h.c12 = back.transpose() * c12f;

  h.threshold = tol * std::max(1.0, h.norm);
  if (n == 1) {
    h.verdict = TvClass::Zero;
    return h;
  }
  const bool p1 = h.norms[0] > h.threshold;
  const bool p2 = h.norms[1] > h.threshold;
  const bool p3 = h.norms[2] > h.threshold;
  const int mask = (p1 ? 1 : 0) | (p2 ? 2 : 0) | (p3 ? 4 : 0);
  static constexpr TvClass table[8] = {TvClass::Zero, TvClass::T1,   TvClass::T2,
                                       TvClass::T1T2, TvClass::T3,   TvClass::T1T3,
                                       TvClass::T2T3, TvClass::Generic};
  h.verdict = table[mask];
  return h;
}

CyclicCheck is_cyclic(const MetricLieAlgebra& m, double tol) {
  const int n = m.dim();
  const Tensor3& b = m.lowered();
  CyclicCheck r;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        r.defect = std::max(r.defect, std::abs(b(i, j, k) + b(j, k, i) + b(k, i, j)));
  r.threshold = tol * m.pairing_scale();
  r.cyclic = r.defect <= r.threshold;
  return r;
}

VectorialData is_vectorial(const MetricLieAlgebra& m, double tol) {
  const int n = m.dim();
  const HomogeneousStructure h = tv_decompose(m, tol);
  VectorialData v;
  v.phi = n > 1 ? Vector(h.c12 / static_cast<double>(n - 1)) : Vector::Zero(n);
  v.xi = m.gram_inverse() * v.phi;
  v.residual_norm = std::hypot(h.norms[1], h.norms[2]);
  v.threshold = h.threshold;
  v.vectorial = v.residual_norm <= v.threshold;
  return v;
}

TracelessCheck is_traceless(const MetricLieAlgebra& m, double tol) {
  const Vector traces = ad_traces(m.algebra());
  const HomogeneousStructure h = tv_decompose(m, tol);
  TracelessCheck t;
  t.max_trace = traces.size() ? traces.cwiseAbs().maxCoeff() : 0.0;
  t.c12_mismatch = (h.c12 + traces).cwiseAbs().maxCoeff();
  t.traceless = t.max_trace <= tol * m.algebra().scale() * m.dim();
  return t;
}

BiinvariantCheck is_biinvariant(const MetricLieAlgebra& m, double tol) {
  BiinvariantCheck b;
  b.u_norm = frame_norm(m, u_tensor(m));
  b.biinvariant = b.u_norm <= tol * std::max(frame_norm(m, koszul_tensor(m)), m.frame_scale());
  return b;
}

}  // namespace cyclab

#include "cyclab/curvature.hpp"

#include "cyclab/homogeneous.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace cyclab {

namespace {

std::vector<Matrix> connection_operators(const MetricLieAlgebra& m, const Tensor3& s) {
  const int n = m.dim();
  std::vector<Matrix> ops;
  ops.reserve(n);
  for (int i = 0; i < n; ++i) ops.push_back(connection_operator(m, s, Vector::Unit(n, i)));
  return ops;
}

// out(a,b,c,d) = sum F(i,a) F(j,b) F(k,c) F(l,d) t(i,j,k,l), one index at a time.
Tensor4 tensor4_in_frame(const Tensor4& t, const Matrix& f) {
  const int n = t.dim();
  Tensor4 cur = t;
  for (int slot = 0; slot < 4; ++slot) {
    Tensor4 next(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            double acc = 0.0;
            for (int p = 0; p < n; ++p) {
              switch (slot) {
                case 0: acc += f(p, a) * cur(p, b, c, d); break;
                case 1: acc += f(p, b) * cur(a, p, c, d); break;
                case 2: acc += f(p, c) * cur(a, b, p, d); break;
                default: acc += f(p, d) * cur(a, b, c, p); break;
              }
            }
            next(a, b, c, d) = acc;
          }
    cur = std::move(next);
  }
  return cur;
}

double eval4(const Tensor4& t, const Vector& a, const Vector& b, const Vector& c,
             const Vector& d) {
  const int n = t.dim();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b(j) == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += a(i) * b(j) * c(k) * d(l) * t(i, j, k, l);
    }
  }
  return acc;
}

}  // namespace

CurvatureData riemann(const MetricLieAlgebra& m, double tol) {
  const int n = m.dim();
  const Tensor3 s = koszul_tensor(m);
  const std::vector<Matrix> ops = connection_operators(m, s);
  const Matrix& g = m.gram();
  const Matrix& ginv = m.gram_inverse();

  CurvatureData c;
  c.R = Tensor4(n);
  c.R_lowered = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix rij = -(ops[i] * ops[j] - ops[j] * ops[i]);
      for (int p = 0; p < n; ++p) {
        const double cp = m.c(i, j, p);
        if (cp != 0.0) rij += cp * ops[p];
      }
      const Matrix low = g * rij;  // low(l, k) = <R e_k, e_l>
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          c.R(i, j, k, l) = rij(l, k);
          c.R_lowered(i, j, k, l) = low(l, k);
        }
    }

  c.kappa = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c.kappa(i, j) = c.R_lowered(i, j, i, j);

  c.ricci = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) acc += ginv(i, l) * c.R_lowered(i, j, l, k);
      c.ricci(j, k) = acc;
    }
  c.ricci = 0.5 * (c.ricci + c.ricci.transpose()).eval();
  c.scalar = (ginv * c.ricci).trace();

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(c.ricci, g);
  c.ricci_eigenvalues = es.eigenvalues();
  c.ricci_eigenvectors = es.eigenvectors();

  c.scale = tensor4_in_frame(c.R_lowered, m.frame()).max_abs();
  const double fs2 = m.frame_scale() * m.frame_scale();
  c.flat = c.scale <= tol * fs2;
  const double eig_max = n ? c.ricci_eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  c.ricci_signature = signature_of(c.ricci_eigenvalues, tol * std::max(eig_max, fs2));
  return c;
}

Vector curvature_apply(const CurvatureData& c, const Vector& x, const Vector& y,
                       const Vector& z) {
  const int n = c.R.dim();
  if (x.size() != n || y.size() != n || z.size() != n)
    throw InvalidInput("curvature_apply: vector length does not match dimension");
  Vector out = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (y(j) == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        const double w = x(i) * y(j) * z(k);
        if (w == 0.0) continue;
        for (int l = 0; l < n; ++l) out(l) += w * c.R(i, j, k, l);
      }
    }
  }
  return out;
}

double kappa(const MetricLieAlgebra& m, const CurvatureData& c, const Vector& x,
             const Vector& y) {
  return m.inner(curvature_apply(c, x, y, x), y);
}

double kappa(const MetricLieAlgebra& m, const Vector& x, const Vector& y) {
  return kappa(m, riemann(m), x, y);
}

double kappa_cyclic_formula(const MetricLieAlgebra& m, const Vector& x, const Vector& y) {
  const Tensor3 s = koszul_tensor(m);
  const Matrix sx = connection_operator(m, s, x);
  const Matrix sy = connection_operator(m, s, y);
  const Vector b = bracket(m, x, y);
  return -m.inner(b, b) + m.inner(sx * y, sy * x) - m.inner(sx * x, sy * y);
}

double sectional(const MetricLieAlgebra& m, const CurvatureData& c, const Vector& x,
                 const Vector& y, double tol) {
  const double xx = m.inner(x, x);
  const double yy = m.inner(y, y);
  const double xy = m.inner(x, y);
  const double area = xx * yy - xy * xy;
  if (!(area > tol * xx * yy) || xx <= 0.0 || yy <= 0.0)
    throw InvalidInput("sectional: the vectors do not span a 2-plane");
  return kappa(m, c, x, y) / area;
}

double sectional(const MetricLieAlgebra& m, const Vector& x, const Vector& y, double tol) {
  return sectional(m, riemann(m, tol), x, y, tol);
}

CurvatureDefects curvature_defects(const MetricLieAlgebra& m, const CurvatureData& c) {
  const int n = m.dim();
  CurvatureDefects d;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          d.antisymmetry = std::max(d.antisymmetry, std::abs(c.R(i, j, k, l) + c.R(j, i, k, l)));
          d.metric_skew = std::max(
              d.metric_skew, std::abs(c.R_lowered(i, j, k, l) + c.R_lowered(i, j, l, k)));
          d.bianchi = std::max(
              d.bianchi, std::abs(c.R(i, j, k, l) + c.R(j, k, i, l) + c.R(k, i, j, l)));
        }
  const Matrix& f = m.frame();
  double frame_sum = 0.0;
  for (int a = 0; a < n; ++a) frame_sum += f.col(a).dot(c.ricci * f.col(a));
  d.scalar_trace = std::abs(frame_sum - c.scalar);
  return d;
}

BasicSections basic_sections(const MetricLieAlgebra& m, const CurvatureData& c) {
  const int n = m.dim();
  BasicSections b;
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double k = sectional(m, c, Vector::Unit(n, i), Vector::Unit(n, j));
      if (first || k < b.min) {
        b.min = k;
        b.argmin = {i, j};
      }
      if (first || k > b.max) {
        b.max = k;
        b.argmax = {i, j};
      }
      first = false;
    }
  return b;
}

namespace {

struct Plane {
  Vector x, y;  // orthonormal, frame coordinates
  double k = 0.0;
};

void orthonormalize_pair(Vector& x, Vector& y) {
  x.normalize();
  y -= x.dot(y) * x;
  y.normalize();
}

Plane refine(const Tensor4& rf, Plane p, int iterations, double sign, double scale) {
  const int n = rf.dim();
  double step = 0.5 / std::max(scale, std::numeric_limits<double>::min());
  for (int it = 0; it < iterations && step * scale > 1e-14; ++it) {
    Vector gx = Vector::Zero(n), gy = Vector::Zero(n);
    for (int q = 0; q < n; ++q) {
      const Vector e = Vector::Unit(n, q);
      gx(q) = eval4(rf, e, p.y, p.x, p.y) + eval4(rf, p.x, p.y, e, p.y);
      gy(q) = eval4(rf, p.x, e, p.x, p.y) + eval4(rf, p.x, p.y, p.x, e);
    }
    Plane trial = p;
    trial.x += sign * step * gx;
    trial.y += sign * step * gy;
    orthonormalize_pair(trial.x, trial.y);
    trial.k = eval4(rf, trial.x, trial.y, trial.x, trial.y);
    if (sign * (trial.k - p.k) > 0.0) {
      p = trial;
      step *= 1.2;
    } else {
      step *= 0.5;
    }
  }
  return p;
}

}  // namespace

SectionalRange sectional_range(const MetricLieAlgebra& m, const CurvatureData& c,
                               int iterations) {
  const int n = m.dim();
  SectionalRange r;
  if (n < 2) return r;
  const Tensor4 rf = tensor4_in_frame(c.R_lowered, m.frame());

  // Candidate frames, all expressed in orthonormal-frame coordinates.
  std::vector<Matrix> frames;
  frames.push_back(Matrix::Identity(n, n));
  frames.push_back(m.frame_inverse());
  frames.push_back(m.frame_inverse() * c.ricci_eigenvectors);

  std::vector<Plane> planes;
  for (const Matrix& f : frames)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Plane p{f.col(i), f.col(j), 0.0};
        orthonormalize_pair(p.x, p.y);
        if (!p.x.allFinite() || !p.y.allFinite()) continue;
        p.k = eval4(rf, p.x, p.y, p.x, p.y);
        planes.push_back(p);
      }

  auto best = [&](double sign) {
    std::vector<Plane> sorted = planes;
    std::sort(sorted.begin(), sorted.end(),
              [&](const Plane& a, const Plane& b) { return sign * a.k > sign * b.k; });
    Plane out = sorted.front();
    if (n > 2 && c.scale > 0.0) {
      const std::size_t tries = std::min<std::size_t>(3, sorted.size());
      for (std::size_t t = 0; t < tries; ++t) {
        Plane q = refine(rf, sorted[t], iterations, sign, c.scale);
        if (sign * (q.k - out.k) > 0.0) out = q;
      }
    }
    return out;
  };
  const Plane hi = best(1.0);
  const Plane lo = best(-1.0);
  r.max = hi.k;
  r.min = lo.k;
  r.max_plane = Matrix(n, 2);
  r.max_plane << m.frame() * hi.x, m.frame() * hi.y;
  r.min_plane = Matrix(n, 2);
  r.min_plane << m.frame() * lo.x, m.frame() * lo.y;
  return r;
}

CurvaturePropertyReport curvature_property_suite(const MetricLieAlgebra& m, double tol) {
  const CyclicCheck cyc = is_cyclic(m, tol);
  if (!cyc.cyclic)
    throw ValidationFailure("curvature property suite requires a cyclic metric", cyc.defect);

  const StructureReport sr = structure_report(m, tol);
  const CurvatureData c = riemann(m, tol);
  const SectionalRange range = sectional_range(m, c);
  const double thr = 10.0 * tol * m.frame_scale() * m.frame_scale();

  CurvaturePropertyReport rep;
  auto add = [&](std::string name, bool applicable, bool pass, std::string detail) {
    PropertyClause cl{std::move(name), applicable, !applicable || pass, std::move(detail)};
    rep.pass = rep.pass && cl.pass;
    rep.clauses.push_back(std::move(cl));
  };
  add("flat iff abelian", true, c.flat == sr.abelian,
      std::string("flat=") + (c.flat ? "true" : "false") +
          " abelian=" + (sr.abelian ? "true" : "false"));
  add("solvable nonabelian has negative scalar curvature", sr.solvable && !sr.abelian,
      c.scalar < -thr, "s=" + std::to_string(c.scalar));
  add("unimodular nonabelian has a positive sectional curvature",
      sr.unimodular && !sr.abelian, range.max > thr, "max K=" + std::to_string(range.max));
  add("unimodular solvable nonabelian has a negative sectional curvature",
      sr.unimodular && sr.solvable && !sr.abelian, range.min < -thr,
      "min K=" + std::to_string(range.min));
  add("nonunimodular has a negative sectional curvature", !sr.unimodular, range.min < -thr,
      "min K=" + std::to_string(range.min));
  return rep;
}

RicciData ricci_scalar(const MetricLieAlgebra& m, double tol) {
  CurvatureData c = riemann(m, tol);
  return RicciData{std::move(c.ricci), std::move(c.ricci_eigenvalues),
                   std::move(c.ricci_eigenvectors), c.ricci_signature, c.scalar};
}

}  // namespace cyclab

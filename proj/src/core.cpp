#include "cyclab/core.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace cyclab {

Tensor3 Tensor3::in_frame(const Matrix& frame) const {
  const int n = n_;
  // Contract one index at a time: O(n^4).
  Tensor3 a(n), b(n), out(n);
  for (int p = 0; p < n; ++p)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += frame(i, p) * (*this)(i, j, k);
        a(p, j, k) = s;
      }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += frame(j, q) * a(p, j, k);
        b(p, q, k) = s;
      }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += frame(k, r) * b(p, q, k);
        out(p, q, r) = s;
      }
  return out;
}

double contract(const Tensor3& a, const Tensor3& b) {
  double s = 0.0;
  const auto& x = a.data();
  const auto& y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// ---- LieAlgebra -------------------------------------------------------------

namespace {

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

}  // namespace

LieAlgebra::LieAlgebra(Tensor3 constants, std::vector<std::string> labels)
    : constants_(std::move(constants)), labels_(std::move(labels)) {
  const int n = constants_.dim();
  if (n < 1) throw InvalidInput("Lie algebra dimension must be at least 1");
  if (labels_.empty()) labels_ = default_labels(n);
  if (static_cast<int>(labels_.size()) != n) {
    std::ostringstream os;
    os << "expected " << n << " basis labels, got " << labels_.size();
    throw InvalidInput(os.str());
  }
}

LieAlgebra LieAlgebra::from_brackets(int n, const std::vector<BracketEntry>& entries,
                                     std::vector<std::string> labels) {
  if (n < 1) throw InvalidInput("Lie algebra dimension must be at least 1");
  Tensor3 c(n);
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n || e.j >= n || e.k >= n)
      throw InvalidInput("bracket entry index out of range");
    if (e.i == e.j) throw InvalidInput("bracket entry with i == j");
    c(e.i, e.j, e.k) += e.value;
    c(e.j, e.i, e.k) -= e.value;
  }
  return LieAlgebra(std::move(c), std::move(labels));
}

LieAlgebra LieAlgebra::abelian(int n) { return LieAlgebra(Tensor3(n)); }

LieAlgebra LieAlgebra::in_basis(const Matrix& basis) const {
  const int n = dim();
  if (basis.rows() != n || basis.cols() != n)
    throw InvalidInput("change of basis must be square of the algebra dimension");
  Eigen::FullPivLU<Matrix> lu(basis);
  if (!lu.isInvertible()) throw InvalidInput("change of basis is singular");
  const Matrix inv = lu.inverse();
  // c'(a,b,.) = inv * [f_a, f_b]
  Tensor3 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Vector v = bracket(*this, basis.col(a), basis.col(b));
      Vector w = inv * v;
      for (int k = 0; k < n; ++k) {
        out(a, b, k) = w(k);
        out(b, a, k) = -w(k);
      }
    }
  return LieAlgebra(std::move(out), labels_);
}

ValidationReport validate(const LieAlgebra& algebra, double tol) {
  const int n = algebra.dim();
  const Tensor3& c = algebra.constants();
  ValidationReport r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        r.antisymmetry_defect = std::max(r.antisymmetry_defect, std::abs(c(i, j, k) + c(j, i, k)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          r.jacobi_defect = std::max(r.jacobi_defect, std::abs(s));
        }
  const double scale = c.max_abs();
  r.antisymmetry_threshold = tol * scale;
  r.jacobi_threshold = tol * scale * scale;
  r.pass = r.antisymmetry_defect <= r.antisymmetry_threshold &&
           r.jacobi_defect <= r.jacobi_threshold;
  return r;
}

// ---- InnerProduct -----------------------------------------------------------

InnerProduct::InnerProduct(const Matrix& gram, double tol) {
  if (gram.rows() != gram.cols() || gram.rows() < 1)
    throw InvalidInput("Gram matrix must be square and nonempty");
  const double scale = gram.cwiseAbs().maxCoeff();
  const double asym = (gram - gram.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    std::ostringstream os;
    os << "Gram matrix is not symmetric (defect " << asym << ")";
    throw ValidationFailure(os.str(), asym);
  }
  gram_ = 0.5 * (gram + gram.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram_, Eigen::EigenvaluesOnly);
  min_eigenvalue_ = es.eigenvalues()(0);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(min_eigenvalue_ > tol * top)) {
    std::ostringstream os;
    os << "Gram matrix is not positive definite (min eigenvalue " << min_eigenvalue_ << ")";
    throw ValidationFailure(os.str(), min_eigenvalue_);
  }
}

// ---- MetricLieAlgebra -------------------------------------------------------

MetricLieAlgebra::MetricLieAlgebra(LieAlgebra algebra, InnerProduct metric, double tol)
    : metric_(std::move(metric)) {
  const int n = algebra.dim();
  if (metric_.dim() != n) {
    std::ostringstream os;
    os << "Gram matrix is " << metric_.dim() << "x" << metric_.dim() << " but algebra has dimension "
       << n;
    throw InvalidInput(os.str());
  }
  const ValidationReport rep = validate(algebra, tol);
  if (!rep.pass) {
    std::ostringstream os;
    os << "not a Lie algebra: antisymmetry defect " << rep.antisymmetry_defect
       << ", Jacobi defect " << rep.jacobi_defect;
    throw ValidationFailure(os.str(), std::max(rep.antisymmetry_defect, rep.jacobi_defect));
  }
  Tensor3 c = algebra.constants();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = 0.5 * (c(i, j, k) - c(j, i, k));
        c(i, j, k) = v;
        c(j, i, k) = -v;
      }
  algebra_ = LieAlgebra(std::move(c), algebra.labels());

  const Matrix& g = metric_.gram();
  gram_inverse_ = g.inverse();
  Eigen::LLT<Matrix> llt(g);
  const Matrix upper = llt.matrixU();
  frame_ = upper.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  frame_inverse_ = upper;

  lowered_ = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += algebra_.c(i, j, m) * g(m, k);
        lowered_(i, j, k) = s;
      }
  // In an orthonormal frame the structure constants equal the lowered ones.
  frame_constants_ = lowered_.in_frame(frame_);
}

MetricLieAlgebra::MetricLieAlgebra(LieAlgebra algebra, double tol)
    : MetricLieAlgebra(algebra, InnerProduct::identity(algebra.dim()), tol) {}

double MetricLieAlgebra::pairing_scale() const {
  return algebra_.scale() * gram().cwiseAbs().maxCoeff();
}

MetricLieAlgebra MetricLieAlgebra::in_basis(const Matrix& basis) const {
  Matrix g = basis.transpose() * gram() * basis;
  g = 0.5 * (g + g.transpose());
  return MetricLieAlgebra(algebra_.in_basis(basis), InnerProduct(g), 1e-6);
}

// ---- brackets ---------------------------------------------------------------

Vector bracket(const LieAlgebra& algebra, const Vector& x, const Vector& y) {
  const int n = algebra.dim();
  if (x.size() != n || y.size() != n) throw InvalidInput("bracket: vector length mismatch");
  Vector out = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double w = x(i) * y(j);
      if (w == 0.0) continue;
      for (int k = 0; k < n; ++k) out(k) += algebra.c(i, j, k) * w;
    }
  }
  return out;
}

Matrix ad_matrix(const LieAlgebra& algebra, const Vector& x) {
  const int n = algebra.dim();
  if (x.size() != n) throw InvalidInput("ad_matrix: vector length mismatch");
  Matrix ad = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) ad(k, j) += x(i) * algebra.c(i, j, k);
  }
  return ad;
}

Vector ad_traces(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  Vector t = Vector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) t(i) += algebra.c(i, k, k);
  return t;
}

Signature signature_of(const Vector& eigenvalues, double threshold) {
  Signature s;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) > threshold)
      ++s.positive;
    else if (eigenvalues(i) < -threshold)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

KillingData killing_form(const LieAlgebra& algebra, double tol) {
  const int n = algebra.dim();
  std::vector<Matrix> ads;
  ads.reserve(n);
  for (int i = 0; i < n; ++i) ads.push_back(ad_matrix(algebra, Vector::Unit(n, i)));
  KillingData kd;
  kd.matrix = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = (ads[i] * ads[j]).trace();
      kd.matrix(i, j) = v;
      kd.matrix(j, i) = v;
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es(kd.matrix, Eigen::EigenvaluesOnly);
  kd.eigenvalues = es.eigenvalues();
  const double scale = algebra.scale();
  const double threshold = tol * std::max(kd.eigenvalues.cwiseAbs().maxCoeff(), scale * scale);
  kd.signature = signature_of(kd.eigenvalues, threshold);
  kd.rank = kd.signature.positive + kd.signature.negative;
  return kd;
}

// ---- subspaces --------------------------------------------------------------

namespace {

// Fix the sign of each column so its largest-magnitude entry is positive.
void fix_signs(Matrix& q) {
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    Eigen::Index arg = 0;
    q.col(c).cwiseAbs().maxCoeff(&arg);
    if (q(arg, c) < 0) q.col(c) *= -1.0;
  }
}

// Orthonormal columns spanning the frame-coordinate vectors in y.
Matrix frame_span(const Matrix& y, double tol, double reference) {
  const Eigen::Index n = y.rows();
  if (y.cols() == 0) return Matrix(n, 0);
  Eigen::JacobiSVD<Matrix> svd(y, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  const double threshold = tol * std::max(top, reference);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > threshold && s(rank) > 0.0) ++rank;
  Matrix q = svd.matrixU().leftCols(rank);
  fix_signs(q);
  return q;
}

// Orthonormal basis of the orthogonal complement of the orthonormal columns q
// inside the orthonormal columns w (all frame coordinates).
Matrix frame_complement(const Matrix& q, const Matrix& w) {
  const Eigen::Index n = w.rows();
  Matrix p = w * w.transpose();
  if (q.cols() > 0) p -= q * q.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p + p.transpose()));
  std::vector<Eigen::Index> keep;
  // Largest eigenvalues last; keep those near 1 in descending order.
  for (Eigen::Index i = n - 1; i >= 0; --i)
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  Matrix out(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) out.col(c) = es.eigenvectors().col(keep[c]);
  fix_signs(out);
  return out;
}

Matrix to_frame(const MetricLieAlgebra& m, const Matrix& x) { return m.frame_inverse() * x; }
Matrix from_frame(const MetricLieAlgebra& m, const Matrix& y) { return m.frame() * y; }

}  // namespace

Subspace span_of(const MetricLieAlgebra& m, const Matrix& vectors, double tol, double reference) {
  if (vectors.rows() != m.dim()) throw InvalidInput("span_of: vector length mismatch");
  return Subspace{from_frame(m, frame_span(to_frame(m, vectors), tol, reference))};
}

Subspace orthonormalize(const MetricLieAlgebra& m, const Matrix& vectors, double tol) {
  if (vectors.rows() != m.dim()) throw InvalidInput("orthonormalize: vector length mismatch");
  const Matrix y = to_frame(m, vectors);
  Matrix q(y.rows(), y.cols());
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    Vector v = y.col(c);
    const double original = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index p = 0; p < c; ++p) v -= q.col(p).dot(v) * q.col(p);
    if (original == 0.0 || v.norm() <= tol * original) {
      std::ostringstream os;
      os << "vector " << (c + 1) << " is linearly dependent on the preceding vectors";
      throw InvalidInput(os.str());
    }
    q.col(c) = v / v.norm();
  }
  return Subspace{from_frame(m, q)};
}

Subspace whole_space(const MetricLieAlgebra& m) { return Subspace{m.frame()}; }

Subspace orthogonal_complement(const MetricLieAlgebra& m, const Subspace& v,
                               const Subspace& inside) {
  return Subspace{from_frame(m, frame_complement(to_frame(m, v.basis), to_frame(m, inside.basis)))};
}

Subspace orthogonal_complement(const MetricLieAlgebra& m, const Subspace& v) {
  return orthogonal_complement(m, v, whole_space(m));
}

Subspace bracket_span(const MetricLieAlgebra& m, const Subspace& a, const Subspace& b,
                      double tol) {
  const int n = m.dim();
  Matrix vecs(n, a.dim() * b.dim());
  Eigen::Index col = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      vecs.col(col++) = bracket(m, a.basis.col(i), b.basis.col(j));
  return span_of(m, vecs, tol, m.frame_scale());
}

Matrix projector(const MetricLieAlgebra& m, const Subspace& v) {
  return v.basis * v.basis.transpose() * m.gram();
}

double ideal_defect(const MetricLieAlgebra& m, const Subspace& v) {
  const Matrix p = projector(m, v);
  double worst = 0.0;
  for (int a = 0; a < m.dim(); ++a)
    for (int j = 0; j < v.dim(); ++j) {
      const Vector w = bracket(m, m.frame().col(a), v.basis.col(j));
      worst = std::max(worst, m.norm(w - p * w));
    }
  return worst;
}

bool is_ideal(const MetricLieAlgebra& m, const Subspace& v, double tol) {
  return ideal_defect(m, v) <= tol * m.frame_scale();
}

bool is_subalgebra(const MetricLieAlgebra& m, const Subspace& v, double tol) {
  const Matrix p = projector(m, v);
  double worst = 0.0;
  for (int a = 0; a < v.dim(); ++a)
    for (int b = a + 1; b < v.dim(); ++b) {
      const Vector w = bracket(m, v.basis.col(a), v.basis.col(b));
      worst = std::max(worst, m.norm(w - p * w));
    }
  return worst <= tol * m.frame_scale();
}

SubspaceInfo subspace_ops(const MetricLieAlgebra& m, const Matrix& vectors, double tol) {
  SubspaceInfo info;
  info.span = orthonormalize(m, vectors, tol);
  info.ideal_defect = ideal_defect(m, info.span);
  info.is_ideal = info.ideal_defect <= tol * m.frame_scale();
  info.complement = orthogonal_complement(m, info.span);
  return info;
}

MetricLieAlgebra restrict_to(const MetricLieAlgebra& m, const Subspace& v, double tol) {
  const int k = v.dim();
  if (k == 0) throw InvalidInput("restrict_to: empty subspace");
  if (!is_subalgebra(m, v, std::max(tol, 1e-8)))
    throw InvalidInput("restrict_to: subspace is not a subalgebra");
  Tensor3 c(k);
  const Matrix coords = v.basis.transpose() * m.gram();  // rows give <q_a, .>
  // round-off relative to the parent bracket, otherwise an abelian ideal can
  // come back with 1e-16 constants that fail the Jacobi check at their own scale
  const double noise = tol * m.frame_scale();
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const Vector w = coords * bracket(m, v.basis.col(a), v.basis.col(b));
      for (int d = 0; d < k; ++d) {
        const double x = std::abs(w(d)) <= noise ? 0.0 : w(d);
        c(a, b, d) = x;
        c(b, a, d) = -x;
      }
    }
  return MetricLieAlgebra(LieAlgebra(std::move(c)), InnerProduct::identity(k),
                          std::max(tol, 1e-8));
}

// ---- structure report -------------------------------------------------------

StructureReport structure_report(const MetricLieAlgebra& m, double tol) {
  const int n = m.dim();
  StructureReport r;
  const Subspace g = whole_space(m);
  const double fscale = m.frame_scale();

  r.derived = bracket_span(m, g, g, tol);
  r.abelian = r.derived.dim() == 0;

  r.derived_series_dims = {n};
  {
    Subspace cur = g;
    while (true) {
      Subspace next = bracket_span(m, cur, cur, tol);
      r.derived_series_dims.push_back(next.dim());
      if (next.dim() == 0 || next.dim() == cur.dim()) break;
      cur = std::move(next);
    }
  }
  r.solvable = r.derived_series_dims.back() == 0;

  r.lower_central_dims = {n};
  {
    Subspace cur = g;
    while (true) {
      Subspace next = bracket_span(m, g, cur, tol);
      r.lower_central_dims.push_back(next.dim());
      if (next.dim() == 0 || next.dim() == cur.dim()) break;
      cur = std::move(next);
    }
  }
  r.nilpotent = r.lower_central_dims.back() == 0;

  // Center: kernel of x -> ([x, u_a])_a in frame coordinates.
  {
    const Tensor3& f = m.frame_constants();
    Matrix map(n * n, n);
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) map(a * n + c, b) = f(b, a, c);
    Eigen::JacobiSVD<Matrix> svd(map, Eigen::ComputeFullV);
    const Vector& s = svd.singularValues();
    const double threshold = tol * std::max(s.size() ? s(0) : 0.0, fscale);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > threshold && s(rank) > 0.0) ++rank;
    Matrix kernel = svd.matrixV().rightCols(n - rank);
    fix_signs(kernel);
    r.center = Subspace{m.frame() * kernel};
  }

  r.ad_traces = ad_traces(m.algebra());
  {
    // Trace functional in frame coordinates.
    Vector t(n);
    const Tensor3& f = m.frame_constants();
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int c = 0; c < n; ++c) s += f(a, c, c);
      t(a) = s;
    }
    if (t.norm() <= tol * std::max(fscale, 0.0) * n) {
      r.unimodular_kernel = g;
      r.unimodular = true;
    } else {
      Matrix dir = t / t.norm();
      r.unimodular_kernel = Subspace{m.frame() * frame_complement(dir, Matrix::Identity(n, n))};
      r.unimodular = false;
    }
  }

  r.killing = killing_form(m.algebra(), tol);
  r.semisimple = r.killing.rank == n;
  return r;
}

}  // namespace cyclab

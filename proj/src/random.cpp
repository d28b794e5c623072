#include "cyclab/random.hpp"

#include "cyclab/feasibility.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace cyclab {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Magnitude in [0.3, 3] with a random sign.
double nonzero(Rng& rng) {
  const double v = uniform(rng, 0.3, 3.0);
  return uniform_int(rng, 0, 1) ? v : -v;
}

double positive(Rng& rng) { return uniform(rng, 0.3, 3.0); }

Matrix gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

std::vector<Matrix> nullspace_matrices(const Matrix& system, int n, double tol) {
  Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double threshold = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  std::vector<Matrix> out;
  for (int j = 0; j < system.cols(); ++j)
    if (j >= sv.size() || sv(j) <= threshold) {
      const Vector v = svd.matrixV().col(j);
      out.push_back(Eigen::Map<const Matrix>(v.data(), n, n));
    }
  return out;
}

Matrix derivation_system(const LieAlgebra& a) {
  const int n = a.dim();
  auto var = [n](int p, int q) { return p + n * q; };
  Matrix sys = Matrix::Zero(std::max(n * n * (n - 1) / 2, 1), n * n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k, ++row)
        for (int l = 0; l < n; ++l) {
          sys(row, var(k, l)) += a.c(i, j, l);
          sys(row, var(l, i)) -= a.c(l, j, k);
          sys(row, var(l, j)) -= a.c(i, l, k);
        }
  return sys;
}

Matrix random_combination(const std::vector<Matrix>& basis, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix d = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (const Matrix& b : basis) d += normal(rng) * b;
  const double s = d.cwiseAbs().maxCoeff();
  return s > 0.0 ? Matrix(d / s) : d;
}

// [t, x] = D x on top of h; t comes first.
LieAlgebra extend(const LieAlgebra& h, const Matrix& d) {
  const int m = h.dim();
  Tensor3 c(m + 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) c(1 + i, 1 + j, 1 + k) = h.c(i, j, k);
  for (int q = 0; q < m; ++q)
    for (int p = 0; p < m; ++p) {
      c(0, 1 + q, 1 + p) = d(p, q);
      c(1 + q, 0, 1 + p) = -d(p, q);
    }
  return LieAlgebra(std::move(c));
}

LieAlgebra seed_algebra(int n, Rng& rng) {
  const int choice = n >= 3 ? uniform_int(rng, 0, 4) : 0;
  switch (choice) {
    case 1: return LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}});
    case 2: return LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}});
    case 3: return LieAlgebra::from_brackets(3, {{0, 1, 2, -1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}});
    default: return LieAlgebra::abelian(uniform_int(rng, 1, std::min(n, 2)));
  }
}

}  // namespace

Matrix random_orthogonal(int n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

Matrix random_invertible(int n, Rng& rng, double spread) {
  Vector s(n);
  for (int i = 0; i < n; ++i) s(i) = std::exp(uniform(rng, -std::log(spread), std::log(spread)));
  return random_orthogonal(n, rng) * s.asDiagonal() * random_orthogonal(n, rng);
}

Matrix random_positive_definite(int n, Rng& rng, double spread) {
  Vector s(n);
  for (int i = 0; i < n; ++i) s(i) = std::exp(uniform(rng, -std::log(spread), std::log(spread)));
  const Matrix q = random_orthogonal(n, rng);
  Matrix g = q * s.asDiagonal() * q.transpose();
  return 0.5 * (g + g.transpose());
}

std::vector<Matrix> derivation_basis(const LieAlgebra& a, double tol) {
  return nullspace_matrices(derivation_system(a), a.dim(), tol);
}

LieAlgebra random_lie_algebra(int n, Rng& rng) {
  LieAlgebra a = seed_algebra(n, rng);
  while (a.dim() < n) {
    const std::vector<Matrix> ders = derivation_basis(a);
    a = extend(a, random_combination(ders, rng));
  }
  return a.in_basis(random_invertible(n, rng));
}

MetricLieAlgebra random_metric_lie_algebra(int n, Rng& rng) {
  return MetricLieAlgebra(random_lie_algebra(n, rng),
                          InnerProduct(random_positive_definite(n, rng)));
}

int catalog_draw_families(int dim) {
  switch (dim) {
    case 3: return 5;
    case 4: return 5;
    case 5: return 7;
    default: return 0;
  }
}

CatalogEntry random_catalog_draw(int dim, Rng& rng, int family_index) {
  const int count = catalog_draw_families(dim);
  if (count == 0) throw InvalidInput("catalog draws exist for dimensions 3 to 5");
  const int f = family_index < 0 ? uniform_int(rng, 0, count - 1) : family_index % count;
  auto alphas = [&](int k) {
    std::vector<double> v(k);
    for (double& x : v) x = nonzero(rng);
    return v;
  };
  switch (dim) {
    case 3:
      switch (f) {
        case 0: return make_sl2_cyclic(positive(rng), positive(rng));
        case 1: return make_gn(alphas(2));
        case 2: return make_e11(nonzero(rng));
        case 3: return make_hyperbolic(nonzero(rng), 3);
        default: {
          const double a = nonzero(rng);
          return make_gn({a, -a});
        }
      }
    case 4:
      switch (f) {
        case 0: return make_named("Sl2xR", {positive(rng), positive(rng)});
        case 1: return make_gn(alphas(3));
        case 2: return make_h4(nonzero(rng), nonzero(rng), nonzero(rng));
        case 3: return make_hyperbolic(nonzero(rng), 4);
        default: {
          const double a = nonzero(rng), b = nonzero(rng);
          return make_gn({a, b, -a - b});
        }
      }
    default:
      switch (f) {
        case 0: return make_named("Sl2xR", {positive(rng), positive(rng), 2});
        case 1: return make_named("Sl2xH2", {positive(rng), positive(rng), nonzero(rng)});
        case 2: return make_gn(alphas(4));
        case 3: return make_h5(nonzero(rng), nonzero(rng), nonzero(rng), nonzero(rng), nonzero(rng));
        case 4: {
          const double r = nonzero(rng), s = nonzero(rng);
          return make_h5(r, s, -r - s, nonzero(rng), nonzero(rng));
        }
        case 5: return make_hyperbolic(nonzero(rng), 5);
        default: {
          const double a = nonzero(rng), b = nonzero(rng), c = nonzero(rng);
          return make_gn({a, b, c, -a - b - c});
        }
      }
  }
}

MetricLieAlgebra random_orthonormal_rebase(const MetricLieAlgebra& m, Rng& rng) {
  return m.in_basis(m.frame() * random_orthogonal(m.dim(), rng));
}

MetricLieAlgebra random_rebase(const MetricLieAlgebra& m, Rng& rng) {
  return m.in_basis(random_invertible(m.dim(), rng));
}

MetricLieAlgebra random_cyclic(int dim, Rng& rng) {
  const int mode = uniform_int(rng, 0, 9);
  if (mode == 0) return random_rebase(make_abelian(dim).algebra, rng);
  if (mode == 1) {
    // Central directions: G^k(alpha) x R^(dim-k).
    const int k = uniform_int(rng, 2, dim - 1);
    std::vector<double> a(k - 1);
    for (double& x : a) x = nonzero(rng);
    return random_rebase(make_direct_product({make_gn(a), make_abelian(dim - k)}).algebra, rng);
  }
  const CatalogEntry e = random_catalog_draw(dim, rng);
  if (mode < 6) return random_rebase(e.algebra, rng);

  const LieAlgebra a = e.algebra.algebra().in_basis(random_invertible(dim, rng));
  SearchOptions opts;
  opts.restarts = 4;
  opts.iterations = 300;
  opts.seed = rng();
  const CyclicFeasibilityResult r = find_cyclic_metric(a, opts);
  if (r.status == FeasibilityStatus::Feasible && r.solution)
    return MetricLieAlgebra(a, InnerProduct(*r.solution), 1e-8);
  return random_rebase(e.algebra, rng);
}

SemidirectSpec random_semidirect(Rng& rng, bool selfadjoint) {
  const int n1 = uniform_int(rng, 1, 2);
  const int n2 = uniform_int(rng, 2, 3);
  MetricLieAlgebra right;
  if (uniform_int(rng, 0, 1) == 0) {
    right = make_abelian(n2).algebra;
  } else {
    std::vector<double> a(n2 - 1);
    for (double& x : a) x = nonzero(rng);
    right = make_gn(a).algebra;
  }
  const MetricLieAlgebra left = make_abelian(n1).algebra;

  std::vector<Matrix> pool = derivation_basis(right.algebra());
  if (selfadjoint) {
    // Symmetric derivations: derivation system stacked with D - D^T = 0.
    const Matrix der = derivation_system(right.algebra());
    Matrix sym = Matrix::Zero(n2 * n2, n2 * n2);
    for (int p = 0; p < n2; ++p)
      for (int q = 0; q < n2; ++q) {
        sym(p + n2 * q, p + n2 * q) += 1.0;
        sym(p + n2 * q, q + n2 * p) -= 1.0;
      }
    Matrix stacked(der.rows() + sym.rows(), n2 * n2);
    stacked << der, sym;
    pool = nullspace_matrices(stacked, n2, 1e-10);
  }

  for (;;) {
    Matrix d1 = random_combination(pool, rng);
    if (!selfadjoint) {
      const double skew = 0.5 * (d1 - d1.transpose()).cwiseAbs().maxCoeff();
      if (skew < 0.05) continue;
    }
    std::vector<Matrix> action{d1};
    if (n1 == 2) {
      // A second commuting action: another symmetric derivation when it
      // commutes with the first, a multiple of the first otherwise.
      Matrix d2 = random_combination(pool, rng);
      if (!selfadjoint || (d1 * d2 - d2 * d1).cwiseAbs().maxCoeff() > 1e-12)
        d2 = uniform(rng, -2.0, 2.0) * d1;
      action.push_back(d2);
    }
    return SemidirectSpec{left, right, action};
  }
}

}  // namespace cyclab

#include "cyclab/feasibility.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <sstream>

namespace cyclab {

std::string to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible: return "feasible";
    case FeasibilityStatus::InfeasibleWithinBudget: return "infeasible_within_budget";
    case FeasibilityStatus::CertifiedInfeasible: return "certified_infeasible";
  }
  return "unknown";
}

Vector cyclic_residuals(const LieAlgebra& a, const Matrix& gram) {
  const int n = a.dim();
  if (gram.rows() != n || gram.cols() != n)
    throw InvalidInput("cyclic_residuals: Gram matrix shape does not match dimension");
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m)
          s += a.c(i, j, m) * gram(m, k) + a.c(j, k, m) * gram(m, i) + a.c(k, i, m) * gram(m, j);
        out.push_back(s);
      }
  return Eigen::Map<Vector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

Matrix symmetric_basis_element(int n, int p, int q) {
  Matrix e = Matrix::Zero(n, n);
  if (p == q) {
    e(p, p) = 1.0;
  } else {
    e(p, q) = e(q, p) = 1.0 / std::sqrt(2.0);
  }
  return e;
}

Vector to_symmetric_coordinates(const Matrix& s) {
  const int n = static_cast<int>(s.rows());
  Vector v(n * (n + 1) / 2);
  int idx = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q)
      v(idx++) = p == q ? s(p, p) : std::sqrt(2.0) * 0.5 * (s(p, q) + s(q, p));
  return v;
}

Matrix from_symmetric_coordinates(int n, const Vector& v) {
  Matrix s = Matrix::Zero(n, n);
  int idx = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      if (p == q) {
        s(p, p) = v(idx);
      } else {
        s(p, q) = s(q, p) = v(idx) / std::sqrt(2.0);
      }
      ++idx;
    }
  return s;
}

CyclicConstraintSystem cyclic_constraint_system(const LieAlgebra& a, double tol) {
  const int n = a.dim();
  CyclicConstraintSystem sys;
  sys.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) sys.rows.push_back({i, j, k});
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) sys.coordinates.emplace_back(p, q);

  const int rows = static_cast<int>(sys.rows.size());
  const int cols = static_cast<int>(sys.coordinates.size());
  sys.matrix = Matrix::Zero(rows, cols);
  for (int col = 0; col < cols; ++col) {
    const auto [p, q] = sys.coordinates[col];
    if (rows > 0) sys.matrix.col(col) = cyclic_residuals(a, symmetric_basis_element(n, p, q));
  }

  Matrix null_coords;
  if (rows == 0 || sys.matrix.isZero(0.0)) {
    null_coords = Matrix::Identity(cols, cols);
  } else {
    Eigen::JacobiSVD<Matrix> svd(sys.matrix, Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    sys.threshold = tol * sv(0);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > sys.threshold) ++rank;
    null_coords = svd.matrixV().rightCols(cols - rank);
  }
  for (int c = 0; c < null_coords.cols(); ++c)
    sys.nullspace.push_back(from_symmetric_coordinates(n, null_coords.col(c)));
  return sys;
}

namespace {

struct Eval {
  double value;
  Vector v;
  Matrix matrix;
};

Eval evaluate(const std::vector<Matrix>& basis, const Vector& y) {
  Matrix m = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (std::size_t k = 0; k < basis.size(); ++k) m += y(static_cast<Eigen::Index>(k)) * basis[k];
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  return {es.eigenvalues()(0), es.eigenvectors().col(0), m};
}

}  // namespace

MaxMinResult maximize_min_eigenvalue(const std::vector<Matrix>& basis, const Vector& start,
                                     const SearchOptions& options) {
  MaxMinResult best;
  const int d = static_cast<int>(basis.size());
  if (d == 0) return best;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Vector y(d);
    if (r == 0 && start.size() == d && start.norm() > 0.0) {
      y = start;
    } else {
      for (int k = 0; k < d; ++k) y(k) = normal(rng);
    }
    y.normalize();

    Eval cur = evaluate(basis, y);
    RestartTrace tr{r, cur.value, cur.value, 0};
    Vector run_best = y;
    Eval run_eval = cur;
    for (int it = 1; it <= options.iterations; ++it) {
      Vector g(d);
      for (int k = 0; k < d; ++k) g(k) = cur.v.dot(basis[k] * cur.v);
      g -= g.dot(y) * y;
      const double gn = g.norm();
      if (gn < 1e-15) break;
      const double step = 0.5 / std::sqrt(static_cast<double>(it));
      y += (step / gn) * g;
      y.normalize();
      cur = evaluate(basis, y);
      if (cur.value > tr.best_value) {
        tr.best_value = cur.value;
        tr.best_iteration = it;
        run_best = y;
        run_eval = cur;
      }
    }
    best.trace.push_back(tr);
    if (tr.best_value > best.value) {
      best.value = tr.best_value;
      best.coefficients = run_best;
      best.matrix = run_eval.matrix;
    }
  }
  return best;
}

CyclicFeasibilityResult find_cyclic_metric(const LieAlgebra& a, const SearchOptions& options) {
  const int n = a.dim();
  CyclicFeasibilityResult res;
  res.system = cyclic_constraint_system(a, options.tol);
  const auto& null = res.system.nullspace;

  if (null.empty()) {
    res.status = FeasibilityStatus::CertifiedInfeasible;
    res.certificate = "only G = 0 satisfies the cyclic constraints";
    return res;
  }
  for (int p = 0; p < n; ++p) {
    double mx = 0.0;
    for (const Matrix& m : null) mx = std::max(mx, std::abs(m(p, p)));
    if (mx <= options.tol) {
      res.status = FeasibilityStatus::CertifiedInfeasible;
      std::ostringstream os;
      os << "the cyclic constraints force G(" << p + 1 << "," << p + 1 << ") = 0";
      res.certificate = os.str();
      return res;
    }
  }

  // Start from the projection of the identity onto the solution space.
  Vector start(static_cast<Eigen::Index>(null.size()));
  for (std::size_t k = 0; k < null.size(); ++k)
    start(static_cast<Eigen::Index>(k)) = null[k].trace();

  MaxMinResult primal = maximize_min_eigenvalue(null, start, options);
  res.trace = primal.trace;
  res.best_min_eigenvalue = primal.value;
  if (primal.value > options.tol) {
    res.status = FeasibilityStatus::Feasible;
    Matrix g = 0.5 * (primal.matrix + primal.matrix.transpose());
    g /= g.norm();
    res.normalized_solution = g;
    Matrix scaled = g * (static_cast<double>(n) / g.trace());
    res.solution = scaled;
    res.solution_cyclic_defect =
        res.system.rows.empty() ? 0.0 : cyclic_residuals(a, scaled).cwiseAbs().maxCoeff();
    return res;
  }

  // A positive definite Y orthogonal to the solution space proves that no
  // positive semidefinite nonzero solution exists: <Y, G> = 0 is impossible.
  const int cols = static_cast<int>(res.system.coordinates.size());
  Matrix null_coords(cols, static_cast<Eigen::Index>(null.size()));
  for (std::size_t k = 0; k < null.size(); ++k)
    null_coords.col(static_cast<Eigen::Index>(k)) = to_symmetric_coordinates(null[k]);
  Eigen::JacobiSVD<Matrix> svd(null_coords, Eigen::ComputeFullU);
  const Matrix range_coords = svd.matrixU().rightCols(cols - null_coords.cols());
  std::vector<Matrix> range;
  for (int c = 0; c < range_coords.cols(); ++c)
    range.push_back(from_symmetric_coordinates(n, range_coords.col(c)));
  if (!range.empty()) {
    Vector dual_start(static_cast<Eigen::Index>(range.size()));
    for (std::size_t k = 0; k < range.size(); ++k)
      dual_start(static_cast<Eigen::Index>(k)) = range[k].trace();
    MaxMinResult dual = maximize_min_eigenvalue(range, dual_start, options);
    if (dual.value > options.tol) {
      res.status = FeasibilityStatus::CertifiedInfeasible;
      res.dual_certificate = dual.matrix;
      res.certificate =
          "a positive definite matrix is orthogonal to every solution of the cyclic constraints";
      return res;
    }
  }
  res.status = FeasibilityStatus::InfeasibleWithinBudget;
  return res;
}

SemisimpleCyclicSolution semisimple_cyclic_metrics(const LieAlgebra& a,
                                                   const SearchOptions& options) {
  const int n = a.dim();
  const KillingData kd = killing_form(a, options.tol);
  if (kd.rank < n) {
    std::ostringstream os;
    os << "algebra is not semisimple: Killing form has rank " << kd.rank << " < " << n;
    throw ValidationFailure(os.str(), static_cast<double>(n - kd.rank));
  }

  SemisimpleCyclicSolution sol;
  Eigen::SelfAdjointEigenSolver<Matrix> es(kd.matrix);
  const Vector& d = es.eigenvalues();
  sol.b_orthonormal_basis = Matrix(n, n);
  sol.epsilons = Vector(n);
  for (int i = 0; i < n; ++i) {
    sol.b_orthonormal_basis.col(i) = es.eigenvectors().col(i) / std::sqrt(std::abs(d(i)));
    sol.epsilons(i) = d(i) > 0.0 ? 1.0 : -1.0;
  }

  const LieAlgebra ap = a.in_basis(sol.b_orthonormal_basis);
  sol.cbar = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) sol.cbar(i, j, k) = sol.epsilons(k) * ap.c(i, j, k);

  const double cut = options.tol * std::max(1.0, sol.cbar.max_abs());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (std::abs(sol.cbar(i, j, k)) > cut) sol.active.push_back({i, j, k});

  sol.constraints = Matrix::Zero(static_cast<Eigen::Index>(sol.active.size()), n);
  for (std::size_t r = 0; r < sol.active.size(); ++r)
    for (int idx : sol.active[r]) sol.constraints(static_cast<Eigen::Index>(r), idx) = 1.0;

  if (sol.active.empty()) {
    sol.solution_space = Matrix::Identity(n, n);
  } else {
    Eigen::JacobiSVD<Matrix> svd(sol.constraints, Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    int rank = 0;
    while (rank < sv.size() && sv(rank) > options.tol * sv(0)) ++rank;
    sol.solution_space = svd.matrixV().rightCols(n - rank);
  }
  sol.solution_space_dim = static_cast<int>(sol.solution_space.cols());
  if (sol.solution_space_dim == 0) return sol;

  std::vector<Matrix> diag_basis;
  for (int c = 0; c < sol.solution_space_dim; ++c)
    diag_basis.push_back(sol.epsilons.cwiseProduct(sol.solution_space.col(c)).asDiagonal());
  const MaxMinResult best = maximize_min_eigenvalue(diag_basis, Vector(), options);
  sol.best_margin = best.value;
  if (best.value > options.tol) {
    sol.feasible = true;
    const Vector lambdas = sol.solution_space * best.coefficients;
    sol.lambdas = lambdas;
    const Matrix pinv = sol.b_orthonormal_basis.inverse();
    Matrix g = pinv.transpose() * sol.epsilons.cwiseProduct(lambdas).asDiagonal() * pinv;
    g = 0.5 * (g + g.transpose());
    sol.gram = g;
    sol.cross_check_defect = n >= 3 ? cyclic_residuals(a, g).cwiseAbs().maxCoeff() : 0.0;
  }
  return sol;
}

}  // namespace cyclab

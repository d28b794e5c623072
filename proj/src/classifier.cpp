#include "cyclab/classifier.hpp"

#include "cyclab/feasibility.hpp"
#include "cyclab/homogeneous.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace cyclab {

// ---- adapted bases and splits ---------------------------------------------------

AdaptedBasis adapted_basis(const MetricLieAlgebra& m, double tol) {
  const int n = m.dim();
  if (!structure_report(m, tol).solvable)
    throw ValidationFailure("adapted basis requires a solvable algebra", 0.0);

  AdaptedBasis out;
  out.basis = Matrix::Zero(n, n);
  Subspace v = whole_space(m);
  for (int d = n; d >= 1; --d) {
    out.chain_dims.push_back(d);
    if (d == 1) {
      out.basis.col(0) = v.basis.col(0);
      break;
    }
    const Subspace derived = bracket_span(m, v, v, tol);
    if (derived.dim() >= d)
      throw ValidationFailure("no codimension-one subideal found at dimension " +
                                  std::to_string(d),
                              0.0);
    const Subspace complement = orthogonal_complement(m, derived, v);
    const int c = complement.dim();
    out.basis.col(d - 1) = complement.basis.col(c - 1);
    Matrix next(n, d - 1);
    next << derived.basis, complement.basis.leftCols(c - 1);
    v = Subspace{next};
  }
  out.chain_dims.push_back(0);

  out.constants = m.algebra().in_basis(out.basis);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = std::max(i, j); k < n; ++k)
        out.solvable_defect = std::max(out.solvable_defect, std::abs(out.constants.c(i, j, k)));
  return out;
}

AdaptedCyclicity adapted_cyclicity(const MetricLieAlgebra& m, const AdaptedBasis& b,
                                   double tol) {
  const int n = m.dim();
  const LieAlgebra& c = b.constants;
  AdaptedCyclicity out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        out.index_symmetry_defect =
            std::max(out.index_symmetry_defect, std::abs(c.c(i, k, j) - c.c(j, k, i)));
  for (int i = 0; i < n; ++i)
    for (int p = 0; p <= i; ++p)
      for (int q = p + 1; q <= i; ++q)
        out.selfadjoint_defect =
            std::max(out.selfadjoint_defect, std::abs(c.c(i, q, p) - c.c(i, p, q)));
  const double threshold = tol * c.scale();
  out.index_symmetric = out.index_symmetry_defect <= threshold;
  out.selfadjoint = out.selfadjoint_defect <= threshold;
  return out;
}

namespace {

// <[x, b_q], b_p> for an orthonormal basis b of an invariant subspace.
Matrix restricted_ad(const MetricLieAlgebra& m, const Vector& x, const Subspace& b) {
  return b.basis.transpose() * m.gram() * ad_matrix(m, x) * b.basis;
}

}  // namespace

OrthogonalSplit orthogonal_split(const MetricLieAlgebra& m, double tol) {
  const CyclicCheck cyc = is_cyclic(m, tol);
  if (!cyc.cyclic) throw ValidationFailure("orthogonal split requires a cyclic metric", cyc.defect);
  const StructureReport sr = structure_report(m, tol);
  if (!sr.solvable) throw ValidationFailure("orthogonal split requires a solvable algebra", 0.0);
  if (sr.abelian) throw ValidationFailure("orthogonal split requires a nonabelian algebra", 0.0);

  const int n = m.dim();
  OrthogonalSplit out;
  if (!sr.unimodular) {
    out.ideal = sr.unimodular_kernel;
    out.w = orthogonal_complement(m, out.ideal).basis.col(0);
    if (ad_matrix(m, out.w).trace() < 0.0) out.w = -out.w;
    out.used_unimodular_kernel = true;
  } else {
    const AdaptedBasis ab = adapted_basis(m, tol);
    out.w = ab.basis.col(n - 1);
    out.ideal = Subspace{ab.basis.leftCols(n - 1)};
  }
  out.ideal_algebra = restrict_to(m, out.ideal, tol);
  out.ad_w = restricted_ad(m, out.w, out.ideal);
  out.selfadjoint_defect = (out.ad_w - out.ad_w.transpose()).cwiseAbs().maxCoeff();
  out.ideal_cyclic = is_cyclic(out.ideal_algebra, tol).cyclic;
  return out;
}

// ---- decomposition ------------------------------------------------------------

namespace {

// Groups ascending eigenvalues separated by more than `gap`.
std::vector<std::vector<int>> clusters(const Vector& ascending, double gap) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < ascending.size(); ++i) {
    if (i == 0 || ascending(i) - ascending(i - 1) > gap) out.emplace_back();
    out.back().push_back(i);
  }
  return out;
}

std::vector<Matrix> frame_ads(const MetricLieAlgebra& m) {
  const int n = m.dim();
  const Tensor3& f = m.frame_constants();
  std::vector<Matrix> ads(n, Matrix::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) ads[a](c, b) = f(a, b, c);
  return ads;
}

}  // namespace

Decomposition decomposability(const MetricLieAlgebra& m, double tol) {
  const int n = m.dim();
  const std::vector<Matrix> ads = frame_ads(m);
  const int coords = n * (n + 1) / 2;

  Matrix system(n * n * n, coords);
  int col = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q, ++col) {
      const Matrix e = symmetric_basis_element(n, p, q);
      for (int a = 0; a < n; ++a) {
        const Matrix comm = ads[a] * e - e * ads[a];
        system.block(a * n * n, col, n * n, 1) =
            Eigen::Map<const Vector>(comm.data(), n * n);
      }
    }
  Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double sigma_max = sv.size() ? sv(0) : 0.0;
  const double threshold = std::max(tol, 1e-8) * std::max(sigma_max, m.frame_scale());
  std::vector<Matrix> commutant;
  for (int j = 0; j < coords; ++j)
    if (j >= sv.size() || sv(j) <= threshold)
      commutant.push_back(from_symmetric_coordinates(n, svd.matrixV().col(j)));

  Decomposition out;
  out.commutant_dim = static_cast<int>(commutant.size());

  // A generic element of the commutant splits g into its finest orthogonal
  // ideal factors; several draws guard against accidental coincidences.
  std::mt19937_64 rng(kDefaultSeed);
  std::normal_distribution<double> normal;
  Matrix best_vectors;
  std::vector<std::vector<int>> best;
  for (int draw = 0; draw < 3; ++draw) {
    Matrix s = Matrix::Zero(n, n);
    for (const Matrix& c : commutant) s += normal(rng) * c;
    s /= std::max(s.norm(), 1e-300);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    auto groups = clusters(es.eigenvalues(), 1e-6);
    if (groups.size() > best.size()) {
      best = std::move(groups);
      best_vectors = es.eigenvectors();
    }
  }
  for (const auto& g : best) {
    Matrix cols(n, static_cast<Eigen::Index>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) cols.col(i) = best_vectors.col(g[i]);
    out.factors.push_back(Subspace{m.frame() * cols});
  }
  return out;
}

// ---- canonical parameters ---------------------------------------------------

namespace {

constexpr double kParamTol = 1e-8;

int lex_compare(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    if (a[i] > b[i] + tol * scale) return 1;
    if (a[i] < b[i] - tol * scale) return -1;
  }
  return a.size() == b.size() ? 0 : (a.size() > b.size() ? 1 : -1);
}

// Indices sorted so that the key tuples descend; ties keep index order.
std::vector<int> descending_order(const std::vector<std::vector<double>>& keys, double tol) {
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lex_compare(keys[a], keys[b], tol) > 0; });
  return order;
}

WeightForm canonical_single(const Vector& alpha) {
  const int m = static_cast<int>(alpha.size());
  const double scale = alpha.cwiseAbs().maxCoeff();
  const double total = alpha.sum();
  double sign = 1.0;
  auto sorted_desc = [&](double s) {
    std::vector<double> v(m);
    for (int i = 0; i < m; ++i) v[i] = s * alpha(i);
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  };
  if (std::abs(total) > kParamTol * m * scale) {
    sign = total > 0.0 ? 1.0 : -1.0;
  } else if (lex_compare(sorted_desc(-1.0), sorted_desc(1.0), kParamTol) > 0) {
    sign = -1.0;
  }
  std::vector<std::vector<double>> keys(m);
  for (int i = 0; i < m; ++i) keys[i] = {sign * alpha(i)};
  WeightForm out;
  out.order = descending_order(keys, kParamTol);
  out.generators = Matrix::Constant(1, 1, sign);
  std::vector<double> values;
  for (int i : out.order) values.push_back(sign * alpha(i));

  const int n = m + 1;
  bool all_equal = true;
  for (double v : values) all_equal = all_equal && std::abs(v - values[0]) <= kParamTol * scale;
  if (all_equal) {
    out.params = {Family::HyperbolicHn, {values[0]}, n, {}};
  } else if (m == 2 && std::abs(values[0] + values[1]) <= kParamTol * scale) {
    out.params = {Family::E11, {values[0]}, 3, {}};
  } else {
    out.params = {Family::Gn, values, n, {}};
  }
  return out;
}

WeightForm canonical_pair(const Matrix& w) {
  const int m = static_cast<int>(w.cols());
  const double scale = w.cwiseAbs().maxCoeff();
  const Eigen::Vector2d t = w.rowwise().sum();
  std::vector<Eigen::Matrix2d> candidates;
  if (t.norm() > kParamTol * m * scale) {
    const Eigen::Vector2d u = t.normalized();
    const Eigen::Vector2d ju(-u(1), u(0));
    for (double s : {1.0, -1.0}) {
      Eigen::Matrix2d f;
      f << u, s * ju;
      candidates.push_back(f);
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(w * w.transpose());
    const Eigen::Matrix2d axes = es.eigenvectors();
    for (int a = 0; a < 2; ++a)
      for (double s0 : {1.0, -1.0})
        for (double s1 : {1.0, -1.0}) {
          Eigen::Matrix2d f;
          f << s0 * axes.col(a), s1 * axes.col(1 - a);
          candidates.push_back(f);
        }
  }

  WeightForm best;
  std::vector<double> best_key;
  for (const Eigen::Matrix2d& f : candidates) {
    const Matrix coords = f.transpose() * w;  // rows: rho, lambda
    std::vector<std::vector<double>> keys(m);
    for (int i = 0; i < m; ++i) keys[i] = {coords(0, i), coords(1, i)};
    const std::vector<int> order = descending_order(keys, kParamTol);
    std::vector<double> key;
    for (int r = 0; r < 2; ++r)
      for (int i : order) key.push_back(coords(r, i));
    if (best_key.empty() || lex_compare(key, best_key, kParamTol) > 0) {
      best_key = key;
      best.generators = f;
      best.order = order;
    }
  }
  std::vector<double> values(best_key.begin(), best_key.begin() + m);
  values.insert(values.end(), best_key.begin() + m, best_key.begin() + 2 * m - 1);
  best.params = {Family::Hnp1, values, m + 2, {}};
  return best;
}

int family_rank(Family f) {
  switch (f) {
    case Family::Sl2Cyclic: return 0;
    case Family::So3Biinv: return 1;
    case Family::Heisenberg: return 2;
    case Family::Hnp1: return 3;
    case Family::HnpHat: return 4;
    case Family::Gn: return 5;
    case Family::E11: return 6;
    case Family::HyperbolicHn: return 7;
    case Family::Semidirect: return 8;
    case Family::DirectProduct: return 9;
    case Family::Abelian: return 10;
  }
  return 11;
}

bool factor_before(const FamilyParams& a, const FamilyParams& b) {
  if (family_rank(a.family) != family_rank(b.family))
    return family_rank(a.family) < family_rank(b.family);
  if (a.dim != b.dim) return a.dim > b.dim;
  return lex_compare(a.values, b.values, kParamTol) > 0;
}

FamilyParams with_abelian(FamilyParams p, int central) {
  if (central == 0) return p;
  return FamilyParams{Family::DirectProduct, {}, p.dim + central,
                      {std::move(p), FamilyParams{Family::Abelian, {}, central, {}}}};
}

// Canonical form of an abelian algebra acting diagonally on an abelian ideal,
// splitting off central directions.
FamilyParams canonical_from_weights(const Matrix& w) {
  const int k = static_cast<int>(w.rows());
  const double scale = w.cwiseAbs().maxCoeff();
  std::vector<int> live;
  for (int i = 0; i < w.cols(); ++i)
    if (w.col(i).cwiseAbs().maxCoeff() > kParamTol * scale) live.push_back(i);
  const int dead = static_cast<int>(w.cols()) - static_cast<int>(live.size());
  if (live.empty()) return FamilyParams{Family::Abelian, {}, k + dead, {}};
  Matrix reduced(k, static_cast<Eigen::Index>(live.size()));
  for (std::size_t i = 0; i < live.size(); ++i) reduced.col(i) = w.col(live[i]);

  Eigen::JacobiSVD<Matrix> svd(reduced, Eigen::ComputeFullU);
  const Vector& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > kParamTol * sv(0)) ++rank;
  const Matrix effective = svd.matrixU().leftCols(rank).transpose() * reduced;
  return with_abelian(canonical_weights(effective).params, dead + k - rank);
}

}  // namespace

WeightForm canonical_weights(const Matrix& weights) {
  const int k = static_cast<int>(weights.rows());
  const int m = static_cast<int>(weights.cols());
  if (k == 0 || m == 0) throw ValidationFailure("empty weight matrix", 0.0);
  const double scale = weights.cwiseAbs().maxCoeff();
  for (int i = 0; i < m; ++i)
    if (weights.col(i).cwiseAbs().maxCoeff() <= kParamTol * scale)
      throw ValidationFailure("weight matrix has a central direction", 0.0);
  Eigen::JacobiSVD<Matrix> svd(weights);
  const Vector& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kParamTol * sv(0) || k > m)
    throw ValidationFailure("weight matrix is rank deficient", sv(sv.size() - 1));
  if (k == 1) return canonical_single(weights.row(0).transpose());
  if (k == 2) return canonical_pair(weights);
  throw ValidationFailure("no family with " + std::to_string(k) + " commuting generators", 0.0);
}

FamilyParams canonicalize(const FamilyParams& p) {
  const auto& v = p.values;
  switch (p.family) {
    case Family::Gn:
    case Family::HyperbolicHn:
    case Family::E11: {
      std::vector<double> alpha = v;
      if (p.family == Family::HyperbolicHn) alpha.assign(p.dim - 1, v.at(0));
      if (p.family == Family::E11) alpha = {v.at(0), -v.at(0)};
      return canonical_from_weights(Eigen::Map<const Vector>(alpha.data(), alpha.size()).transpose());
    }
    case Family::Hnp1:
    case Family::HnpHat: {
      const int m = p.dim - 2;
      Matrix w = Matrix::Zero(2, m);
      if (p.family == Family::Hnp1) {
        for (int i = 0; i < m; ++i) w(0, i) = v.at(i);
        for (int i = 0; i + 1 < m; ++i) w(1, i) = v.at(m + i);
        w(1, m - 1) = -w.row(1).head(m - 1).sum();
      } else {
        for (int i = 1; i < m; ++i) w(0, i) = v.at(i - 1);
        for (int i = 0; i < m; ++i) w(1, i) = v.at(m - 1 + i);
      }
      return canonical_from_weights(w);
    }
    case Family::Sl2Cyclic:
      return {Family::Sl2Cyclic, {std::max(v.at(0), v.at(1)), std::min(v.at(0), v.at(1))}, 3, {}};
    case Family::DirectProduct: {
      std::vector<FamilyParams> flat;
      int abelian = 0;
      std::vector<FamilyParams> pending;
      for (const auto& f : p.factors) pending.push_back(canonicalize(f));
      while (!pending.empty()) {
        FamilyParams f = std::move(pending.back());
        pending.pop_back();
        if (f.family == Family::DirectProduct) {
          for (auto& g : f.factors) pending.push_back(std::move(g));
        } else if (f.family == Family::Abelian) {
          abelian += f.dim;
        } else {
          flat.push_back(std::move(f));
        }
      }
      std::sort(flat.begin(), flat.end(), factor_before);
      if (abelian > 0) flat.push_back(FamilyParams{Family::Abelian, {}, abelian, {}});
      if (flat.size() == 1) return flat.front();
      int n = 0;
      for (const auto& f : flat) n += f.dim;
      return FamilyParams{Family::DirectProduct, {}, n, std::move(flat)};
    }
    default:
      return p;
  }
}

bool same_params(const FamilyParams& a, const FamilyParams& b, double tol) {
  if (a.family != b.family || a.dim != b.dim || a.values.size() != b.values.size() ||
      a.factors.size() != b.factors.size())
    return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (std::abs(a.values[i] - b.values[i]) >
        tol * std::max({1.0, std::abs(a.values[i]), std::abs(b.values[i])}))
      return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i)
    if (!same_params(a.factors[i], b.factors[i], tol)) return false;
  return true;
}

// ---- classification ---------------------------------------------------------

namespace {

struct Piece {
  FamilyParams params;
  Matrix witness;  ///< input coordinates
  Subspace span;
};

// Orthonormal basis diagonalizing every matrix of a commuting symmetric family.
Matrix joint_eigenbasis(const std::vector<Matrix>& mats, int n) {
  double scale = 0.0;
  for (const Matrix& a : mats) scale = std::max(scale, a.cwiseAbs().maxCoeff());
  std::vector<Matrix> blocks{Matrix::Identity(n, n)};
  for (const Matrix& a : mats) {
    std::vector<Matrix> next;
    for (const Matrix& b : blocks) {
      const Matrix r = b.transpose() * a * b;
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (r + r.transpose()));
      for (const auto& g : clusters(es.eigenvalues(), 1e-6 * std::max(scale, 1e-300))) {
        Matrix cols(b.cols(), static_cast<Eigen::Index>(g.size()));
        for (std::size_t i = 0; i < g.size(); ++i) cols.col(i) = es.eigenvectors().col(g[i]);
        next.push_back(b * cols);
      }
    }
    blocks = std::move(next);
  }
  Matrix out(n, n);
  int col = 0;
  for (const Matrix& b : blocks) {
    out.middleCols(col, b.cols()) = b;
    col += static_cast<int>(b.cols());
  }
  return out;
}

Piece classify_sl2(const MetricLieAlgebra& m) {
  const Tensor3& f = m.frame_constants();
  Eigen::Matrix3d l;
  for (int k = 0; k < 3; ++k) {
    l(k, 0) = f(1, 2, k);
    l(k, 1) = f(2, 0, k);
    l(k, 2) = f(0, 1, k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (l + l.transpose()));
  Eigen::Matrix3d q = es.eigenvectors();
  Eigen::Vector3d mu = es.eigenvalues();
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  int negatives = 0;
  for (int i = 0; i < 3; ++i) negatives += mu(i) < 0.0;
  if (negatives == 2) {
    q = -q;
    mu = -mu;
    negatives = 1;
  }
  if (negatives != 1)
    throw ValidationFailure("semisimple factor is not of the cyclic sl(2,R) type", 0.0);
  int neg = 0;
  for (int i = 0; i < 3; ++i)
    if (mu(i) < 0.0) neg = i;
  const int a = (neg + 1) % 3, b = (neg + 2) % 3;
  Matrix basis(3, 3);
  double l1 = mu(a), l2 = mu(b);
  basis << q.col(a), q.col(b), q.col(neg);
  if (l1 < l2) {
    Matrix swapped(3, 3);
    swapped << basis.col(1), basis.col(0), -basis.col(2);
    basis = swapped;
    std::swap(l1, l2);
  }
  return Piece{{Family::Sl2Cyclic, {l1, l2}, 3, {}}, m.frame() * basis, whole_space(m)};
}

Piece classify_solvable(const MetricLieAlgebra& m, const StructureReport& sr, double tol) {
  const Subspace& ideal = sr.derived;
  if (bracket_span(m, ideal, ideal, tol).dim() != 0)
    throw ValidationFailure("classification failed: derived algebra is not abelian", 0.0);
  const Subspace gens = orthogonal_complement(m, ideal);
  const int k = gens.dim();
  const int mm = ideal.dim();

  std::vector<Matrix> actions;
  for (int a = 0; a < k; ++a) actions.push_back(restricted_ad(m, gens.basis.col(a), ideal));
  const Matrix v = joint_eigenbasis(actions, mm);
  Matrix w(k, mm);
  for (int a = 0; a < k; ++a) {
    const Matrix d = v.transpose() * actions[a] * v;
    for (int i = 0; i < mm; ++i) w(a, i) = d(i, i);
  }
  const WeightForm form = canonical_weights(w);
  const Matrix vectors = ideal.basis * v;
  const Matrix generators = gens.basis * form.generators;

  Matrix witness(m.dim(), m.dim());
  if (k == 1) {
    for (int i = 0; i < mm; ++i) witness.col(i) = vectors.col(form.order[i]);
    witness.col(mm) = generators.col(0);
  } else {
    witness.col(0) = generators.col(0);
    witness.col(1) = generators.col(1);
    for (int i = 0; i < mm; ++i) witness.col(2 + i) = vectors.col(form.order[i]);
  }
  return Piece{form.params, witness, whole_space(m)};
}

Piece classify_indecomposable(const MetricLieAlgebra& m, double tol) {
  const StructureReport sr = structure_report(m, tol);
  if (sr.abelian) return Piece{{Family::Abelian, {}, m.dim(), {}}, m.frame(), whole_space(m)};
  if (!sr.solvable) {
    if (m.dim() != 3 || !sr.semisimple)
      throw ValidationFailure("classification failed: non-solvable indecomposable factor of "
                              "dimension " + std::to_string(m.dim()),
                              0.0);
    return classify_sl2(m);
  }
  return classify_solvable(m, sr, tol);
}

double witness_residual(const MetricLieAlgebra& m, const Matrix& p, const MetricLieAlgebra& rep) {
  const Matrix g = p.transpose() * m.gram() * p;
  double r = (g - rep.gram()).cwiseAbs().maxCoeff();
  const LieAlgebra moved = m.algebra().in_basis(p);
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r = std::max(r, std::abs(moved.c(i, j, k) - rep.c(i, j, k)));
  return r;
}

}  // namespace

FamilyIdentification classify(const MetricLieAlgebra& m, double tol) {
  const int n = m.dim();
  if (n > 5) throw Unsupported("classification is available up to dimension 5, got " +
                               std::to_string(n));
  const CyclicCheck cyc = is_cyclic(m, tol);
  if (!cyc.cyclic) throw ValidationFailure("input metric is not cyclic", cyc.defect);

  const Decomposition dec = decomposability(m, tol);
  std::vector<Piece> pieces;
  Piece abelian{{Family::Abelian, {}, 0, {}}, Matrix(n, 0), Subspace{Matrix(n, 0)}};
  for (const Subspace& factor : dec.factors) {
    const MetricLieAlgebra sub = restrict_to(m, factor, tol);
    Piece piece = classify_indecomposable(sub, tol);
    piece.witness = factor.basis * piece.witness;
    piece.span = factor;
    if (piece.params.family == Family::Abelian) {
      abelian.params.dim += piece.params.dim;
      Matrix w(n, abelian.params.dim);
      w << abelian.witness, piece.witness;
      abelian.witness = w;
      abelian.span.basis = w;
    } else {
      pieces.push_back(std::move(piece));
    }
  }
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& a, const Piece& b) { return factor_before(a.params, b.params); });
  if (abelian.params.dim > 0) pieces.push_back(std::move(abelian));

  FamilyIdentification out;
  out.witness = Matrix(n, n);
  int col = 0;
  for (const Piece& p : pieces) {
    out.witness.middleCols(col, p.params.dim) = p.witness;
    col += p.params.dim;
    out.factors.push_back(p.span);
  }
  if (pieces.size() == 1) {
    out.params = pieces.front().params;
  } else {
    out.params = FamilyParams{Family::DirectProduct, {}, n, {}};
    for (const Piece& p : pieces) out.params.factors.push_back(p.params);
  }
  out.representative = make(out.params).algebra;
  out.residual = witness_residual(m, out.witness, out.representative);
  out.unimodular = structure_report(m, tol).unimodular;

  const double scale = std::max({1.0, m.frame_scale(), m.gram().cwiseAbs().maxCoeff()});
  if (out.residual > 1e-6 * scale) {
    std::ostringstream os;
    os << "classification failed: best match " << display_name(out.params)
       << " leaves witness residual " << out.residual;
    throw ValidationFailure(os.str(), out.residual);
  }
  return out;
}

}  // namespace cyclab

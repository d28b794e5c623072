#include "cyclab/catalog.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cyclab {

namespace {

const std::pair<Family, const char*> kFamilyNames[] = {
    {Family::Abelian, "Abelian"},     {Family::Gn, "Gn"},
    {Family::HyperbolicHn, "HyperbolicHn"}, {Family::E11, "E11"},
    {Family::Hnp1, "Hnp1"},           {Family::HnpHat, "HnpHat"},
    {Family::Sl2Cyclic, "Sl2Cyclic"}, {Family::So3Biinv, "So3Biinv"},
    {Family::Heisenberg, "Heisenberg"}, {Family::Semidirect, "Semidirect"},
    {Family::DirectProduct, "DirectProduct"},
};

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool near_zero(double x, double scale) { return std::abs(x) <= 1e-12 * std::max(1.0, scale); }

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

std::string join(const std::vector<double>& v, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += ", ";
    out += format_number(v[i]);
  }
  return out;
}

std::vector<std::string> indexed_labels(const std::string& prefix, int from, int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(from + i));
  return out;
}

// Abelian generators acting diagonally on an abelian ideal: the first k basis
// vectors are the generators, [g_a, v_i] = weights(a, i) v_i.
LieAlgebra diagonal_extension(const Matrix& weights, std::vector<std::string> labels) {
  const int k = static_cast<int>(weights.rows());
  const int m = static_cast<int>(weights.cols());
  std::vector<BracketEntry> entries;
  for (int a = 0; a < k; ++a)
    for (int i = 0; i < m; ++i)
      if (weights(a, i) != 0.0) entries.push_back({a, k + i, k + i, weights(a, i)});
  return LieAlgebra::from_brackets(k + m, entries, std::move(labels));
}

CurvatureComponent component(int n, int i, int j, int k,
                             std::initializer_list<std::pair<int, double>> terms) {
  Vector v = Vector::Zero(n);
  for (const auto& [idx, val] : terms) v(idx) += val;
  return {i, j, k, v};
}

Vector sorted_eigenvalues(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric);
  return es.eigenvalues();
}

}  // namespace

std::string to_string(Family f) {
  for (const auto& [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "unknown";
}

Family family_from_string(const std::string& tag) {
  for (const auto& [fam, name] : kFamilyNames)
    if (tag == name) return fam;
  throw InvalidInput("unknown family tag '" + tag + "'");
}

std::string display_name(const FamilyParams& p) {
  const auto& v = p.values;
  switch (p.family) {
    case Family::Abelian:
      return p.dim == 1 ? "R" : "R^" + std::to_string(p.dim);
    case Family::Gn:
      return "G^" + std::to_string(p.dim) + "(" + join(v, 0, v.size()) + ")";
    case Family::HyperbolicHn:
      return "H^" + std::to_string(p.dim) + "(" + join(v, 0, 1) + ")";
    case Family::E11:
      return "E(1,1)[alpha=" + join(v, 0, 1) + "]";
    case Family::Hnp1: {
      const std::size_t m = static_cast<std::size_t>(p.dim - 2);
      return "H^" + std::to_string(p.dim) + "(" + join(v, 0, m) + "; " + join(v, m, v.size()) +
             ")";
    }
    case Family::HnpHat: {
      const std::size_t s = static_cast<std::size_t>(p.dim - 3);
      return "Hhat^" + std::to_string(p.dim) + "(" + join(v, 0, s) + "; " +
             join(v, s, v.size()) + ")";
    }
    case Family::Sl2Cyclic:
      return "SL2(" + join(v, 0, v.size()) + ")";
    case Family::So3Biinv:
      return "SO3[beta=" + join(v, 0, v.size()) + "]";
    case Family::Heisenberg:
      return "Heis3";
    case Family::Semidirect:
      return "semidirect sum (dim " + std::to_string(p.dim) + ")";
    case Family::DirectProduct: {
      std::string out;
      for (std::size_t i = 0; i < p.factors.size(); ++i) {
        if (i) out += " x ";
        out += display_name(p.factors[i]);
      }
      return out;
    }
  }
  return "unknown";
}

// ---- reference data -----------------------------------------------------------

namespace {

ReferenceInvariants gn_reference(const std::vector<double>& alpha) {
  const int m = static_cast<int>(alpha.size());
  const int n = m + 1;
  const double sa = sum(alpha);
  double s2 = 0.0, s3 = 0.0, pairs = 0.0;
  for (int i = 0; i < m; ++i) {
    s2 += alpha[i] * alpha[i];
    s3 += alpha[i] * alpha[i] * alpha[i];
    for (int j = i + 1; j < m; ++j) pairs += alpha[i] * alpha[j];
  }
  const double scale = max_abs(alpha);

  ReferenceInvariants r;
  Matrix ric = Matrix::Zero(n, n);
  for (int i = 0; i < m; ++i) ric(i, i) = -alpha[i] * sa;
  ric(m, m) = -s2;
  r.ricci = ric;
  r.principal_ricci = sorted_eigenvalues(ric);
  r.scalar = -2.0 * (s2 + pairs);

  Matrix k = Matrix::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    k(i, m) = k(m, i) = -alpha[i] * alpha[i];
    for (int j = 0; j < m; ++j)
      if (j != i) k(i, j) = -alpha[i] * alpha[j];
  }
  r.basic_sectional = k;

  for (int i = 0; i < m; ++i) {
    r.curvature.push_back(component(n, i, m, i, {{m, -alpha[i] * alpha[i]}}));
    for (int j = 0; j < m; ++j)
      if (j != i) r.curvature.push_back(component(n, i, j, i, {{j, -alpha[i] * alpha[j]}}));
  }

  bool all_zero = true, all_equal = true;
  for (double a : alpha) {
    all_zero = all_zero && a == 0.0;
    all_equal = all_equal && std::abs(a - alpha[0]) <= 1e-12 * std::max(1.0, scale);
  }
  const bool unimodular = near_zero(sa, scale);
  r.unimodular = unimodular;
  r.cyclic = true;
  r.harmonic_flag = near_zero(s3, scale * scale * scale);
  if (all_zero) {
    r.verdict = TvClass::Zero;
  } else if (all_equal) {
    r.verdict = TvClass::T1;
    r.constant_curvature = -alpha[0] * alpha[0];
  } else if (unimodular) {
    r.verdict = TvClass::T2;
  } else {
    r.verdict = TvClass::T1T2;
  }
  return r;
}

ReferenceInvariants hnp1_reference(const std::vector<double>& rho,
                                   const std::vector<double>& lambda) {
  const int m = static_cast<int>(rho.size());
  const int n = m + 2;
  const double sr = sum(rho);
  double srr = 0.0, sll = 0.0, slr = 0.0;
  for (int i = 0; i < m; ++i) {
    srr += rho[i] * rho[i];
    sll += lambda[i] * lambda[i];
    slr += lambda[i] * rho[i];
  }

  ReferenceInvariants r;
  Matrix ric = Matrix::Zero(n, n);
  ric(0, 0) = -srr;
  ric(1, 1) = -sll;
  ric(0, 1) = ric(1, 0) = -slr;
  for (int i = 0; i < m; ++i) ric(2 + i, 2 + i) = -rho[i] * sr;
  r.ricci = ric;
  r.principal_ricci = sorted_eigenvalues(ric);
  r.scalar = -sll - srr - sr * sr;

  Matrix k = Matrix::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    k(0, 2 + i) = k(2 + i, 0) = -rho[i] * rho[i];
    k(1, 2 + i) = k(2 + i, 1) = -lambda[i] * lambda[i];
    for (int j = 0; j < m; ++j)
      if (j != i) k(2 + i, 2 + j) = -(rho[i] * rho[j] + lambda[i] * lambda[j]);
  }
  r.basic_sectional = k;

  for (int i = 0; i < m; ++i) {
    const int v = 2 + i;
    const double ri = rho[i], li = lambda[i];
    r.curvature.push_back(component(n, 0, v, 0, {{v, -ri * ri}}));
    r.curvature.push_back(component(n, 1, v, 1, {{v, -li * li}}));
    r.curvature.push_back(component(n, 0, v, 1, {{v, -li * ri}}));
    r.curvature.push_back(component(n, 1, v, 0, {{v, -li * ri}}));
    r.curvature.push_back(component(n, 0, v, v, {{0, ri * ri}, {1, ri * li}}));
    r.curvature.push_back(component(n, 1, v, v, {{0, li * ri}, {1, li * li}}));
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const int w = 2 + j;
      const double c = lambda[i] * lambda[j] + rho[i] * rho[j];
      r.curvature.push_back(component(n, v, w, v, {{w, -c}}));
      r.curvature.push_back(component(n, v, w, w, {{v, c}}));
    }
  }
  r.curvature_complete = true;

  const bool unimodular = near_zero(sr, max_abs(rho));
  r.unimodular = unimodular;
  r.cyclic = true;
  r.verdict = unimodular ? TvClass::T2 : TvClass::T1T2;
  return r;
}

ReferenceInvariants direct_product_reference(const std::vector<ReferenceInvariants>& parts,
                                             const std::vector<int>& dims) {
  const int n = std::accumulate(dims.begin(), dims.end(), 0);
  ReferenceInvariants r;
  bool have_ricci = true, have_scalar = true, have_k = true, have_uni = true, have_cyc = true;
  for (const auto& p : parts) {
    have_ricci = have_ricci && p.ricci.has_value();
    have_scalar = have_scalar && p.scalar.has_value();
    have_k = have_k && p.basic_sectional.has_value();
    have_uni = have_uni && p.unimodular.has_value();
    have_cyc = have_cyc && p.cyclic.has_value();
  }
  Matrix ric = Matrix::Zero(n, n), k = Matrix::Zero(n, n);
  double s = 0.0;
  bool uni = true, cyc = true;
  int off = 0;
  for (std::size_t f = 0; f < parts.size(); ++f) {
    const auto& p = parts[f];
    const int d = dims[f];
    if (have_ricci) ric.block(off, off, d, d) = *p.ricci;
    if (have_k) k.block(off, off, d, d) = *p.basic_sectional;
    if (have_scalar) s += *p.scalar;
    if (have_uni) uni = uni && *p.unimodular;
    if (have_cyc) cyc = cyc && *p.cyclic;
    off += d;
  }
  if (have_ricci) {
    r.ricci = ric;
    r.principal_ricci = sorted_eigenvalues(ric);
  }
  if (have_k) r.basic_sectional = k;
  if (have_scalar) r.scalar = s;
  if (have_uni) r.unimodular = uni;
  if (have_cyc) r.cyclic = cyc;
  return r;
}

}  // namespace

// ---- constructors ---------------------------------------------------------------

CatalogEntry make_abelian(int n) {
  if (n < 1) throw InvalidInput("Abelian: dimension must be at least 1");
  CatalogEntry e{MetricLieAlgebra(LieAlgebra::abelian(n)), {Family::Abelian, {}, n, {}}, {}, {}};
  ReferenceInvariants& r = e.reference;
  r.ricci = Matrix::Zero(n, n);
  r.principal_ricci = Vector::Zero(n);
  r.scalar = 0.0;
  r.basic_sectional = Matrix::Zero(n, n);
  r.curvature_complete = true;
  r.constant_curvature = 0.0;
  r.verdict = TvClass::Zero;
  r.unimodular = true;
  r.cyclic = true;
  return e;
}

CatalogEntry make_gn(const std::vector<double>& alphas) {
  if (alphas.empty()) throw InvalidInput("Gn: at least one alpha is required");
  const int m = static_cast<int>(alphas.size());
  std::vector<BracketEntry> entries;
  for (int i = 0; i < m; ++i)
    if (alphas[i] != 0.0) entries.push_back({m, i, i, alphas[i]});
  LieAlgebra alg = LieAlgebra::from_brackets(m + 1, entries);
  CatalogEntry e{MetricLieAlgebra(std::move(alg)), {Family::Gn, alphas, m + 1, {}},
                 gn_reference(alphas), {}};
  return e;
}

CatalogEntry make_hyperbolic(double c, int n) {
  if (n < 2) throw InvalidInput("HyperbolicHn: dimension must be at least 2");
  if (c == 0.0) throw InvalidInput("HyperbolicHn: c must be nonzero");
  CatalogEntry e = make_gn(std::vector<double>(n - 1, c));
  e.params = {Family::HyperbolicHn, {c}, n, {}};
  return e;
}

CatalogEntry make_e11(double alpha) {
  if (alpha == 0.0) throw InvalidInput("E11: alpha must be nonzero");
  CatalogEntry e = make_gn({alpha, -alpha});
  e.params = {Family::E11, {alpha}, 3, {}};
  // u1' = e3, u2' = (e1 + e2)/sqrt2, u3' = (e1 - e2)/sqrt2:
  // [u1',u2'] = alpha u3', [u2',u3'] = 0, [u3',u1'] = -alpha u2'.
  Matrix b = Matrix::Zero(3, 3);
  const double h = 1.0 / std::sqrt(2.0);
  b(2, 0) = 1.0;
  b(0, 1) = h;
  b(1, 1) = h;
  b(0, 2) = h;
  b(1, 2) = -h;
  e.rebases.emplace_back("rigid motions of the Minkowski plane", b);
  return e;
}

CatalogEntry make_hnp1(const std::vector<double>& rhos, const std::vector<double>& lambdas) {
  const int m = static_cast<int>(rhos.size());
  if (m < 2) throw InvalidInput("Hnp1: at least two rho values are required");
  if (static_cast<int>(lambdas.size()) != m)
    throw InvalidInput("Hnp1: rho and lambda lists must have the same length");
  if (max_abs(rhos) == 0.0) throw InvalidInput("Hnp1: rho must be nonzero");
  if (max_abs(lambdas) == 0.0) throw InvalidInput("Hnp1: lambda must be nonzero");
  if (std::abs(sum(lambdas)) > 1e-9 * max_abs(lambdas))
    throw InvalidInput("Hnp1: the lambda values must sum to zero");

  Matrix w(2, m);
  for (int i = 0; i < m; ++i) {
    w(0, i) = rhos[i];
    w(1, i) = lambdas[i];
  }
  std::vector<std::string> labels{"u0", "v0"};
  for (const auto& l : indexed_labels("v", 1, m)) labels.push_back(l);
  std::vector<double> values = rhos;
  values.insert(values.end(), lambdas.begin(), lambdas.end() - 1);
  CatalogEntry e{MetricLieAlgebra(diagonal_extension(w, labels)),
                 {Family::Hnp1, values, m + 2, {}},
                 hnp1_reference(rhos, lambdas),
                 {}};

  // Rotation of span{u0, v0} that kills the first rho with a nonzero lambda.
  for (int i = 0; i < m; ++i) {
    if (lambdas[i] == 0.0) continue;
    const double r = std::hypot(lambdas[i], rhos[i]);
    Matrix b = Matrix::Identity(m + 2, m + 2);
    b(0, 0) = lambdas[i] / r;
    b(1, 0) = -rhos[i] / r;
    b(0, 1) = rhos[i] / r;
    b(1, 1) = lambdas[i] / r;
    if (i == 0) e.rebases.emplace_back("Hhat form", b);
    break;
  }
  return e;
}

CatalogEntry make_h4(double rho, double sigma, double lambda) {
  return make_hnp1({rho, sigma}, {lambda, -lambda});
}

CatalogEntry make_h5(double rho, double sigma, double tau, double lambda, double mu) {
  return make_hnp1({rho, sigma, tau}, {lambda, mu, -lambda - mu});
}

CatalogEntry make_hnp_hat(const std::vector<double>& sigmas, const std::vector<double>& mus) {
  const int m = static_cast<int>(mus.size());
  if (m < 2) throw InvalidInput("HnpHat: at least two mu values are required");
  if (static_cast<int>(sigmas.size()) != m - 1)
    throw InvalidInput("HnpHat: expected one sigma fewer than mu values");
  if (mus[0] == 0.0) throw InvalidInput("HnpHat: mu_1 must be nonzero");

  Matrix w(2, m);
  w(0, 0) = 0.0;
  for (int i = 1; i < m; ++i) w(0, i) = sigmas[i - 1];
  for (int i = 0; i < m; ++i) w(1, i) = mus[i];
  std::vector<std::string> labels{"uh0", "vh0"};
  for (const auto& l : indexed_labels("v", 1, m)) labels.push_back(l);
  std::vector<double> values = sigmas;
  values.insert(values.end(), mus.begin(), mus.end());
  CatalogEntry e{MetricLieAlgebra(diagonal_extension(w, labels)),
                 {Family::HnpHat, values, m + 2, {}},
                 {},
                 {}};
  const bool unimodular =
      near_zero(sum(sigmas), max_abs(sigmas)) && near_zero(sum(mus), max_abs(mus));
  e.reference.unimodular = unimodular;
  e.reference.cyclic = true;
  e.reference.verdict = unimodular ? TvClass::T2 : TvClass::T1T2;
  return e;
}

CatalogEntry make_sl2_cyclic(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0))
    throw InvalidInput("Sl2Cyclic: lambda_1 and lambda_2 must be positive");
  // 3x3 matrix model: e1 = a(E12+E21), e2 = b(E13+E31), e3 = c(E32-E23).
  const double a = std::sqrt(l2 * (l1 + l2));
  const double b = std::sqrt(l1 * (l1 + l2));
  const double c = std::sqrt(l1 * l2);
  std::array<Eigen::Matrix3d, 3> e;
  for (auto& m : e) m.setZero();
  e[0](0, 1) = e[0](1, 0) = a;
  e[1](0, 2) = e[1](2, 0) = b;
  e[2](2, 1) = c;
  e[2](1, 2) = -c;

  Eigen::Matrix<double, 9, 3> flat;
  for (int k = 0; k < 3; ++k) flat.col(k) = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(e[k].data());
  Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 9, 3>> qr(flat);

  Tensor3 t(3);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const Eigen::Matrix3d br = e[i] * e[j] - e[j] * e[i];
      const Eigen::Vector3d coords =
          qr.solve(Eigen::Map<const Eigen::Matrix<double, 9, 1>>(br.data()));
      for (int k = 0; k < 3; ++k) {
        t(i, j, k) = coords(k);
        t(j, i, k) = -coords(k);
      }
    }

  CatalogEntry entry{MetricLieAlgebra(LieAlgebra(t)), {Family::Sl2Cyclic, {l1, l2}, 3, {}}, {}, {}};
  ReferenceInvariants& r = entry.reference;
  Vector d(3);
  d << -2.0 * l2 * (l1 + l2), -2.0 * l1 * (l1 + l2), 2.0 * l1 * l2;
  r.ricci = Matrix(d.asDiagonal());
  r.principal_ricci = sorted_eigenvalues(*r.ricci);
  r.scalar = d.sum();
  r.verdict = TvClass::T2;
  r.unimodular = true;
  r.cyclic = true;
  return entry;
}

CatalogEntry make_so3_biinvariant(double beta) {
  if (!(beta > 0.0)) throw InvalidInput("So3Biinv: beta must be positive");
  LieAlgebra alg = LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}});
  // Killing form of this basis is -2 I.
  const Matrix g = 2.0 * beta * Matrix::Identity(3, 3);
  CatalogEntry e{MetricLieAlgebra(alg, InnerProduct(g)), {Family::So3Biinv, {beta}, 3, {}}, {}, {}};
  ReferenceInvariants& r = e.reference;
  r.ricci = Matrix(0.5 * Matrix::Identity(3, 3));
  r.principal_ricci = Vector::Constant(3, 1.0 / (4.0 * beta));
  r.scalar = 3.0 / (4.0 * beta);
  Matrix k = Matrix::Constant(3, 3, 1.0 / (8.0 * beta));
  k.diagonal().setZero();
  r.basic_sectional = k;
  r.constant_curvature = 1.0 / (8.0 * beta);
  r.verdict = TvClass::T3;
  r.unimodular = true;
  r.cyclic = false;
  return e;
}

CatalogEntry make_heisenberg() {
  LieAlgebra alg = LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}});
  CatalogEntry e{MetricLieAlgebra(alg), {Family::Heisenberg, {}, 3, {}}, {}, {}};
  ReferenceInvariants& r = e.reference;
  Vector d(3);
  d << -0.5, -0.5, 0.5;
  r.ricci = Matrix(d.asDiagonal());
  r.principal_ricci = sorted_eigenvalues(*r.ricci);
  r.scalar = -0.5;
  Matrix k(3, 3);
  k << 0.0, -0.75, 0.25, -0.75, 0.0, 0.25, 0.25, 0.25, 0.0;
  r.basic_sectional = k;
  r.unimodular = true;
  r.cyclic = false;
  return e;
}

CatalogEntry make_direct_product(const std::vector<CatalogEntry>& factors) {
  if (factors.empty()) throw InvalidInput("DirectProduct: no factors");
  int n = 0;
  for (const auto& f : factors) n += f.algebra.dim();
  Tensor3 t(n);
  Matrix g = Matrix::Zero(n, n);
  std::vector<std::string> labels;
  std::vector<ReferenceInvariants> refs;
  std::vector<int> dims;
  FamilyParams params{Family::DirectProduct, {}, n, {}};
  int off = 0;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const MetricLieAlgebra& m = factors[f].algebra;
    const int d = m.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) t(off + i, off + j, off + k) = m.c(i, j, k);
    g.block(off, off, d, d) = m.gram();
    for (const auto& l : m.labels()) labels.push_back(l + "_" + std::to_string(f + 1));
    refs.push_back(factors[f].reference);
    dims.push_back(d);
    params.factors.push_back(factors[f].params);
    off += d;
  }
  CatalogEntry e{MetricLieAlgebra(LieAlgebra(t, labels), InnerProduct(g)), params,
                 direct_product_reference(refs, dims), {}};
  return e;
}

SemidirectDefects semidirect_defects(const SemidirectSpec& spec) {
  const int n1 = spec.left.dim();
  const int n2 = spec.right.dim();
  if (static_cast<int>(spec.action.size()) != n1)
    throw InvalidInput("semidirect: one action matrix per basis vector of the left factor");
  for (const Matrix& d : spec.action)
    if (d.rows() != n2 || d.cols() != n2)
      throw InvalidInput("semidirect: action matrices must be square of the right dimension");

  SemidirectDefects out;
  const LieAlgebra& r = spec.right.algebra();
  for (const Matrix& d : spec.action) {
    for (int p = 0; p < n2; ++p)
      for (int q = p + 1; q < n2; ++q) {
        const Vector ep = Vector::Unit(n2, p), eq = Vector::Unit(n2, q);
        const Vector lhs = d * bracket(r, ep, eq);
        const Vector rhs = bracket(r, d * ep, eq) + bracket(r, ep, d * eq);
        out.derivation = std::max(out.derivation, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    const Matrix gd = spec.right.gram() * d;
    out.selfadjoint = std::max(out.selfadjoint, (gd - gd.transpose()).cwiseAbs().maxCoeff());
  }
  for (int a = 0; a < n1; ++a)
    for (int b = a + 1; b < n1; ++b) {
      Matrix lhs = Matrix::Zero(n2, n2);
      for (int c = 0; c < n1; ++c) lhs += spec.left.c(a, b, c) * spec.action[c];
      const Matrix rhs = spec.action[a] * spec.action[b] - spec.action[b] * spec.action[a];
      out.homomorphism = std::max(out.homomorphism, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return out;
}

CatalogEntry make_semidirect(const SemidirectSpec& spec, double tol) {
  const SemidirectDefects def = semidirect_defects(spec);
  double dmax = 0.0;
  for (const Matrix& d : spec.action) dmax = std::max(dmax, d.cwiseAbs().maxCoeff());
  const double scale = std::max({1.0, dmax * dmax, dmax * spec.right.algebra().scale(),
                                 dmax * spec.left.algebra().scale()});
  if (def.derivation > tol * scale)
    throw ValidationFailure("semidirect: action is not by derivations", def.derivation);
  if (def.homomorphism > tol * scale)
    throw ValidationFailure("semidirect: action is not a homomorphism", def.homomorphism);

  const int n1 = spec.left.dim();
  const int n2 = spec.right.dim();
  const int n = n1 + n2;
  Tensor3 t(n);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n1; ++b)
      for (int c = 0; c < n1; ++c) t(a, b, c) = spec.left.c(a, b, c);
  for (int p = 0; p < n2; ++p)
    for (int q = 0; q < n2; ++q)
      for (int s = 0; s < n2; ++s) t(n1 + p, n1 + q, n1 + s) = spec.right.c(p, q, s);
  for (int a = 0; a < n1; ++a)
    for (int q = 0; q < n2; ++q)
      for (int p = 0; p < n2; ++p) {
        t(a, n1 + q, n1 + p) = spec.action[a](p, q);
        t(n1 + q, a, n1 + p) = -spec.action[a](p, q);
      }
  Matrix g = Matrix::Zero(n, n);
  g.topLeftCorner(n1, n1) = spec.left.gram();
  g.bottomRightCorner(n2, n2) = spec.right.gram();
  std::vector<std::string> labels;
  for (const auto& l : spec.left.labels()) labels.push_back(l + "_1");
  for (const auto& l : spec.right.labels()) labels.push_back(l + "_2");

  CatalogEntry e{MetricLieAlgebra(LieAlgebra(t, labels), InnerProduct(g)),
                 {Family::Semidirect, {}, n, {}}, {}, {}};
  // Cyclic exactly when both factors are cyclic and every D(X1) is selfadjoint.
  const double gscale = std::max(1.0, dmax * spec.right.gram().cwiseAbs().maxCoeff());
  e.reference.cyclic = is_cyclic(spec.left).cyclic && is_cyclic(spec.right).cyclic &&
                       def.selfadjoint <= tol * gscale;
  return e;
}

CatalogEntry make(const FamilyParams& p) {
  const auto& v = p.values;
  auto need = [&](std::size_t count) {
    if (v.size() != count)
      throw InvalidInput(to_string(p.family) + ": expected " + std::to_string(count) +
                         " parameters, got " + std::to_string(v.size()));
  };
  switch (p.family) {
    case Family::Abelian: return make_abelian(p.dim);
    case Family::Gn: return make_gn(v);
    case Family::HyperbolicHn: need(1); return make_hyperbolic(v[0], p.dim);
    case Family::E11: need(1); return make_e11(v[0]);
    case Family::Hnp1: {
      const int m = p.dim - 2;
      need(static_cast<std::size_t>(2 * m - 1));
      std::vector<double> rho(v.begin(), v.begin() + m);
      std::vector<double> lambda(v.begin() + m, v.end());
      lambda.push_back(-sum(lambda));
      return make_hnp1(rho, lambda);
    }
    case Family::HnpHat: {
      const int m = p.dim - 2;
      need(static_cast<std::size_t>(2 * m - 1));
      return make_hnp_hat(std::vector<double>(v.begin(), v.begin() + (m - 1)),
                          std::vector<double>(v.begin() + (m - 1), v.end()));
    }
    case Family::Sl2Cyclic: need(2); return make_sl2_cyclic(v[0], v[1]);
    case Family::So3Biinv: need(1); return make_so3_biinvariant(v[0]);
    case Family::Heisenberg: return make_heisenberg();
    case Family::DirectProduct: {
      std::vector<CatalogEntry> parts;
      for (const auto& f : p.factors) parts.push_back(make(f));
      return make_direct_product(parts);
    }
    case Family::Semidirect:
      throw InvalidInput("Semidirect: build with make_semidirect from an explicit action");
  }
  throw InvalidInput("unknown family");
}

CatalogEntry make_named(const std::string& tag, const std::vector<double>& v) {
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (v.size() < lo || v.size() > hi) {
      std::ostringstream os;
      os << tag << ": expected ";
      if (lo == hi) os << lo; else os << lo << " to " << hi;
      os << " parameters, got " << v.size();
      throw InvalidInput(os.str());
    }
  };
  auto as_dim = [&](double x) {
    if (x < 1.0 || x != std::floor(x)) throw InvalidInput(tag + ": dimension must be a positive integer");
    return static_cast<int>(x);
  };
  if (tag == "Abelian") { need(1, 1); return make_abelian(as_dim(v[0])); }
  if (tag == "Gn") { need(1, 64); return make_gn(v); }
  if (tag == "HyperbolicHn") { need(2, 2); return make_hyperbolic(v[0], as_dim(v[1])); }
  if (tag == "E11") { need(1, 1); return make_e11(v[0]); }
  if (tag == "H4") { need(3, 3); return make_h4(v[0], v[1], v[2]); }
  if (tag == "H5") { need(5, 5); return make_h5(v[0], v[1], v[2], v[3], v[4]); }
  if (tag == "Hnp1" || tag == "HnpHat") {
    if (v.size() < 3 || v.size() % 2 == 0)
      throw InvalidInput(tag + ": expected 2n-3 parameters for dimension n+1");
    const int n = static_cast<int>(v.size() + 3) / 2;
    return make(FamilyParams{family_from_string(tag), v, n + 1, {}});
  }
  if (tag == "Sl2Cyclic") { need(2, 2); return make_sl2_cyclic(v[0], v[1]); }
  if (tag == "So3Biinv") { need(0, 1); return make_so3_biinvariant(v.empty() ? 1.0 : v[0]); }
  if (tag == "Heisenberg") { need(0, 0); return make_heisenberg(); }
  if (tag == "Sl2xR") {
    need(2, 3);
    return make_direct_product(
        {make_sl2_cyclic(v[0], v[1]), make_abelian(v.size() == 3 ? as_dim(v[2]) : 1)});
  }
  if (tag == "Sl2xH2") {
    need(3, 3);
    return make_direct_product({make_sl2_cyclic(v[0], v[1]), make_hyperbolic(v[2], 2)});
  }
  throw InvalidInput("unknown catalog tag '" + tag + "'");
}

ReferenceInvariants reference_invariants(const FamilyParams& params) {
  return make(params).reference;
}

}  // namespace cyclab

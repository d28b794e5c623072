#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense n x n x n array, row-major in (i, j, k).
class Tensor3 {
public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  const std::vector<double>& data() const { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Tensor3& operator+=(const Tensor3& o) {
    for (std::size_t a = 0; a < data_.size(); ++a) data_[a] += o.data_[a];
    return *this;
  }
  Tensor3& operator-=(const Tensor3& o) {
    for (std::size_t a = 0; a < data_.size(); ++a) data_[a] -= o.data_[a];
    return *this;
  }
  Tensor3& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

  /// Plain sum of squares of the stored components (Frobenius norm squared).
  double squared_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return s;
  }

  /// Components in the frame whose vectors are the columns of `frame`:
  /// out(a,b,c) = sum frame(i,a) frame(j,b) frame(k,c) T(i,j,k).
  Tensor3 in_frame(const Matrix& frame) const;

private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_ = 0;
  std::vector<double> data_;
};

/// Sum over all components of a(i,j,k) * b(i,j,k).
double contract(const Tensor3& a, const Tensor3& b);

/// Dense n^4 array indexed (i, j, k, l).
class Tensor4 {
public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }
  double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

private:
  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  int n_ = 0;
  std::vector<double> data_;
};

/// Raised for malformed inputs: wrong shapes, bad parameters, unknown names.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a well-formed input fails a mathematical check
/// (Jacobi identity, positive-definiteness, cyclicity, ...).
class ValidationFailure : public std::runtime_error {
public:
  ValidationFailure(const std::string& what, double defect)
      : std::runtime_error(what), defect_(defect) {}
  double defect() const { return defect_; }

private:
  double defect_;
};

/// Raised for inputs outside the supported range (e.g. classification above dimension 5).
class Unsupported : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cyclab

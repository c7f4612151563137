#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace supralap {

using Vector = std::vector<double>;

/// Dense row-major matrix. Used for adjacency matrices, Laplacian blocks and
/// full supra matrices alike; symmetric operators are checked at the point of use.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::span<const double> values() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Largest |m(i,j) - m(j,i)|; throws dimension_mismatch for non-square input.
double max_asymmetry(const Matrix& m);

/// Replaces m by (m + m^T) / 2.
void symmetrize(Matrix& m);

/// Throws not_symmetric if max_asymmetry(m) > tol.
void require_symmetric(const Matrix& m, double tol = 1e-12);

Vector multiply(const Matrix& m, std::span<const double> x);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Matrix subtract(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& m);
double max_abs_difference(const Matrix& a, const Matrix& b);
double trace(const Matrix& m);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// Scales x to unit Euclidean norm and returns the original norm.
double normalize(std::span<double> x);

}  // namespace supralap

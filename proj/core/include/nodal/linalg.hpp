#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nodal {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;
  /// First `k` columns.
  Matrix leading_columns(std::size_t k) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);

struct SvdOptions {
  double tolerance = 1e-12;  // relative off-diagonal threshold per column pair
  int max_sweeps = 100;
};

/// Thin SVD: for an m x n input with p = min(m, n), u is m x p, v is n x p
/// and sigma has p entries sorted descending. Columns of u belonging to
/// (numerically) zero singular values are completed to an orthonormal set.
struct Svd {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
  int sweeps = 0;
};

/// One-sided (Hestenes) Jacobi SVD. Throws Error(kNumeric) on non-finite
/// input and ConvergenceError when the sweep budget runs out.
Svd svd(const Matrix& a, const SvdOptions& options = {});

}  // namespace nodal

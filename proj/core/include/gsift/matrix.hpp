#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "gsift/errors.hpp"

namespace gsift {

/// Two-component vector used for binary-class logits and probabilities.
using Vec2 = std::array<double, 2>;

/// Dense row-major matrix of doubles. A plain value type: copy freely,
/// share read-only across threads. The free operations below never mutate
/// their inputs; the few in-place helpers are named as such.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix filled(std::size_t rows, std::size_t cols, double value) {
    Matrix m(rows, cols);
    for (double& x : m.data_) x = value;
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Builds from nested lists; rows must be equal length.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  /// Exact comparison, bit-for-bit on every entry.
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// a * b. Throws ShapeError unless a.cols == b.rows.
Matrix matmul(const Matrix& a, const Matrix& b);

/// transpose(a) * b without materializing the transpose.
Matrix matmul_at(const Matrix& a, const Matrix& b);

/// a * transpose(b) without materializing the transpose.
Matrix matmul_bt(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

/// Elementwise max(0, x).
Matrix relu(const Matrix& m);

/// Sum of squared entries.
double frobenius_norm_sq(const Matrix& m);

bool all_finite(const Matrix& m) noexcept;
bool all_finite(std::span<const double> v) noexcept;

/// m + row broadcast over every row of m. row.size() must equal m.cols().
Matrix add_row_broadcast(const Matrix& m, std::span<const double> row);

/// Column means / sums as a cols()-sized vector.
std::vector<double> column_mean(const Matrix& m);
std::vector<double> column_sum(const Matrix& m);

/// Outer product col ⊗ row: result(i, j) = col[i] * row[j].
Matrix outer(std::span<const double> col, std::span<const double> row);

/// y += alpha * x, in place. Shapes must match.
void axpy_inplace(double alpha, const Matrix& x, Matrix& y);
void axpy_inplace(double alpha, std::span<const double> x, std::span<double> y);

/// Numerically stable log-softmax over two logits (max subtraction).
/// exp of the outputs sums to 1 up to roundoff.
Vec2 log_softmax(const Vec2& logits);

/// Stable softmax over two logits.
Vec2 softmax(const Vec2& logits);

}  // namespace gsift

#include "gsift/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsift {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matmul", a.rows(), a.cols(), b.rows(), b.cols());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  Matrix c(n, m);
  const double* A = a.data().data();
  const double* B = b.data().data();
  double* C = c.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = A[i * k + p];
      const double* Bp = B + p * m;
      double* Ci = C + i * m;
      for (std::size_t j = 0; j < m; ++j) Ci[j] += aip * Bp[j];
    }
  }
  return c;
}

Matrix matmul_at(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("matmul_at", a.rows(), a.cols(), b.rows(), b.cols());
  const std::size_t n = a.cols(), k = a.rows(), m = b.cols();
  Matrix c(n, m);
  const double* A = a.data().data();
  const double* B = b.data().data();
  double* C = c.data().data();
  // c[i][j] = sum_p A[p][i] * B[p][j]
  for (std::size_t p = 0; p < k; ++p) {
    const double* Ap = A + p * n;
    const double* Bp = B + p * m;
    for (std::size_t i = 0; i < n; ++i) {
      const double api = Ap[i];
      double* Ci = C + i * m;
      for (std::size_t j = 0; j < m; ++j) Ci[j] += api * Bp[j];
    }
  }
  return c;
}

Matrix matmul_bt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeError("matmul_bt", a.rows(), a.cols(), b.rows(), b.cols());
  const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
  Matrix c(n, m);
  const double* A = a.data().data();
  const double* B = b.data().data();
  double* C = c.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    const double* Ai = A + i * k;
    for (std::size_t j = 0; j < m; ++j) {
      const double* Bj = B + j * k;
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += Ai[p] * Bj[p];
      C[i * m + j] = s;
    }
  }
  return c;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix relu(const Matrix& m) {
  Matrix r(m.rows(), m.cols());
  const auto src = m.data();
  auto dst = r.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > 0.0 ? src[i] : 0.0;
  return r;
}

double frobenius_norm_sq(const Matrix& m) {
  double s = 0.0;
  for (double x : m.data()) s += x * x;
  return s;
}

bool all_finite(const Matrix& m) noexcept { return all_finite(m.data()); }

bool all_finite(std::span<const double> v) noexcept {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

Matrix add_row_broadcast(const Matrix& m, std::span<const double> row) {
  if (row.size() != m.cols())
    throw ShapeError("add_row_broadcast", m.rows(), m.cols(), 1, row.size());
  Matrix r = m;
  auto d = r.data();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i * m.cols() + j] += row[j];
  return r;
}

std::vector<double> column_sum(const Matrix& m) {
  std::vector<double> s(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s[j] += m(i, j);
  return s;
}

std::vector<double> column_mean(const Matrix& m) {
  std::vector<double> s = column_sum(m);
  if (m.rows() > 0)
    for (double& x : s) x /= static_cast<double>(m.rows());
  return s;
}

Matrix outer(std::span<const double> col, std::span<const double> row) {
  Matrix r(col.size(), row.size());
  for (std::size_t i = 0; i < col.size(); ++i)
    for (std::size_t j = 0; j < row.size(); ++j) r(i, j) = col[i] * row[j];
  return r;
}

void axpy_inplace(double alpha, const Matrix& x, Matrix& y) {
  if (!x.same_shape(y)) throw ShapeError("axpy", x.rows(), x.cols(), y.rows(), y.cols());
  axpy_inplace(alpha, x.data(), y.data());
}

void axpy_inplace(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw ShapeError("axpy", 1, x.size(), 1, y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vec2 log_softmax(const Vec2& logits) {
  const double m = std::max(logits[0], logits[1]);
  const double lse = m + std::log(std::exp(logits[0] - m) + std::exp(logits[1] - m));
  return {logits[0] - lse, logits[1] - lse};
}

Vec2 softmax(const Vec2& logits) {
  const Vec2 ls = log_softmax(logits);
  return {std::exp(ls[0]), std::exp(ls[1])};
}

}  // namespace gsift

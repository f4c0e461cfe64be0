#pragma once

// Minimal dense row-major matrix plus the handful of operations the
// component extraction needs. Inner loops go through the kernels layer.

#include <cstddef>
#include <vector>

#include "pocre/kernels.hpp"

namespace pocre {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

namespace linalg {

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double max_abs(const Vector& v);

// out = A * x (length rows)
Vector matvec(const Matrix& a, const Vector& x);
// out = A^T * y (length cols)
Vector matvec_t(const Matrix& a, const Vector& y);
// A -= u * v^T with u of length rows, v of length cols
void rank1_sub(Matrix& a, const Vector& u, const Vector& v);

// C = A^T * B where A is n x p and B is n x k; result p x k.
Matrix gram_t(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);

void normalize(Vector& v);            // v /= ||v||; no-op on zero vector
void flip_to_positive_peak(Vector& v);  // sign so the largest-|.| entry is > 0

}  // namespace linalg
}  // namespace pocre

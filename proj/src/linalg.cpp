#include "pocre/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace pocre {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("matrix data size does not match dimensions");
  }
}

namespace linalg {

double dot(const Vector& a, const Vector& b) {
  return kernels::dot(a.data(), b.data(), a.size());
}

double norm2(const Vector& v) {
  return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

double max_abs(const Vector& v) { return kernels::max_abs(v.data(), v.size()); }

Vector matvec(const Matrix& a, const Vector& x) {
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out[i] = kernels::dot(a.row(i), x.data(), a.cols());
  }
  return out;
}

Vector matvec_t(const Matrix& a, const Vector& y) {
  Vector out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    kernels::axpy(y[i], a.row(i), out.data(), a.cols());
  }
  return out;
}

void rank1_sub(Matrix& a, const Vector& u, const Vector& v) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    kernels::axpy(-u[i], v.data(), a.row(i), a.cols());
  }
}

Matrix gram_t(const Matrix& a, const Matrix& b) {
  Matrix out(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* arow = a.row(i);
    const double* brow = b.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (arow[j] != 0.0) kernels::axpy(arow[j], brow, out.row(j), b.cols());
    }
  }
  return out;
}

double frobenius_norm(const Matrix& a) {
  return std::sqrt(kernels::dot(a.data().data(), a.data().data(), a.data().size()));
}

void normalize(Vector& v) {
  const double n = norm2(v);
  if (n > 0.0) kernels::scal(1.0 / n, v.data(), v.size());
}

void flip_to_positive_peak(Vector& v) {
  double best = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::fabs(v[i]);
    if (a > best) {
      best = a;
      at = i;
    }
  }
  if (best > 0.0 && v[at] < 0.0) kernels::scal(-1.0, v.data(), v.size());
}

}  // namespace linalg
}  // namespace pocre

#include "pocre/kernels.hpp"

#include <cmath>

namespace pocre::kernels {

namespace ref {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void mul(double* x, const double* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s[i];
}

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

}  // namespace ref

namespace {

struct Dispatch {
  Isa isa;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  void (*mul)(double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
};

Dispatch make_dispatch() {
#if POCRE_HAVE_AVX2_KERNELS
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return {Isa::avx2, avx2::dot, avx2::axpy, avx2::scal,
            avx2::mul, avx2::sum, avx2::max_abs};
  }
#endif
  return {Isa::scalar, ref::dot, ref::axpy, ref::scal,
          ref::mul, ref::sum, ref::max_abs};
}

const Dispatch& dispatch() {
  static const Dispatch d = make_dispatch();
  return d;
}

}  // namespace

Isa active_isa() { return dispatch().isa; }

const char* isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

double dot(const double* a, const double* b, std::size_t n) {
  return dispatch().dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  dispatch().axpy(alpha, x, y, n);
}

void scal(double alpha, double* x, std::size_t n) {
  dispatch().scal(alpha, x, n);
}

void mul(double* x, const double* s, std::size_t n) {
  dispatch().mul(x, s, n);
}

double sum(const double* x, std::size_t n) { return dispatch().sum(x, n); }

double max_abs(const double* x, std::size_t n) {
  return dispatch().max_abs(x, n);
}

}  // namespace pocre::kernels

#pragma once

// Vector kernels used by the dense linear algebra layer. Every kernel has a
// scalar reference implementation; on x86-64 an AVX2+FMA variant is selected
// at runtime when the CPU supports it. The two implementations are
// equivalence-tested against each other.

#include <cstddef>

namespace pocre::kernels {

enum class Isa { scalar, avx2 };

// Instruction set the dispatched kernels resolved to at startup.
Isa active_isa();
const char* isa_name(Isa isa);

// Dispatched entry points.
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);  // y += alpha*x
void scal(double alpha, double* x, std::size_t n);                   // x *= alpha
void mul(double* x, const double* s, std::size_t n);                 // x[i] *= s[i]
double sum(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);

// Scalar reference implementations (always available).
namespace ref {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void mul(double* x, const double* s, std::size_t n);
double sum(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace ref

#if defined(__x86_64__) || defined(_M_X64)
#define POCRE_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void mul(double* x, const double* s, std::size_t n);
double sum(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace avx2
#else
#define POCRE_HAVE_AVX2_KERNELS 0
#endif

}  // namespace pocre::kernels

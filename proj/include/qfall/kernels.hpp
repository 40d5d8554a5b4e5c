#pragma once

// Grid-pointwise kernels shared by every propagator.
//
// `serial` is the reference implementation. `omp` splits work into fixed
// blocks of kBlock nodes; reductions sum one partial per block and then add
// the partials in block order, so results are bitwise identical for any
// thread count. The unqualified entry points dispatch to `omp` only for
// arrays of at least kParallelThreshold nodes.

#include <complex>
#include <cstddef>
#include <span>

namespace qfall::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t kBlock = 1024;
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

/// Weighted sums of |a|^2 about a shifted coordinate:
/// s0 = sum |a|^2, s1 = sum (c - shift) |a|^2, s2 = sum (c - shift)^2 |a|^2.
struct MomentSums {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
};

namespace serial {
void multiply(std::span<cplx> a, std::span<const cplx> factor);
void scale(std::span<cplx> a, cplx s);
void phase_factors(std::span<const double> theta, std::span<cplx> out);
double sum_abs2(std::span<const cplx> a);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
MomentSums moment_sums(std::span<const cplx> a, std::span<const double> coord, double shift);
} // namespace serial

namespace omp {
void multiply(std::span<cplx> a, std::span<const cplx> factor);
void scale(std::span<cplx> a, cplx s);
void phase_factors(std::span<const double> theta, std::span<cplx> out);
double sum_abs2(std::span<const cplx> a);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
MomentSums moment_sums(std::span<const cplx> a, std::span<const double> coord, double shift);
} // namespace omp

/// True when the library was compiled with OpenMP.
bool openmp_enabled() noexcept;
int max_threads() noexcept;

void multiply(std::span<cplx> a, std::span<const cplx> factor);
void scale(std::span<cplx> a, cplx s);
void phase_factors(std::span<const double> theta, std::span<cplx> out);
double sum_abs2(std::span<const cplx> a);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
MomentSums moment_sums(std::span<const cplx> a, std::span<const double> coord, double shift);

} // namespace qfall::kernels

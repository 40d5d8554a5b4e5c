#include "qfall/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace qfall::kernels {

namespace serial {

void multiply(std::span<cplx> a, std::span<const cplx> factor)
{
    assert(a.size() == factor.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= factor[i];
}

void scale(std::span<cplx> a, cplx s)
{
    for (auto& v : a) v *= s;
}

void phase_factors(std::span<const double> theta, std::span<cplx> out)
{
    assert(theta.size() == out.size());
    for (std::size_t i = 0; i < theta.size(); ++i) out[i] = std::polar(1.0, theta[i]);
}

double sum_abs2(std::span<const cplx> a)
{
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    return s;
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b)
{
    assert(a.size() == b.size());
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

MomentSums moment_sums(std::span<const cplx> a, std::span<const double> coord, double shift)
{
    assert(a.size() == coord.size());
    MomentSums m;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double w = std::norm(a[i]);
        const double d = coord[i] - shift;
        m.s0 += w;
        m.s1 += d * w;
        m.s2 += d * d * w;
    }
    return m;
}

} // namespace serial

namespace omp {
namespace {

std::size_t block_count(std::size_t n) { return (n + kBlock - 1) / kBlock; }

// Runs body(begin, end) for every block; blocks are independent.
template <typename Body>
void for_blocks(std::size_t n, Body&& body)
{
    const auto nb = static_cast<std::ptrdiff_t>(block_count(n));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
        const std::size_t end = std::min(n, begin + kBlock);
        body(begin, end);
    }
}

// Per-block partials reduced in block order.
template <typename T, typename Partial>
T reduce_blocks(std::size_t n, Partial&& partial)
{
    std::vector<T> parts(block_count(n));
    for_blocks(n, [&](std::size_t begin, std::size_t end) { parts[begin / kBlock] = partial(begin, end); });
    T total{};
    for (const auto& p : parts) total += p;
    return total;
}

} // namespace

void multiply(std::span<cplx> a, std::span<const cplx> factor)
{
    assert(a.size() == factor.size());
    for_blocks(a.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) a[i] *= factor[i];
    });
}

void scale(std::span<cplx> a, cplx s)
{
    for_blocks(a.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) a[i] *= s;
    });
}

void phase_factors(std::span<const double> theta, std::span<cplx> out)
{
    assert(theta.size() == out.size());
    for_blocks(theta.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = std::polar(1.0, theta[i]);
    });
}

double sum_abs2(std::span<const cplx> a)
{
    return reduce_blocks<double>(a.size(), [&](std::size_t begin, std::size_t end) {
        return serial::sum_abs2(a.subspan(begin, end - begin));
    });
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b)
{
    assert(a.size() == b.size());
    return reduce_blocks<cplx>(a.size(), [&](std::size_t begin, std::size_t end) {
        return serial::dot(a.subspan(begin, end - begin), b.subspan(begin, end - begin));
    });
}

MomentSums moment_sums(std::span<const cplx> a, std::span<const double> coord, double shift)
{
    assert(a.size() == coord.size());
    struct Acc {
        MomentSums m;
        Acc& operator+=(const Acc& o)
        {
            m.s0 += o.m.s0;
            m.s1 += o.m.s1;
            m.s2 += o.m.s2;
            return *this;
        }
    };
    return reduce_blocks<Acc>(a.size(), [&](std::size_t begin, std::size_t end) {
               return Acc{serial::moment_sums(a.subspan(begin, end - begin),
                                              coord.subspan(begin, end - begin), shift)};
           }).m;
}

} // namespace omp

bool openmp_enabled() noexcept
{
#if defined(_OPENMP)
    return true;
#else
    return false;
#endif
}

int max_threads() noexcept
{
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {
bool go_parallel(std::size_t n) { return n >= kParallelThreshold; }
} // namespace

void multiply(std::span<cplx> a, std::span<const cplx> factor)
{
    go_parallel(a.size()) ? omp::multiply(a, factor) : serial::multiply(a, factor);
}

void scale(std::span<cplx> a, cplx s)
{
    go_parallel(a.size()) ? omp::scale(a, s) : serial::scale(a, s);
}

void phase_factors(std::span<const double> theta, std::span<cplx> out)
{
    go_parallel(theta.size()) ? omp::phase_factors(theta, out) : serial::phase_factors(theta, out);
}

double sum_abs2(std::span<const cplx> a)
{
    return go_parallel(a.size()) ? omp::sum_abs2(a) : serial::sum_abs2(a);
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b)
{
    return go_parallel(a.size()) ? omp::dot(a, b) : serial::dot(a, b);
}

MomentSums moment_sums(std::span<const cplx> a, std::span<const double> coord, double shift)
{
    return go_parallel(a.size()) ? omp::moment_sums(a, coord, shift) : serial::moment_sums(a, coord, shift);
}

} // namespace qfall::kernels

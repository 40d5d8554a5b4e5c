#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "qfall/core.hpp"

namespace qfall::test {

inline PhysicalParams natural(double g = 1.0)
{
    PhysicalParams p;
    p.g = g;
    return p;
}

inline Grid standard_grid(std::size_t n = 512) { return Grid(-20.0, 20.0, n); }

inline WavePacket standard_gaussian(double x0 = 0.0, double p0 = 0.0, double sigma0 = 1.0, std::size_t n = 512)
{
    return make_gaussian(standard_grid(n), x0, p0, sigma0, natural());
}

/// Composite Simpson on [a, b] with n (even) intervals. Test-side oracle.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000)
{
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * i);
    return s * h / 3.0;
}

/// Random superposition of a few Gaussian wavelets near the origin: smooth,
/// normalised and far from the grid edges.
inline WavePacket random_localised(const Grid& grid, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> centre(-2.0, 2.0), kick(-2.0, 2.0), width(0.7, 1.3), phase(0.0, 6.283);
    std::vector<cplx> amp(grid.size(), cplx(0.0, 0.0));
    for (int w = 0; w < 4; ++w) {
        const double c = centre(rng), k = kick(rng), s = width(rng);
        const cplx weight = std::polar(1.0, phase(rng));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double x = grid.x(i) - c;
            amp[i] += weight * std::exp(-x * x / (4.0 * s * s)) * std::polar(1.0, k * x);
        }
    }
    return WavePacket::normalized(grid, std::move(amp));
}

} // namespace qfall::test

#include "qfall/core.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "qfall/kernels.hpp"

namespace qfall {

std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::BadParams: return "BadParams";
    case Errc::BadGrid: return "BadGrid";
    case Errc::BadSigma: return "BadSigma";
    case Errc::GridOverflow: return "GridOverflow";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::NegativeTime: return "NegativeTime";
    case Errc::BadSchedule: return "BadSchedule";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::DegenerateInterval: return "DegenerateInterval";
    case Errc::SuperluminalPath: return "SuperluminalPath";
    case Errc::BadQuadrature: return "BadQuadrature";
    case Errc::BadInput: return "BadInput";
    case Errc::PhaseAliasing: return "PhaseAliasing";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    }
    return "Unknown";
}

void PhysicalParams::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(hbar)) throw Error(Errc::BadParams, "hbar must be positive and finite");
    if (!positive(m)) throw Error(Errc::BadParams, "m must be positive and finite");
    if (!positive(c)) throw Error(Errc::BadParams, "c must be positive and finite");
    if (!std::isfinite(g)) throw Error(Errc::BadParams, "g must be finite");
}

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n)
{
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
        throw Error(Errc::BadGrid, "x_max must exceed x_min");
    if (n < 8 || !std::has_single_bit(n))
        throw Error(Errc::BadGrid, "n must be a power of two >= 8, got " + std::to_string(n));
}

double Grid::dk() const noexcept { return 2.0 * std::numbers::pi / length(); }

double Grid::k_max() const noexcept { return static_cast<double>(n_ / 2) * dk(); }

double Grid::k_sorted(std::size_t s) const noexcept
{
    return (static_cast<double>(s) - static_cast<double>(n_ / 2)) * dk();
}

double Grid::k_fft(std::size_t i) const noexcept
{
    const auto j = i < n_ / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(n_);
    return j * dk();
}

std::size_t Grid::margin_nodes() const noexcept
{
    return (n_ * 5 + 99) / 100;
}

std::vector<double> Grid::positions() const
{
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
}

std::vector<double> Grid::wave_numbers_fft() const
{
    std::vector<double> ks(n_);
    for (std::size_t i = 0; i < n_; ++i) ks[i] = k_fft(i);
    return ks;
}

// ---------------------------------------------------------------------------
// WavePacket

WavePacket::WavePacket(Grid grid, std::vector<cplx> amp) : grid_(grid), amp_(std::move(amp))
{
    if (amp_.size() != grid_.size())
        throw Error(Errc::GridMismatch, "amplitude count " + std::to_string(amp_.size()) +
                                            " does not match grid size " + std::to_string(grid_.size()));
}

WavePacket WavePacket::normalized(Grid grid, std::vector<cplx> amp)
{
    const double n2 = kernels::sum_abs2(amp) * grid.dx();
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw Error(Errc::BadInput, "cannot normalise a zero state");
    kernels::scale(amp, 1.0 / std::sqrt(n2));
    return WavePacket(grid, std::move(amp));
}

bool respects_margin(const WavePacket& psi) noexcept
{
    const std::size_t n = psi.size();
    const std::size_t band = psi.grid().margin_nodes();
    for (std::size_t i = 0; i < band; ++i) {
        if (std::abs(psi[i]) >= kMarginTolerance || std::abs(psi[n - 1 - i]) >= kMarginTolerance)
            return false;
    }
    return true;
}

void check_margin(const WavePacket& psi, std::string_view what)
{
    if (!respects_margin(psi))
        throw Error(Errc::GridOverflow,
                    std::string(what) + ": amplitude reaches the outer 5% boundary band of the grid");
}

// ---------------------------------------------------------------------------
// Observables

WavePacket make_gaussian(const Grid& grid, double x0, double p0, double sigma0, const PhysicalParams& params)
{
    params.validate();
    if (!(sigma0 > 0.0)) throw Error(Errc::BadSigma, "sigma0 must be positive");
    if (sigma0 < 2.0 * grid.dx())
        throw Error(Errc::BadSigma, "sigma0 must be at least two grid spacings (dx = " +
                                        std::to_string(grid.dx()) + ")");
    if (x0 - 6.0 * sigma0 < grid.x_min() || x0 + 6.0 * sigma0 > grid.x_max())
        throw Error(Errc::GridOverflow, "6 sigma support of the Gaussian leaves the grid");
    if (std::abs(p0) >= 0.5 * params.hbar * grid.k_max())
        throw Error(Errc::GridOverflow, "|p0| must stay below half the largest lattice momentum");

    std::vector<cplx> amp(grid.size());
    const double inv4s2 = 1.0 / (4.0 * sigma0 * sigma0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        const double d = x - x0;
        amp[i] = std::polar(std::exp(-d * d * inv4s2), p0 * x / params.hbar);
    }
    auto psi = WavePacket::normalized(grid, std::move(amp));
    check_margin(psi, "make_gaussian");
    return psi;
}

namespace {

struct Spread {
    double norm;
    double mean;
    double sigma;
};

Spread spread_of(std::span<const cplx> amp, std::span<const double> coord, double weight)
{
    const auto first = kernels::moment_sums(amp, coord, 0.0);
    const double mean = first.s1 / first.s0;
    const auto centred = kernels::moment_sums(amp, coord, mean);
    const double var = std::max(0.0, centred.s2 / centred.s0 - std::pow(centred.s1 / centred.s0, 2));
    return {first.s0 * weight, mean, std::sqrt(var)};
}

} // namespace

Moments moments(const WavePacket& psi, const PhysicalParams& params)
{
    const Grid& grid = psi.grid();
    const auto xs = grid.positions();
    const auto sx = spread_of(psi.amp(), xs, grid.dx());

    const auto phi = to_momentum(psi);
    std::vector<double> ps(grid.size());
    for (std::size_t s = 0; s < ps.size(); ++s) ps[s] = params.hbar * grid.k_sorted(s);
    const auto sp = spread_of(phi.amp, ps, grid.dk());

    return Moments{sx.norm, sx.mean, sp.mean, sx.sigma, sp.sigma};
}

cplx overlap(const WavePacket& a, const WavePacket& b)
{
    if (!(a.grid() == b.grid())) throw Error(Errc::GridMismatch, "overlap of packets on different grids");
    return kernels::dot(a.amp(), b.amp()) * a.grid().dx();
}

double l2_distance(const WavePacket& a, const WavePacket& b)
{
    if (!(a.grid() == b.grid())) throw Error(Errc::GridMismatch, "distance between packets on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s * a.grid().dx());
}

double norm(const WavePacket& psi)
{
    return kernels::sum_abs2(psi.amp()) * psi.grid().dx();
}

// ---------------------------------------------------------------------------
// Fourier pair.  phi(k) = (2 pi)^{-1/2} int psi(x) e^{-ikx} dx on the lattice.

MomentumPacket to_momentum(const WavePacket& psi)
{
    const Grid& grid = psi.grid();
    const std::size_t n = grid.size();
    std::vector<cplx> work(psi.amp().begin(), psi.amp().end());
    detail::fft_forward(work);

    const double pref = grid.dx() / std::sqrt(2.0 * std::numbers::pi);
    std::vector<cplx> out(n);
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t i = (s + n / 2) % n;
        const double k = grid.k_sorted(s);
        out[s] = pref * std::polar(1.0, -k * grid.x_min()) * work[i];
    }
    return MomentumPacket{grid, std::move(out)};
}

WavePacket to_position(const MomentumPacket& phi)
{
    const Grid& grid = phi.grid;
    const std::size_t n = grid.size();
    if (phi.amp.size() != n) throw Error(Errc::GridMismatch, "momentum amplitudes do not match grid size");

    const double pref = std::sqrt(2.0 * std::numbers::pi) / grid.dx();
    std::vector<cplx> work(n);
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t i = (s + n / 2) % n;
        const double k = grid.k_sorted(s);
        work[i] = pref * std::polar(1.0, k * grid.x_min()) * phi.amp[s];
    }
    detail::fft_inverse(work);
    return WavePacket(grid, std::move(work));
}

// ---------------------------------------------------------------------------
// Trajectory

Trajectory Trajectory::initial_value(double x0, double v0, double t0, double g)
{
    Trajectory t;
    t.form_ = Form::InitialValue;
    t.x0_ = x0;
    t.v0_ = v0;
    t.t0_ = t0;
    t.g_ = g;
    return t;
}

Trajectory Trajectory::boundary_value(double x0, double t0, double x1, double t1, double g)
{
    if (!(t1 > t0)) throw Error(Errc::DegenerateInterval, "boundary-value trajectory needs t1 > t0");
    Trajectory t;
    t.form_ = Form::BoundaryValue;
    t.x0_ = x0;
    t.t0_ = t0;
    t.x1_ = x1;
    t.t1_ = t1;
    t.g_ = g;
    return t;
}

double Trajectory::v0() const noexcept
{
    if (form_ == Form::InitialValue) return v0_;
    const double span = t1_ - t0_;
    return (x1_ - x0_) / span + 0.5 * g_ * span;
}

double Trajectory::position(double t) const noexcept
{
    if (form_ == Form::InitialValue) {
        const double tau = t - t0_;
        return x0_ + v0_ * tau - 0.5 * g_ * tau * tau;
    }
    // Linear interpolation between the endpoints plus the parabolic sag that
    // vanishes at both ends; exact at t0 and t1 in floating point.
    const double span = t1_ - t0_;
    return x0_ * ((t1_ - t) / span) + x1_ * ((t - t0_) / span) + 0.5 * g_ * (t - t0_) * (t1_ - t);
}

double Trajectory::velocity(double t) const noexcept
{
    if (form_ == Form::InitialValue) return v0_ - g_ * (t - t0_);
    const double span = t1_ - t0_;
    return (x1_ - x0_) / span + 0.5 * g_ * (t1_ + t0_ - 2.0 * t);
}

} // namespace qfall

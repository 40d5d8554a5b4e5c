#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qfall/error.hpp"

namespace qfall {

using cplx = std::complex<double>;

/// Physical constants fixing the unit system. Natural units by default.
/// `g` is the acceleration in the potential V = +m g x, so a positive g
/// pulls packets toward -x. `c` is only consulted by the relativistic module.
struct PhysicalParams {
    double hbar = 1.0;
    double m = 1.0;
    double g = 0.0;
    double c = 10.0;

    /// Throws Errc::BadParams unless hbar, m, c are positive and finite.
    void validate() const;

    PhysicalParams with_g(double new_g) const {
        PhysicalParams p = *this;
        p.g = new_g;
        return p;
    }
};

/// Uniform periodic lattice on [x_min, x_max) with n nodes, n a power of two
/// and at least 8. The paired wave-number lattice is k_j = j * 2 pi / L for
/// j = -n/2 .. n/2-1.
class Grid {
public:
    Grid(double x_min, double x_max, std::size_t n);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t size() const noexcept { return n_; }
    double length() const noexcept { return x_max_ - x_min_; }
    double dx() const noexcept { return length() / static_cast<double>(n_); }
    double dk() const noexcept;
    double k_max() const noexcept;  // magnitude of the Nyquist wave number

    double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx(); }

    /// Wave number of momentum-representation slot s (s = 0 is j = -n/2).
    double k_sorted(std::size_t s) const noexcept;
    /// Wave number of FFT output slot i (standard DFT ordering).
    double k_fft(std::size_t i) const noexcept;

    /// Nodes in each outer boundary band (5% of n, at least one).
    std::size_t margin_nodes() const noexcept;

    std::vector<double> positions() const;
    std::vector<double> wave_numbers_fft() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
};

/// Position-space amplitudes on a Grid. Valid states satisfy
/// sum |amp|^2 dx = 1; the constructor only checks sizes, use `normalized`
/// to build a valid state from arbitrary amplitudes.
class WavePacket {
public:
    WavePacket(Grid grid, std::vector<cplx> amp);

    static WavePacket normalized(Grid grid, std::vector<cplx> amp);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const cplx> amp() const noexcept { return amp_; }
    const cplx& operator[](std::size_t i) const noexcept { return amp_[i]; }
    std::size_t size() const noexcept { return amp_.size(); }

    /// Moves the amplitude buffer out; used by operations that transform in place.
    std::vector<cplx> release() && { return std::move(amp_); }

private:
    Grid grid_;
    std::vector<cplx> amp_;
};

/// Momentum representation: slot s holds the continuum-normalised Fourier
/// amplitude at k = grid.k_sorted(s), with sum |amp|^2 dk = sum |psi|^2 dx.
struct MomentumPacket {
    Grid grid;
    std::vector<cplx> amp;
};

struct Moments {
    double norm = 0.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
    double sigma_x = 0.0;
    double sigma_p = 0.0;
};

/// Classical path with x'' = -g (potential +m g x), in either initial-value
/// or two-endpoint form. The boundary-value form evaluates through an
/// interpolating expression that reproduces both endpoints exactly.
class Trajectory {
public:
    enum class Form { InitialValue, BoundaryValue };

    static Trajectory initial_value(double x0, double v0, double t0, double g);
    /// Throws Errc::DegenerateInterval unless t1 > t0.
    static Trajectory boundary_value(double x0, double t0, double x1, double t1, double g);

    double position(double t) const noexcept;
    double velocity(double t) const noexcept;

    Form form() const noexcept { return form_; }
    double g() const noexcept { return g_; }
    double t0() const noexcept { return t0_; }
    double x0() const noexcept { return x0_; }
    double v0() const noexcept;
    double t1() const noexcept { return t1_; }
    double x1() const noexcept { return x1_; }

private:
    Trajectory() = default;

    Form form_ = Form::InitialValue;
    double g_ = 0.0;
    double t0_ = 0.0;
    double x0_ = 0.0;
    double v0_ = 0.0;
    double t1_ = 0.0;
    double x1_ = 0.0;
};

/// Largest |amp| allowed on the outer margin bands of a valid state.
inline constexpr double kMarginTolerance = 1e-10;

/// Throws Errc::GridOverflow naming `what` if any node in either outer 5%
/// band exceeds kMarginTolerance.
void check_margin(const WavePacket& psi, std::string_view what);
bool respects_margin(const WavePacket& psi) noexcept;

/// Normalised minimum-uncertainty Gaussian
///   psi(x) ~ exp(-(x - x0)^2 / (4 sigma0^2) + i p0 x / hbar).
WavePacket make_gaussian(const Grid& grid, double x0, double p0, double sigma0,
                         const PhysicalParams& params);

Moments moments(const WavePacket& psi, const PhysicalParams& params);

/// sum conj(a_i) b_i dx. Throws Errc::GridMismatch for different grids.
cplx overlap(const WavePacket& a, const WavePacket& b);

/// L2 distance sqrt(sum |a - b|^2 dx).
double l2_distance(const WavePacket& a, const WavePacket& b);

double norm(const WavePacket& psi);

MomentumPacket to_momentum(const WavePacket& psi);
WavePacket to_position(const MomentumPacket& phi);

} // namespace qfall

#include "qfall/propagator.hpp"

#include <cmath>
#include <string>

#include "fft.hpp"
#include "qfall/kernels.hpp"

namespace qfall {

AccelSchedule::AccelSchedule(std::vector<Segment> segments) : segments_(std::move(segments))
{
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        if (!std::isfinite(s.g)) throw Error(Errc::BadSchedule, "segment g must be finite", i);
        if (!(s.dt > 0.0) || !std::isfinite(s.dt))
            throw Error(Errc::BadSchedule, "segment durations must be positive", i);
    }
}

double AccelSchedule::total_duration() const noexcept
{
    double total = 0.0;
    for (const auto& s : segments_) total += s.dt;
    return total;
}

AccelSchedule AccelSchedule::scaled(double factor) const
{
    std::vector<Segment> out = segments_;
    for (auto& s : out) s.dt *= factor;
    return AccelSchedule(std::move(out));
}

namespace {

// Multiplies the momentum-space representation by exp(i theta(k)).
template <typename PhaseOfK>
std::vector<cplx> apply_k_phase(std::span<const cplx> amp, const Grid& grid, PhaseOfK&& theta_of_k)
{
    std::vector<cplx> work(amp.begin(), amp.end());
    std::vector<double> theta(grid.size());
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = theta_of_k(grid.k_fft(i));
    std::vector<cplx> factor(grid.size());
    kernels::phase_factors(theta, factor);

    detail::fft_forward(work);
    kernels::multiply(work, factor);
    detail::fft_inverse(work);
    return work;
}

// Multiplies position amplitudes by exp(i (a x + b)).
std::vector<cplx> apply_x_phase(std::span<const cplx> amp, const Grid& grid, double a, double b)
{
    std::vector<double> theta(grid.size());
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = a * grid.x(i) + b;
    std::vector<cplx> factor(grid.size());
    kernels::phase_factors(theta, factor);
    std::vector<cplx> work(amp.begin(), amp.end());
    kernels::multiply(work, factor);
    return work;
}

void require_non_negative(double t, const char* who)
{
    if (!(t >= 0.0)) throw Error(Errc::NegativeTime, std::string(who) + " needs t >= 0");
}

} // namespace

WavePacket shift_packet(const WavePacket& psi, double a)
{
    if (a == 0.0) return psi;
    auto amp = apply_k_phase(psi.amp(), psi.grid(), [a](double k) { return k * a; });
    WavePacket out(psi.grid(), std::move(amp));
    check_margin(out, "shift_packet");
    return out;
}

WavePacket apply_linear_phase(const WavePacket& psi, double slope, const PhysicalParams& params)
{
    if (slope == 0.0) return psi;
    return WavePacket(psi.grid(), apply_x_phase(psi.amp(), psi.grid(), -slope / params.hbar, 0.0));
}

WavePacket apply_global_phase(const WavePacket& psi, double theta)
{
    std::vector<cplx> amp(psi.amp().begin(), psi.amp().end());
    kernels::scale(amp, std::polar(1.0, theta));
    return WavePacket(psi.grid(), std::move(amp));
}

WavePacket evolve_free(const WavePacket& psi, const PhysicalParams& params, double t)
{
    require_non_negative(t, "evolve_free");
    if (t == 0.0) return psi;
    const double c = params.hbar * t / (2.0 * params.m);
    auto amp = apply_k_phase(psi.amp(), psi.grid(), [c](double k) { return -c * k * k; });
    WavePacket out(psi.grid(), std::move(amp));
    check_margin(out, "evolve_free");
    return out;
}

WavePacket evolve_exact(const WavePacket& psi, const PhysicalParams& params, double t)
{
    require_non_negative(t, "evolve_exact");
    if (t == 0.0) return psi;

    const double g = params.g;
    const double hbar = params.hbar;
    const double m = params.m;

    // The two momentum-diagonal factors commute and are fused into one pass:
    // e^{+i g t^2 p / 2 hbar} = e^{i k fall} shifts the argument to x + g t^2 / 2.
    const double fall = 0.5 * g * t * t;
    const double spread = hbar * t / (2.0 * m);
    auto amp = apply_k_phase(psi.amp(), psi.grid(), [&](double k) { return k * fall - spread * k * k; });

    // Position-diagonal kick e^{-i m g t x / hbar} and the global e^{-i m g^2 t^3 / 6 hbar}.
    const double kick = -m * g * t / hbar;
    const double global = -m * g * g * t * t * t / (6.0 * hbar);
    amp = apply_x_phase(amp, psi.grid(), kick, global);

    WavePacket out(psi.grid(), std::move(amp));
    check_margin(out, "evolve_exact");
    return out;
}

WavePacket evolve_piecewise(const WavePacket& psi, const PhysicalParams& params, const AccelSchedule& schedule)
{
    WavePacket state = psi;
    const auto& segs = schedule.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        try {
            state = evolve_exact(state, params.with_g(segs[i].g), segs[i].dt);
        } catch (const Error& e) {
            if (e.code() != Errc::GridOverflow) throw;
            throw Error(Errc::GridOverflow, "schedule segment " + std::to_string(i) + " overflows the grid", i);
        }
    }
    return state;
}

} // namespace qfall

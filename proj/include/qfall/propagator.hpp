#pragma once

#include <cstddef>
#include <vector>

#include "qfall/core.hpp"

namespace qfall {

/// Piecewise-constant acceleration: segment i applies g_i for duration dt_i.
class AccelSchedule {
public:
    struct Segment {
        double g;
        double dt;
    };

    AccelSchedule() = default;
    /// Throws Errc::BadSchedule if any duration is not positive.
    explicit AccelSchedule(std::vector<Segment> segments);

    const std::vector<Segment>& segments() const noexcept { return segments_; }
    bool empty() const noexcept { return segments_.empty(); }
    double total_duration() const noexcept;

    /// Same accelerations with every duration multiplied by `factor` > 0.
    AccelSchedule scaled(double factor) const;

private:
    std::vector<Segment> segments_;
};

/// psi(x) -> psi(x + a), applied as the momentum-space phase e^{i k a}.
/// Exact on the periodic lattice; throws Errc::GridOverflow if the result
/// reaches the boundary bands.
WavePacket shift_packet(const WavePacket& psi, double a);

/// amp_i -> amp_i * exp(-i slope x_i / hbar). Shifts mean_p by -slope.
WavePacket apply_linear_phase(const WavePacket& psi, double slope, const PhysicalParams& params);

/// amp_i -> amp_i * exp(i theta).
WavePacket apply_global_phase(const WavePacket& psi, double theta);

/// Exact free evolution exp(-i t p^2 / (2 m hbar)). Throws NegativeTime, GridOverflow.
WavePacket evolve_free(const WavePacket& psi, const PhysicalParams& params, double t);

/// Exact evolution under H = p^2/2m + m g x through the factored propagator
///
///   U(t) = e^{-i m g^2 t^3 / 6 hbar} e^{-i m g t x / hbar} e^{-i t p^2 / 2 m hbar} e^{+i g t^2 p / 2 hbar}
///
/// All higher nested commutators of x and p^2 vanish, so the factorisation
/// carries no truncation error. Factors act right to left: fall shift, free
/// spreading, momentum kick, global phase.
WavePacket evolve_exact(const WavePacket& psi, const PhysicalParams& params, double t);

/// Sequential evolve_exact, one call per schedule segment with that
/// segment's g. GridOverflow carries the offending segment index.
WavePacket evolve_piecewise(const WavePacket& psi, const PhysicalParams& params, const AccelSchedule& schedule);

} // namespace qfall

#include "qfall/split_step.hpp"

#include <cmath>
#include <string>

#include "fft.hpp"
#include "qfall/kernels.hpp"
#include "qfall/propagator.hpp"

namespace qfall {

SplitStepResult evolve_split_step(const WavePacket& psi, const PhysicalParams& params, double t,
                                  const SolverConfig& cfg)
{
    if (!(t >= 0.0)) throw Error(Errc::NegativeTime, "evolve_split_step needs t >= 0");
    if (cfg.n_steps < 1) throw Error(Errc::BadInput, "n_steps must be at least 1");

    const Grid& grid = psi.grid();
    const std::size_t n = grid.size();
    const double dt = t / static_cast<double>(cfg.n_steps);
    const double hbar = params.hbar;

    // e^{-i V dt / 2 hbar} and its square, V = m g x.
    std::vector<double> theta(n);
    for (std::size_t i = 0; i < n; ++i) theta[i] = -params.m * params.g * grid.x(i) * dt / (2.0 * hbar);
    std::vector<cplx> half_v(n);
    kernels::phase_factors(theta, half_v);
    for (auto& th : theta) th *= 2.0;
    std::vector<cplx> full_v(n);
    kernels::phase_factors(theta, full_v);

    // e^{-i T dt / hbar}, T = hbar^2 k^2 / 2m, in FFT ordering.
    for (std::size_t i = 0; i < n; ++i) {
        const double k = grid.k_fft(i);
        theta[i] = -hbar * k * k * dt / (2.0 * params.m);
    }
    std::vector<cplx> kinetic(n);
    kernels::phase_factors(theta, kinetic);

    const bool potential = params.g != 0.0;
    std::vector<cplx> work(psi.amp().begin(), psi.amp().end());
    SplitStepResult result{psi, {}};

    if (potential) kernels::multiply(work, half_v);
    for (std::size_t step = 1; step <= cfg.n_steps; ++step) {
        detail::fft_forward(work);
        kernels::multiply(work, kinetic);
        detail::fft_inverse(work);

        const bool last = step == cfg.n_steps;
        const bool record = cfg.record_every != 0 && step % cfg.record_every == 0;
        if (!potential) {
            if (record) {
                WavePacket snap(grid, work);
                check_margin(snap, "evolve_split_step snapshot at step " + std::to_string(step));
                result.snapshots.push_back({step, dt * static_cast<double>(step), std::move(snap)});
            }
            continue;
        }
        if (!last && !record) {
            kernels::multiply(work, full_v);
            continue;
        }
        // Close the step to obtain the state at an integer step count.
        kernels::multiply(work, half_v);
        if (record) {
            WavePacket snap(grid, work);
            check_margin(snap, "evolve_split_step snapshot at step " + std::to_string(step));
            result.snapshots.push_back({step, dt * static_cast<double>(step), std::move(snap)});
        }
        if (!last) kernels::multiply(work, half_v);
    }

    result.state = WavePacket(grid, std::move(work));
    check_margin(result.state, "evolve_split_step");
    return result;
}

ConvergenceReport convergence_report(const WavePacket& psi, const PhysicalParams& params, double t,
                                     const std::vector<std::size_t>& step_counts)
{
    for (std::size_t i = 0; i < step_counts.size(); ++i) {
        if (step_counts[i] < 1) throw Error(Errc::BadInput, "step counts must be >= 1");
        if (i > 0 && step_counts[i] <= step_counts[i - 1])
            throw Error(Errc::BadInput, "step counts must be strictly increasing");
    }

    const WavePacket reference = evolve_exact(psi, params, t);
    ConvergenceReport report;
    for (const auto steps : step_counts) {
        const auto numeric = evolve_split_step(psi, params, t, SolverConfig{steps, 0});
        report.rows.push_back({steps, l2_distance(numeric.state, reference), std::nullopt});
    }
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
        auto& row = report.rows[i];
        const auto& next = report.rows[i + 1];
        if (next.l2_error > row.l2_error && next.l2_error >= kRoundoffFloor) report.monotone = false;
        if (row.l2_error < kRoundoffFloor || next.l2_error < kRoundoffFloor) continue;
        row.observed_order = std::log(row.l2_error / next.l2_error) /
                             std::log(static_cast<double>(next.n_steps) / static_cast<double>(row.n_steps));
    }
    return report;
}

} // namespace qfall

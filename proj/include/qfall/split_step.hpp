#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qfall/core.hpp"

namespace qfall {

struct SolverConfig {
    std::size_t n_steps = 1024;
    /// Record the state every this many steps; 0 keeps only the final state.
    std::size_t record_every = 0;
};

struct Snapshot {
    std::size_t step;
    double t;
    WavePacket state;
};

struct SplitStepResult {
    WavePacket state;
    std::vector<Snapshot> snapshots;
};

/// Second-order Strang integration of i hbar dpsi/dt = (p^2/2m + m g x) psi:
/// each step is e^{-iV dt/2hbar} e^{-iT dt/hbar} e^{-iV dt/2hbar}, with the
/// potential half-steps of neighbouring steps fused. Every recorded snapshot
/// and the final state are margin-checked.
SplitStepResult evolve_split_step(const WavePacket& psi, const PhysicalParams& params, double t,
                                  const SolverConfig& cfg);

struct ConvergenceRow {
    std::size_t n_steps;
    double l2_error;
    /// log(err_i / err_{i+1}) / log(n_{i+1} / n_i) against the next row, which
    /// is log2(err(n) / err(2n)) for doublings. Empty on the last row or when
    /// either error is below the round-off floor.
    std::optional<double> observed_order;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool monotone = true;  // errors nonincreasing down the table
};

/// Errors below this are treated as round-off when fitting orders.
inline constexpr double kRoundoffFloor = 1e-12;

/// Split-step error against evolve_exact for each step count. Throws
/// Errc::BadInput unless step_counts is strictly increasing with entries >= 1.
ConvergenceReport convergence_report(const WavePacket& psi, const PhysicalParams& params, double t,
                                     const std::vector<std::size_t>& step_counts);

} // namespace qfall

#pragma once

// Two-branch matter-wave interferometer. A spin prepared in (|0> + |1>)/sqrt2
// controls the evolution
//
//   U = |0><0| (x) U_A + |1><1| (x) U_B,
//
// where branch A falls under g and branch B is the comparison evolution. The
// spin X and Y expectations read out Re and Im of <B|A>.

#include <optional>
#include <variant>
#include <vector>

#include "qfall/core.hpp"
#include "qfall/propagator.hpp"

namespace qfall::interferometry {

/// Branch A: U_g. Branch B: free evolution followed by the translation that
/// puts its centre on branch A's, so the branches overlap at readout.
struct Colocated {};

/// Each branch follows its own acceleration schedule.
struct Scheduled {
    AccelSchedule branch_a;
    AccelSchedule branch_b;
};

using Scheme = std::variant<Colocated, Scheduled>;

enum class Backend { Analytic, SplitStep };

struct ProtocolOptions {
    /// Propagator used for the accelerated branch under the colocated scheme.
    Backend backend = Backend::Analytic;
    std::size_t n_steps = 2048;
    /// The initial state is a Gaussian, so the visibility can be predicted.
    bool gaussian_input = true;
};

struct InterferenceRecord {
    double t = 0.0;
    cplx overlap{1.0, 0.0};  // <B|A>
    double visibility = 1.0;
    double phase = 0.0;             // principal value in (-pi, pi]
    double phase_unwrapped = 0.0;   // continuous companion across a scan
    double fringe_x = 1.0;          // <sigma_X>
    double fringe_y = 0.0;          // <sigma_Y>
    double predicted_phase = 0.0;
    std::optional<double> predicted_visibility;
};

/// (-m g xbar t - m g^2 t^3 / 6) / hbar.
double predicted_phase(double xbar, double t, const PhysicalParams& params);

/// exp(-(m g t sigma_t / hbar)^2 / 2). Throws Errc::BadSigma for sigma_t <= 0.
double gaussian_visibility(double sigma_t, double t, const PhysicalParams& params);

/// Record for already-evolved branch states. The predicted phase uses the
/// mean position of branch B; the visibility prediction uses its spread
/// and is only filled in when `predict_visibility` is set.
InterferenceRecord record_from_branches(const WavePacket& branch_a, const WavePacket& branch_b, double t,
                                        const PhysicalParams& params, bool predict_visibility);

/// One interferometer run of duration t. For the scheduled scheme both
/// schedules must last exactly t (Errc::SchemeMismatch otherwise).
InterferenceRecord run_protocol(const WavePacket& psi0, const PhysicalParams& params, double t,
                                const Scheme& scheme, const ProtocolOptions& options = {});

/// Records for increasing t_values with the phase unwrapped by nearest-branch
/// continuation. Scheduled schemes are stretched to each t. Throws
/// Errc::PhaseAliasing when the predicted or measured phase moves by pi or
/// more between neighbouring samples. Rows are computed in parallel; the
/// result order always matches t_values.
std::vector<InterferenceRecord> fringe_scan(const WavePacket& psi0, const PhysicalParams& params,
                                            const std::vector<double>& t_values, const Scheme& scheme,
                                            const ProtocolOptions& options = {});

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

} // namespace qfall::interferometry

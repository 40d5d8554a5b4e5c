#include "qfall/interferometry.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "qfall/split_step.hpp"

namespace qfall::interferometry {

double wrap_phase(double angle)
{
    constexpr double pi = std::numbers::pi;
    double w = std::remainder(angle, 2.0 * pi);
    if (w <= -pi) w += 2.0 * pi;
    return w;
}

double predicted_phase(double xbar, double t, const PhysicalParams& params)
{
    const double m = params.m;
    const double g = params.g;
    return (-m * g * xbar * t - m * g * g * t * t * t / 6.0) / params.hbar;
}

double gaussian_visibility(double sigma_t, double t, const PhysicalParams& params)
{
    if (!(sigma_t > 0.0)) throw Error(Errc::BadSigma, "gaussian_visibility needs sigma_t > 0");
    const double q = params.m * params.g * t * sigma_t / params.hbar;
    return std::exp(-0.5 * q * q);
}

InterferenceRecord record_from_branches(const WavePacket& branch_a, const WavePacket& branch_b, double t,
                                        const PhysicalParams& params, bool predict_visibility)
{
    InterferenceRecord r;
    r.t = t;
    r.overlap = overlap(branch_b, branch_a);
    r.visibility = std::abs(r.overlap);
    r.phase = std::arg(r.overlap);
    r.phase_unwrapped = r.phase;
    r.fringe_x = r.overlap.real();
    r.fringe_y = r.overlap.imag();

    const auto mb = moments(branch_b, params);
    r.predicted_phase = predicted_phase(mb.mean_x, t, params);
    if (predict_visibility) r.predicted_visibility = gaussian_visibility(mb.sigma_x, t, params);
    return r;
}

namespace {

constexpr double kDurationTolerance = 1e-12;

bool same_duration(double a, double b)
{
    return std::abs(a - b) <= kDurationTolerance * std::max(1.0, std::abs(b));
}

WavePacket accelerated_branch(const WavePacket& psi0, const PhysicalParams& params, double t,
                              const ProtocolOptions& options)
{
    if (options.backend == Backend::SplitStep)
        return evolve_split_step(psi0, params, t, SolverConfig{options.n_steps, 0}).state;
    return evolve_exact(psi0, params, t);
}

struct Visitor {
    const WavePacket& psi0;
    const PhysicalParams& params;
    double t;
    const ProtocolOptions& options;

    InterferenceRecord operator()(const Colocated&) const
    {
        const WavePacket a = accelerated_branch(psi0, params, t, options);
        const WavePacket b = shift_packet(evolve_free(psi0, params, t), 0.5 * params.g * t * t);
        return record_from_branches(a, b, t, params, options.gaussian_input);
    }

    InterferenceRecord operator()(const Scheduled& s) const
    {
        const double ta = s.branch_a.total_duration();
        const double tb = s.branch_b.total_duration();
        if (!same_duration(ta, tb))
            throw Error(Errc::SchemeMismatch, "branch schedules last " + std::to_string(ta) + " and " +
                                                  std::to_string(tb));
        if (!same_duration(ta, t))
            throw Error(Errc::SchemeMismatch, "schedules last " + std::to_string(ta) + " but the run lasts " +
                                                  std::to_string(t));
        const WavePacket a = evolve_piecewise(psi0, params, s.branch_a);
        const WavePacket b = evolve_piecewise(psi0, params, s.branch_b);
        return record_from_branches(a, b, t, params, false);
    }
};

} // namespace

InterferenceRecord run_protocol(const WavePacket& psi0, const PhysicalParams& params, double t,
                                const Scheme& scheme, const ProtocolOptions& options)
{
    params.validate();
    if (!(t >= 0.0)) throw Error(Errc::NegativeTime, "run_protocol needs t >= 0");
    check_margin(psi0, "run_protocol initial state");
    if (t == 0.0) {
        const bool colocated = std::holds_alternative<Colocated>(scheme);
        return record_from_branches(psi0, psi0, 0.0, params, colocated && options.gaussian_input);
    }
    return std::visit(Visitor{psi0, params, t, options}, scheme);
}

std::vector<InterferenceRecord> fringe_scan(const WavePacket& psi0, const PhysicalParams& params,
                                            const std::vector<double>& t_values, const Scheme& scheme,
                                            const ProtocolOptions& options)
{
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        if (!(t_values[i] >= 0.0)) throw Error(Errc::NegativeTime, "scan times must be >= 0");
        if (i > 0 && !(t_values[i] > t_values[i - 1]))
            throw Error(Errc::BadInput, "scan times must be strictly increasing");
    }

    // Scheduled scans stretch the schedule shapes to each sample time.
    auto scheme_at = [&](double t) -> Scheme {
        const auto* s = std::get_if<Scheduled>(&scheme);
        if (s == nullptr || t == 0.0) return scheme;
        const double ta = s->branch_a.total_duration();
        const double tb = s->branch_b.total_duration();
        if (!(ta > 0.0) || !(tb > 0.0)) throw Error(Errc::SchemeMismatch, "scan schedules must not be empty");
        return Scheduled{s->branch_a.scaled(t / ta), s->branch_b.scaled(t / tb)};
    };

    const auto n = static_cast<std::ptrdiff_t>(t_values.size());
    std::vector<InterferenceRecord> rows(t_values.size());
    std::vector<std::exception_ptr> errors(t_values.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const double t = t_values[static_cast<std::size_t>(i)];
            rows[static_cast<std::size_t>(i)] = run_protocol(psi0, params, t, scheme_at(t), options);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    constexpr double pi = std::numbers::pi;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double predicted_step = rows[i].predicted_phase - rows[i - 1].predicted_phase;
        const double measured_step = wrap_phase(rows[i].phase - rows[i - 1].phase);
        if (std::abs(predicted_step) >= pi || std::abs(measured_step) >= pi * (1.0 - 1e-9))
            throw Error(Errc::PhaseAliasing,
                        "phase moves by pi or more between t = " + std::to_string(rows[i - 1].t) + " and t = " +
                            std::to_string(rows[i].t) + "; use a denser t list");
        rows[i].phase_unwrapped = rows[i - 1].phase_unwrapped + measured_step;
    }
    return rows;
}

} // namespace qfall::interferometry

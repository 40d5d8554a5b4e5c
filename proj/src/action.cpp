#include "qfall/action.hpp"

#include <cmath>

namespace qfall::action {

Trajectory bvp_trajectory(double x0, double t0, double x1, double t1, double g)
{
    return Trajectory::boundary_value(x0, t0, x1, t1, g);
}

ActionValue classical_action(double x0, double x1, double t0, double t1, const PhysicalParams& params)
{
    if (!(t1 > t0)) throw Error(Errc::DegenerateInterval, "classical_action needs t1 > t0");
    const double m = params.m;
    const double g = params.g;
    const double T = t1 - t0;

    ActionValue s;
    s.value = 0.5 * m * ((x0 - x1) * (x0 - x1) / T - g * (x0 + x1) * T - g * g * T * T * T / 12.0);

    // Diagnostics: integrals of the polynomial path x(tau) = x0 + v tau - g tau^2 / 2.
    const double v = (x1 - x0) / T + 0.5 * g * T;
    s.kinetic = 0.5 * m * (v * v * T - v * g * T * T + g * g * T * T * T / 3.0);
    s.potential = m * g * (x0 * T + 0.5 * v * T * T - g * T * T * T / 6.0);
    return s;
}

ActionValue shifted_free_action(double x0, double xt, double t, const PhysicalParams& params)
{
    if (!(t > 0.0)) throw Error(Errc::DegenerateInterval, "shifted_free_action needs t > 0");
    const double d = x0 - xt - 0.5 * params.g * t * t;
    ActionValue s;
    s.value = params.m * d * d / (2.0 * t);
    s.kinetic = s.value;
    return s;
}

double delta_action(double xt, double t, const PhysicalParams& params)
{
    const double m = params.m;
    const double g = params.g;
    return -m * g * xt * t - m * g * g * t * t * t / 6.0;
}

PhaseSpacePoint ehrenfest_mean(double x0, double p0, double t, const PhysicalParams& params)
{
    return {x0 + p0 * t / params.m - 0.5 * params.g * t * t, p0 - params.m * params.g * t};
}

SpreadBound spread_bound(double sigma0, double t, const PhysicalParams& params)
{
    if (!(sigma0 > 0.0)) throw Error(Errc::BadSigma, "spread_bound needs sigma0 > 0");
    if (!(t >= 0.0)) throw Error(Errc::NegativeTime, "spread_bound needs t >= 0");
    const double r = params.hbar * t / (2.0 * params.m * sigma0 * sigma0);
    return {params.hbar * t / (params.m * sigma0), sigma0 * std::sqrt(1.0 + r * r)};
}

} // namespace qfall::action

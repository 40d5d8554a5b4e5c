#pragma once

// Closed-form classical mechanics of the uniformly accelerated particle:
// two-time trajectories, the classical action and its free-fall comparison,
// Ehrenfest means and the spreading law. Convention: V = +m g x.

#include <utility>

#include "qfall/core.hpp"

namespace qfall::action {

/// value = kinetic - potential, where kinetic = int m xdot^2 / 2 dt and
/// potential = int V dt along the path.
struct ActionValue {
    double value = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
};

/// Unique path with x'' = -g through (t0, x0) and (t1, x1).
/// Throws Errc::DegenerateInterval unless t1 > t0.
Trajectory bvp_trajectory(double x0, double t0, double x1, double t1, double g);

/// S_g = (m/2) [ (x0 - x1)^2 / T - g (x0 + x1) T - g^2 T^3 / 12 ],  T = t1 - t0.
ActionValue classical_action(double x0, double x1, double t0, double t1, const PhysicalParams& params);

/// Free action of the comparison path whose final endpoint is displaced by
/// the classical fall: (m / 2t) (x0 - xt - g t^2 / 2)^2.
ActionValue shifted_free_action(double x0, double xt, double t, const PhysicalParams& params);

/// S_g - S_{g=0} = -m g xt t - m g^2 t^3 / 6; independent of the start point.
double delta_action(double xt, double t, const PhysicalParams& params);

struct PhaseSpacePoint {
    double mean_x;
    double mean_p;
};

/// (x0 + p0 t / m - g t^2 / 2, p0 - m g t).
PhaseSpacePoint ehrenfest_mean(double x0, double p0, double t, const PhysicalParams& params);

struct SpreadBound {
    double bound;     // hbar t / (m sigma0)
    double gaussian;  // sigma0 sqrt(1 + (hbar t / 2 m sigma0^2)^2)
};

/// Both entries are independent of g. Throws Errc::BadSigma for sigma0 <= 0
/// and Errc::NegativeTime for t < 0.
SpreadBound spread_bound(double sigma0, double t, const PhysicalParams& params);

} // namespace qfall::action

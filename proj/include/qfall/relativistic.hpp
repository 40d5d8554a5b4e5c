#pragma once

// Proper-time action along classical paths in the weak-field metric
//   ds^2 = (1 - 2 g x / c^2) c^2 dt^2 - dx^2,
// and its approach to the non-relativistic action as c grows.

#include <optional>
#include <vector>

#include "qfall/core.hpp"

namespace qfall::relativistic {

inline constexpr std::size_t kMinQuadrature = 16;

struct RelActionResult {
    double proper_time = 0.0;
    double action = 0.0;     // m c^2 (tau - t)
    double nr_action = 0.0;  // int (-m g x - m xdot^2 / 2) dt along the same path
    double abs_error = 0.0;  // |action - nr_action|
};

/// tau = int_{t0}^{t0+t} sqrt(1 - 2 g x / c^2 - xdot^2 / c^2) dt' by composite
/// Simpson with n_quad intervals (rounded up to even), where t0 is the
/// trajectory's reference time and g is params.g. The deficit tau - t is
/// accumulated directly so that a radicand of exactly one contributes zero.
/// Throws Errc::BadQuadrature for n_quad < 16, Errc::SuperluminalPath if the
/// radicand is not positive at a sample, Errc::NegativeTime for t < 0.
double proper_time(const Trajectory& traj, double t, const PhysicalParams& params, std::size_t n_quad);

RelActionResult rel_action(const Trajectory& traj, double t, const PhysicalParams& params, std::size_t n_quad);

struct LimitRow {
    double c;
    double abs_error;
};

struct LimitReport {
    std::vector<LimitRow> rows;
    /// Least-squares slope of log(abs_error) against log(c); empty when any
    /// error is below kLimitFloor.
    std::optional<double> fitted_order;
    bool monotone = true;
};

inline constexpr double kLimitFloor = 1e-14;

/// Evaluates rel_action for each light speed in c_list. Throws
/// Errc::BadInput unless c_list is strictly increasing with at least 3 entries.
LimitReport nr_limit_check(const Trajectory& traj, double t, const PhysicalParams& params,
                           const std::vector<double>& c_list, std::size_t n_quad = 4096);

} // namespace qfall::relativistic

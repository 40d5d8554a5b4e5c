#include "qfall/relativistic.hpp"

#include <cmath>
#include <string>

namespace qfall::relativistic {
namespace {

struct Quadrature {
    double deficit;    // int (sqrt(radicand) - 1) dt
    double nr_action;  // int (-m g x - m xdot^2 / 2) dt
};

Quadrature integrate(const Trajectory& traj, double t, const PhysicalParams& params, std::size_t n_quad)
{
    params.validate();
    if (n_quad < kMinQuadrature)
        throw Error(Errc::BadQuadrature, "n_quad must be at least " + std::to_string(kMinQuadrature));
    if (!(t >= 0.0)) throw Error(Errc::NegativeTime, "proper time needs t >= 0");
    if (n_quad % 2 != 0) ++n_quad;

    const double c2 = params.c * params.c;
    const double h = t / static_cast<double>(n_quad);
    Quadrature q{0.0, 0.0};
    for (std::size_t i = 0; i <= n_quad; ++i) {
        const double s = traj.t0() + h * static_cast<double>(i);
        const double x = traj.position(s);
        const double v = traj.velocity(s);
        // radicand = 1 - u, u = (2 g x + v^2) / c^2; sqrt(1 - u) - 1 = -u / (sqrt(1 - u) + 1).
        const double u = (2.0 * params.g * x + v * v) / c2;
        const double radicand = 1.0 - u;
        if (!(radicand > 0.0))
            throw Error(Errc::SuperluminalPath, "proper-time radicand not positive at t = " + std::to_string(s));
        const double w = (i == 0 || i == n_quad) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        q.deficit += w * (-u / (std::sqrt(radicand) + 1.0));
        q.nr_action += w * (-params.m * params.g * x - 0.5 * params.m * v * v);
    }
    q.deficit *= h / 3.0;
    q.nr_action *= h / 3.0;
    return q;
}

} // namespace

double proper_time(const Trajectory& traj, double t, const PhysicalParams& params, std::size_t n_quad)
{
    return t + integrate(traj, t, params, n_quad).deficit;
}

RelActionResult rel_action(const Trajectory& traj, double t, const PhysicalParams& params, std::size_t n_quad)
{
    const auto q = integrate(traj, t, params, n_quad);
    RelActionResult r;
    r.proper_time = t + q.deficit;
    r.action = params.m * params.c * params.c * q.deficit;
    r.nr_action = q.nr_action;
    r.abs_error = std::abs(r.action - r.nr_action);
    return r;
}

LimitReport nr_limit_check(const Trajectory& traj, double t, const PhysicalParams& params,
                           const std::vector<double>& c_list, std::size_t n_quad)
{
    if (c_list.size() < 3) throw Error(Errc::BadInput, "nr_limit_check needs at least three light speeds");
    for (std::size_t i = 1; i < c_list.size(); ++i)
        if (!(c_list[i] > c_list[i - 1])) throw Error(Errc::BadInput, "c_list must be strictly increasing");

    LimitReport report;
    bool fit = true;
    for (const double c : c_list) {
        PhysicalParams p = params;
        p.c = c;
        const auto r = rel_action(traj, t, p, n_quad);
        if (!report.rows.empty() && r.abs_error > report.rows.back().abs_error) report.monotone = false;
        if (r.abs_error < kLimitFloor) fit = false;
        report.rows.push_back({c, r.abs_error});
    }
    if (!fit) return report;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& row : report.rows) {
        const double lx = std::log(row.c);
        const double ly = std::log(row.abs_error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(report.rows.size());
    report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return report;
}

} // namespace qfall::relativistic

// Acceptance suite: one PASS/FAIL line per criterion.
//
// usage: qfall_acceptance <path-to-qfall-cli> <path-to-default-config>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qfall/action.hpp"
#include "qfall/interferometry.hpp"
#include "qfall/oracle.hpp"
#include "qfall/propagator.hpp"
#include "qfall/relativistic.hpp"
#include "qfall/split_step.hpp"

using namespace qfall;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

PhysicalParams natural(double g)
{
    PhysicalParams p;
    p.g = g;
    return p;
}

const Grid& grid256()
{
    static const Grid grid(-20.0, 20.0, 256);
    return grid;
}

WavePacket gaussian(double x0, double p0, double sigma0) { return make_gaussian(grid256(), x0, p0, sigma0, natural(1.0)); }

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

Outcome factorization()
{
    const auto params = natural(1.0);
    const auto psi = gaussian(0.0, 0.0, 1.0);
    const auto u = oracle::dense_propagator(oracle::dense_hamiltonian(grid256(), params), 1.0, params);
    const double d = l2_distance(evolve_exact(psi, params, 1.0), oracle::apply(u, psi));
    return {d < 1e-6, "L2(evolve_exact, dense oracle) = " + num(d) + " < 1e-6"};
}

Outcome spread()
{
    const auto psi = gaussian(0.0, 0.0, 1.0);
    double analytic = 0.0, numeric = 0.0, closed = 0.0;
    for (const double t : {0.5, 1.0, 2.0}) {
        const double a0 = moments(evolve_exact(psi, natural(0.0), t), natural(0.0)).sigma_x;
        const double a1 = moments(evolve_exact(psi, natural(1.0), t), natural(1.0)).sigma_x;
        const SolverConfig steps{2048, 0};
        const double n0 = moments(evolve_split_step(psi, natural(0.0), t, steps).state, natural(0.0)).sigma_x;
        const double n1 = moments(evolve_split_step(psi, natural(1.0), t, steps).state, natural(1.0)).sigma_x;
        analytic = std::max(analytic, std::abs(a1 - a0) / a0);
        numeric = std::max(numeric, std::abs(n1 - n0) / n0);
        closed = std::max(closed, std::abs(a1 - std::sqrt(1.0 + 0.25 * t * t)));
    }
    return {analytic < 1e-10 && numeric < 1e-6 && closed < 1e-8,
            "analytic " + num(analytic) + " < 1e-10, split-step " + num(numeric) + " < 1e-6"};
}

Outcome commutator()
{
    const auto phi = gaussian(0.5, 0.3, 1.1);
    const auto psi = gaussian(-0.3, -0.2, 0.9);
    const cplx ref = overlap(phi, psi);
    double worst = 0.0;
    for (const double g : {0.0, 1.0})
        for (const double t : {0.5, 1.0}) {
            const cplx expected = cplx(0.0, -t) * ref;
            const cplx got = oracle::commutator_element(phi, psi, t, grid256(), natural(g));
            worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
        }
    return {worst < 1e-6, "max relative deviation from -(i hbar t/m)<phi|psi> = " + num(worst) + " < 1e-6"};
}

Outcome delta_action_identity()
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> mass(0.5, 2.0), accel(-2.0, 2.0), dur(0.2, 2.0), pos(-3.0, 3.0);
    double identity = 0.0, independence = 0.0;
    for (int i = 0; i < 1000; ++i) {
        PhysicalParams p;
        p.m = mass(rng);
        p.g = accel(rng);
        const double t = dur(rng), x0 = pos(rng), x0b = pos(rng), xt = pos(rng);
        const double target = -p.m * p.g * xt * t - p.m * p.g * p.g * t * t * t / 6.0;
        const double d1 =
            action::classical_action(x0, xt, 0.0, t, p).value - action::shifted_free_action(x0, xt, t, p).value;
        const double d2 =
            action::classical_action(x0b, xt, 0.0, t, p).value - action::shifted_free_action(x0b, xt, t, p).value;
        identity = std::max(identity, std::abs(d1 - target));
        independence = std::max(independence, std::abs(d1 - d2));
    }
    return {identity < 1e-12 && independence < 1e-12,
            "1000 tuples: identity " + num(identity) + ", x0 spread " + num(independence) + " < 1e-12"};
}

Outcome phase_cross_validation()
{
    const auto psi = gaussian(0.0, 0.0, 1.0);
    const auto params = natural(1.0);
    const auto a = interferometry::run_protocol(psi, params, 1.0, interferometry::Colocated{});
    interferometry::ProtocolOptions numeric;
    numeric.backend = interferometry::Backend::SplitStep;
    numeric.n_steps = 2048;
    const auto b = interferometry::run_protocol(psi, params, 1.0, interferometry::Colocated{}, numeric);
    const double dphase = std::abs(a.phase - 1.0 / 3.0);
    const double dvis = std::abs(a.visibility - std::exp(-0.625));
    const double dback = std::max(std::abs(a.phase - b.phase), std::abs(a.visibility - b.visibility));
    return {dphase < 1e-5 && dvis < 1e-4 && dback < 1e-5, "|phase - 1/3| = " + num(dphase) + ", |vis - e^-0.625| = " +
                                                               num(dvis) + ", backends " + num(dback)};
}

Outcome ehrenfest()
{
    const double x0 = 0.4, p0 = -0.3;
    const auto psi = gaussian(x0, p0, 1.0);
    double worst = 0.0;
    for (const double g : {0.5, 1.0, 1.5})
        for (const double t : {0.5, 1.0, 1.5}) {
            const auto p = natural(g);
            const double mx = x0 + p0 * t - 0.5 * g * t * t;
            const double mp = p0 - g * t;
            for (const auto& m : {moments(evolve_exact(psi, p, t), p),
                                  moments(evolve_split_step(psi, p, t, SolverConfig{2048, 0}).state, p)}) {
                worst = std::max(worst, std::abs(m.mean_x - mx));
                worst = std::max(worst, std::abs(m.mean_p - mp));
            }
        }
    return {worst < 1e-6, "3x3 (g, t) sweep, both backends: max deviation " + num(worst) + " < 1e-6"};
}

Outcome solver_order()
{
    const auto psi = gaussian(0.0, 0.0, 1.0);
    const auto params = natural(1.0);
    const auto exact = evolve_exact(psi, params, 1.0);
    std::vector<double> errors;
    for (const std::size_t n : {64u, 128u, 256u, 512u})
        errors.push_back(l2_distance(evolve_split_step(psi, params, 1.0, SolverConfig{n, 0}).state, exact));
    bool ok = true;
    std::string orders;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double order = std::log2(errors[i] / errors[i + 1]);
        ok = ok && order >= 1.8 && order <= 2.2;
        orders += (orders.empty() ? "" : ", ") + std::to_string(order);
    }
    return {ok, "orders " + orders + " in [1.8, 2.2]"};
}

Outcome relativistic_limit()
{
    // Release from rest at x0 = 1: from x0 = 0 the conserved 2 g x + xdot^2 is
    // zero, so tau = t and the error vanishes identically.
    const auto params = natural(1.0);
    const auto fall = Trajectory::initial_value(1.0, 0.0, 0.0, 1.0);
    const std::vector<double> cs{10.0, 20.0, 40.0, 80.0};
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const double c : cs) {
        auto p = params;
        p.c = c;
        const auto r = relativistic::rel_action(fall, 1.0, p, 4096);
        const double lx = std::log(c), ly = std::log(r.abs_error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(cs.size());
    const double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    const auto origin = Trajectory::initial_value(0.0, 0.0, 0.0, 0.0);
    const auto held = Trajectory::initial_value(2.0, 0.0, 0.0, 0.0);
    const double d0 = std::abs(relativistic::proper_time(origin, 1.0, params, 64) - 1.0);
    const double d1 = std::abs(relativistic::proper_time(held, 1.0, params, 64) - std::sqrt(1.0 - 4.0 / 100.0));
    const double static_err = std::max(d0, d1);
    const auto degenerate = relativistic::rel_action(Trajectory::initial_value(0.0, 0.0, 0.0, 1.0), 1.0, params, 4096);
    return {std::abs(order + 2.0) <= 0.1 && static_err <= 1e-14,
            "fitted order " + std::to_string(order) + " (release from x0 = 1), static paths " + num(static_err) +
                "; from x0 = 0 the error is " + num(degenerate.abs_error)};
}

Outcome symmetries()
{
    const auto params = natural(1.0);
    const auto psi = gaussian(0.0, 0.0, 1.0);
    const auto a = evolve_exact(psi, params, 1.0);
    const auto b = shift_packet(evolve_free(psi, params, 1.0), 0.5);
    const auto base = interferometry::record_from_branches(a, b, 1.0, params, true);
    const auto gauged =
        interferometry::record_from_branches(apply_global_phase(a, 2.1), apply_global_phase(b, 2.1), 1.0, params, true);
    double gauge = std::abs(gauged.overlap - base.overlap);
    for (const double d : {gauged.visibility - base.visibility, gauged.phase - base.phase,
                           gauged.fringe_x - base.fringe_x, gauged.fringe_y - base.fringe_y,
                           gauged.predicted_phase - base.predicted_phase,
                           *gauged.predicted_visibility - *base.predicted_visibility})
        gauge = std::max(gauge, std::abs(d));
    const auto swapped = interferometry::record_from_branches(b, a, 1.0, params, false);
    const double swap = std::abs(swapped.overlap - std::conj(base.overlap));
    const AccelSchedule pieces({{1.0, 0.2}, {1.0, 0.3}, {1.0, 0.5}});
    const double piecewise = l2_distance(evolve_piecewise(psi, params, pieces), a);
    return {gauge <= 1e-12 && swap <= 1e-12 && piecewise <= 1e-10,
            "gauge " + num(gauge) + ", swap " + num(swap) + " <= 1e-12; piecewise " + num(piecewise) + " <= 1e-10"};
}

int run(const std::string& command)
{
    const int status = std::system(command.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome tooling(const std::string& cli, const std::string& config)
{
    const fs::path dir = fs::temp_directory_path() / ("qfall_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto quote = [](const fs::path& p) { return "'" + p.string() + "'"; };
    const std::string base = quote(cli) + " ";
    const int verify =
        run(base + "verify --config " + quote(config) + " --out " + quote(dir / "verify.json") + " > /dev/null");
    const int first = run(base + "interfere --config " + quote(config) + " --out " + quote(dir / "a.csv"));
    const int second = run(base + "interfere --config " + quote(config) + " --out " + quote(dir / "b.csv"));
    const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
    const bool same = !a.empty() && a == b;
    fs::remove_all(dir);
    return {verify == 0 && first == 0 && second == 0 && same,
            "verify exit " + std::to_string(verify) + ", interfere reruns " + (same ? "byte-identical" : "differ") +
                " (" + std::to_string(a.size()) + " bytes)"};
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 3) {
        std::fprintf(stderr, "usage: %s <qfall-cli> <default-config>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1], config = argv[2];

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"factorization vs dense oracle", factorization},
        {"spread independent of g", spread},
        {"two-time commutator", commutator},
        {"relative action identity", delta_action_identity},
        {"interference phase and visibility", phase_cross_validation},
        {"Ehrenfest means", ehrenfest},
        {"Strang order", solver_order},
        {"non-relativistic limit", relativistic_limit},
        {"protocol symmetries", symmetries},
        {"tooling contract", [&] { return tooling(cli, config); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %2zu  %-34s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

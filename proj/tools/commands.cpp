#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <random>

#include "json.hpp"
#include "qfall/action.hpp"
#include "qfall/oracle.hpp"
#include "qfall/relativistic.hpp"
#include "qfall/split_step.hpp"

namespace qfall::app {

namespace itf = qfall::interferometry;

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_row(std::initializer_list<double> values)
{
    std::string line;
    for (const double v : values) {
        if (!line.empty()) line += ',';
        line += format_number(v);
    }
    line += '\n';
    return line;
}

template <class Row, class Fn>
std::vector<Row> parallel_rows(std::size_t n, Fn&& fn)
{
    std::vector<Row> rows(n);
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

itf::ProtocolOptions protocol_options(const InterfereSpec& spec)
{
    itf::ProtocolOptions o;
    o.backend = spec.backend;
    o.n_steps = spec.n_steps;
    o.gaussian_input = true;
    return o;
}

} // namespace

std::string evolve_csv(const RunConfig& cfg)
{
    const auto psi0 = cfg.make_state();
    const auto& ts = cfg.evolve.t_values;
    const auto rows = parallel_rows<std::string>(ts.size(), [&](std::size_t i) {
        const double t = ts[i];
        const auto exact = moments(evolve_exact(psi0, cfg.params, t), cfg.params);
        const auto state = evolve_split_step(psi0, cfg.params, t, SolverConfig{cfg.evolve.n_steps, 0}).state;
        const auto numeric = moments(state, cfg.params);
        return csv_row({t, exact.mean_x, exact.mean_p, exact.sigma_x, numeric.mean_x, numeric.sigma_x,
                        std::abs(numeric.norm - 1.0)});
    });
    std::string out = "t,mean_x_exact,mean_p_exact,sigma_x_exact,mean_x_numeric,sigma_x_numeric,norm_error\n";
    for (const auto& r : rows) out += r;
    return out;
}

std::string interfere_csv(const RunConfig& cfg)
{
    const auto psi0 = cfg.make_state();
    const auto records =
        itf::fringe_scan(psi0, cfg.params, cfg.interfere.t_values, cfg.interfere.scheme, protocol_options(cfg.interfere));
    std::string out =
        "t,re_overlap,im_overlap,visibility,phase,phase_unwrapped,predicted_phase,predicted_visibility\n";
    for (const auto& r : records)
        out += csv_row({r.t, r.overlap.real(), r.overlap.imag(), r.visibility, r.phase, r.phase_unwrapped,
                        r.predicted_phase, r.predicted_visibility.value_or(std::nan(""))});
    return out;
}

std::vector<double> suggest_denser_times(const RunConfig& cfg)
{
    constexpr double limit = std::numbers::pi / 2.0;
    const auto& ts = cfg.interfere.t_values;
    auto predicted = [&](double t) {
        const auto mean = action::ehrenfest_mean(cfg.state.x0, cfg.state.p0, t, cfg.params);
        return itf::predicted_phase(mean.mean_x, t, cfg.params);
    };
    const bool colocated = std::holds_alternative<itf::Colocated>(cfg.interfere.scheme);
    std::vector<double> out{ts.front()};
    bool refined = false;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double a = ts[i - 1], b = ts[i];
        std::size_t parts = 1;
        if (colocated) {
            // Sample the prediction inside the interval so cubic growth is not missed.
            double steepest = 0.0;
            constexpr int probes = 64;
            for (int k = 0; k < probes; ++k) {
                const double u = a + (b - a) * k / probes, v = a + (b - a) * (k + 1) / probes;
                steepest = std::max(steepest, std::abs(predicted(v) - predicted(u)) * probes);
            }
            parts = static_cast<std::size_t>(std::ceil(steepest / limit));
        }
        parts = std::max<std::size_t>(parts, 1);
        refined = refined || parts > 1;
        for (std::size_t k = 1; k < parts; ++k) out.push_back(a + (b - a) * static_cast<double>(k) / parts);
        out.push_back(b);
    }
    if (!refined) {
        std::vector<double> doubled{ts.front()};
        for (std::size_t i = 1; i < ts.size(); ++i) {
            doubled.push_back(0.5 * (ts[i - 1] + ts[i]));
            doubled.push_back(ts[i]);
        }
        return doubled;
    }
    return out;
}

bool VerifyReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

/// What a check body reports. `ok` lets a body veto the pass even when the
/// measured value is within tolerance.
struct Probe {
    double measured = 0.0;
    std::string detail;
    bool ok = true;
};

class Checks {
public:
    explicit Checks(VerifyReport& report) : report_(report) {}

    /// Runs `fn(Probe&)`; library errors become structured FAILs.
    template <class Fn>
    void run(int criterion, std::string name, double target, double tolerance, Fn&& fn)
    {
        CheckResult c;
        c.criterion = criterion;
        c.name = std::move(name);
        c.target = target;
        c.tolerance = tolerance;
        try {
            Probe p;
            fn(p);
            c.measured = p.measured;
            c.detail = std::move(p.detail);
            c.pass = p.ok && std::isfinite(p.measured) && std::abs(p.measured - target) <= tolerance;
        } catch (const std::exception& e) {
            c.pass = false;
            c.measured = std::nan("");
            c.detail = e.what();
        }
        report_.checks.push_back(std::move(c));
    }

private:
    VerifyReport& report_;
};

PhysicalParams with_g(PhysicalParams p, double g)
{
    p.g = g;
    return p;
}

std::string complex_text(cplx z) { return "(" + format_number(z.real()) + ", " + format_number(z.imag()) + ")"; }

double record_distance(const itf::InterferenceRecord& a, const itf::InterferenceRecord& b)
{
    double d = std::abs(a.overlap - b.overlap);
    d = std::max(d, std::abs(a.visibility - b.visibility));
    d = std::max(d, std::abs(itf::wrap_phase(a.phase - b.phase)));
    d = std::max(d, std::abs(a.fringe_x - b.fringe_x));
    d = std::max(d, std::abs(a.fringe_y - b.fringe_y));
    d = std::max(d, std::abs(a.predicted_phase - b.predicted_phase));
    if (a.predicted_visibility.has_value() != b.predicted_visibility.has_value()) return 1.0;
    if (a.predicted_visibility) d = std::max(d, std::abs(*a.predicted_visibility - *b.predicted_visibility));
    return d;
}

} // namespace

VerifyReport run_verify(const RunConfig& cfg, std::uint64_t seed)
{
    VerifyReport report;
    report.seed = seed;
    Checks checks(report);
    const auto& params = cfg.params;
    const auto& spec = cfg.verify;
    const double t = spec.t;
    const std::vector<double> sweep_t{0.5, 1.0, 2.0};

    checks.run(1, "factorization", 0.0, 1e-6, [&](Probe& p) {
        const auto psi0 = cfg.make_state();
        const auto h = oracle::dense_hamiltonian(psi0.grid(), params);
        const auto dense = oracle::apply(oracle::dense_propagator(h, t, params), psi0);
        p.measured = l2_distance(evolve_exact(psi0, params, t), dense);
        p.detail = "L2 distance between evolve_exact and the dense eigendecomposition propagator";
    });

    checks.run(2, "spread_analytic", 0.0, 1e-10, [&](Probe& p) {
        const auto psi0 = cfg.make_state();
        for (const double s : sweep_t) {
            const double free = moments(evolve_exact(psi0, with_g(params, 0.0), s), params).sigma_x;
            const double fall = moments(evolve_exact(psi0, params, s), params).sigma_x;
            p.measured = std::max(p.measured, std::abs(fall - free) / free);
        }
        p.detail = "max relative sigma_x difference vs g = 0, t in {0.5, 1, 2}";
    });

    checks.run(2, "spread_split_step", 0.0, 1e-6, [&](Probe& p) {
        const auto psi0 = cfg.make_state();
        for (const double s : sweep_t) {
            const auto free = evolve_split_step(psi0, with_g(params, 0.0), s, SolverConfig{2048, 0}).state;
            const auto fall = evolve_split_step(psi0, params, s, SolverConfig{2048, 0}).state;
            const double a = moments(free, params).sigma_x;
            const double b = moments(fall, params).sigma_x;
            p.measured = std::max(p.measured, std::abs(b - a) / a);
        }
        p.detail = "same with 2048 Strang steps";
    });

    checks.run(3, "commutator", 0.0, 1e-6, [&](Probe& p) {
        const auto psi = cfg.make_state();
        const auto phi = make_gaussian(psi.grid(), cfg.state.x0 + 0.5, cfg.state.p0, cfg.state.sigma0, params);
        const cplx ref = overlap(phi, psi);
        for (const double g : {0.0, params.g}) {
            for (const double s : {0.5, 1.0}) {
                const auto pg = with_g(params, g);
                const cplx expected = cplx(0.0, -params.hbar * s / params.m) * ref;
                const cplx got = oracle::commutator_element(phi, psi, s, psi.grid(), pg);
                p.measured = std::max(p.measured, std::abs(got - expected) / std::abs(expected));
            }
        }
        const cplx diag = oracle::commutator_element(psi, psi, 1.0, psi.grid(), params);
        p.detail = "max relative deviation from -(i hbar t / m)<phi|psi>; <psi|[x(1), x(0)]|psi> = " +
                   complex_text(diag) + " vs " + complex_text(cplx(0.0, -params.hbar / params.m));
    });

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mass(0.5, 2.0), accel(-2.0, 2.0), dur(0.2, 2.0), pos(-3.0, 3.0);
    struct Tuple {
        PhysicalParams p;
        double x0, x0_alt, xt, t;
    };
    std::vector<Tuple> tuples;
    for (std::size_t i = 0; i < spec.random_trials; ++i) {
        Tuple tu{params, 0, 0, 0, 0};
        tu.p.m = mass(rng);
        tu.p.g = accel(rng);
        tu.t = dur(rng);
        tu.x0 = pos(rng);
        tu.x0_alt = pos(rng);
        tu.xt = pos(rng);
        tuples.push_back(tu);
    }
    auto difference = [](const Tuple& tu, double x0) {
        return action::classical_action(x0, tu.xt, 0.0, tu.t, tu.p).value -
               action::shifted_free_action(x0, tu.xt, tu.t, tu.p).value;
    };

    checks.run(4, "delta_action_identity", 0.0, 1e-12, [&](Probe& p) {
        for (const auto& tu : tuples) {
            const double closed = -tu.p.m * tu.p.g * tu.xt * tu.t - tu.p.m * tu.p.g * tu.p.g * std::pow(tu.t, 3) / 6.0;
            p.measured = std::max(p.measured, std::abs(difference(tu, tu.x0) - closed));
            p.measured = std::max(p.measured, std::abs(action::delta_action(tu.xt, tu.t, tu.p) - closed));
        }
        p.detail = std::to_string(tuples.size()) + " random (m, g, t, x0, xt) tuples";
    });

    checks.run(4, "delta_action_x0_independence", 0.0, 1e-12, [&](Probe& p) {
        for (const auto& tu : tuples)
            p.measured = std::max(p.measured, std::abs(difference(tu, tu.x0) - difference(tu, tu.x0_alt)));
        p.detail = "same tuples, two start points each";
    });

    const auto mean_at = [&](double s) { return action::ehrenfest_mean(cfg.state.x0, cfg.state.p0, s, params); };

    checks.run(5, "interference_phase", 0.0, 1e-5, [&](Probe& p) {
        const auto r = itf::run_protocol(cfg.make_state(), params, t, itf::Colocated{});
        const double predicted = itf::predicted_phase(mean_at(t).mean_x, t, params);
        p.measured = std::abs(itf::wrap_phase(r.phase - predicted));
        p.detail = "measured " + format_number(r.phase) + " rad, predicted " + format_number(predicted) + " rad";
    });

    checks.run(5, "interference_visibility", 0.0, 1e-4, [&](Probe& p) {
        const auto r = itf::run_protocol(cfg.make_state(), params, t, itf::Colocated{});
        const double sigma_t = action::spread_bound(cfg.state.sigma0, t, params).gaussian;
        const double predicted = itf::gaussian_visibility(sigma_t, t, params);
        p.measured = std::abs(r.visibility - predicted);
        p.detail = "measured " + format_number(r.visibility) + ", predicted " + format_number(predicted);
    });

    checks.run(5, "backend_agreement", 0.0, 1e-5, [&](Probe& p) {
        const auto psi0 = cfg.make_state();
        const auto a = itf::run_protocol(psi0, params, t, itf::Colocated{});
        itf::ProtocolOptions numeric;
        numeric.backend = itf::Backend::SplitStep;
        numeric.n_steps = 2048;
        const auto b = itf::run_protocol(psi0, params, t, itf::Colocated{}, numeric);
        p.measured = std::max(std::abs(itf::wrap_phase(a.phase - b.phase)), std::abs(a.visibility - b.visibility));
        p.detail = "analytic vs split-step (2048 steps), max of phase and visibility differences";
    });

    checks.run(6, "ehrenfest", 0.0, 1e-6, [&](Probe& p) {
        const auto psi0 = cfg.make_state();
        for (const double gf : {0.0, 0.5, 1.0}) {
            const auto pg = with_g(params, gf * params.g);
            for (const double tf : {0.5, 1.0, 1.5}) {
                const double s = tf * t;
                const auto expected = action::ehrenfest_mean(cfg.state.x0, cfg.state.p0, s, pg);
                const auto a = moments(evolve_exact(psi0, pg, s), pg);
                const auto b = moments(evolve_split_step(psi0, pg, s, SolverConfig{2048, 0}).state, pg);
                for (const auto& m : {a, b}) {
                    p.measured = std::max(p.measured, std::abs(m.mean_x - expected.mean_x));
                    p.measured = std::max(p.measured, std::abs(m.mean_p - expected.mean_p));
                }
            }
        }
        p.detail = "3x3 (g, t) sweep, both backends, max deviation of <x> and <p>";
    });

    checks.run(7, "solver_order", 2.0, 0.2, [&](Probe& p) {
        const auto report = convergence_report(cfg.make_state(), params, t, spec.convergence_steps);
        bool any = false;
        p.measured = 2.0;
        std::string orders;
        for (const auto& row : report.rows) {
            if (!row.observed_order) continue;
            if (!any || std::abs(*row.observed_order - 2.0) > std::abs(p.measured - 2.0)) p.measured = *row.observed_order;
            any = true;
            orders += (orders.empty() ? "" : ", ") + format_number(*row.observed_order);
        }
        p.ok = report.monotone;
        if (any)
            p.detail = "observed orders " + orders + (report.monotone ? "" : "; errors not monotone");
        else
            p.detail = "all errors below round-off; the splitting is exact for this configuration";
    });

    checks.run(8, "relativistic_order", -2.0, 0.1, [&](Probe& p) {
        const auto path = Trajectory::initial_value(spec.release_height, 0.0, 0.0, params.g);
        const auto report = relativistic::nr_limit_check(path, t, params, spec.c_values);
        p.ok = report.monotone && report.fitted_order.has_value();
        p.measured = report.fitted_order.value_or(std::nan(""));
        p.detail = "free fall from rest at x0 = " + format_number(spec.release_height) + "; errors";
        for (const auto& row : report.rows) p.detail += " " + format_number(row.abs_error);
        if (!report.fitted_order) p.detail += "; errors vanish, no order can be fitted";
    });

    checks.run(8, "static_proper_time", 0.0, 1e-14, [&](Probe& p) {
        const auto origin = Trajectory::initial_value(0.0, 0.0, 0.0, 0.0);
        p.measured = std::abs(relativistic::proper_time(origin, t, params, 64) - t);
        const double height = spec.release_height;
        const auto held = Trajectory::initial_value(height, 0.0, 0.0, 0.0);
        const double expected = t * std::sqrt(1.0 - 2.0 * params.g * height / (params.c * params.c));
        p.measured = std::max(p.measured, std::abs(relativistic::proper_time(held, t, params, 64) - expected));
        p.detail = "static paths at x = 0 and x = " + format_number(height);
    });

    checks.run(9, "gauge_invariance", 0.0, 1e-12, [&](Probe& p) {
        const auto psi0 = cfg.make_state();
        const auto a = evolve_exact(psi0, params, t);
        const double fall = 0.5 * params.g * t * t;
        const auto b = shift_packet(evolve_free(psi0, params, t), fall);
        const auto base = itf::record_from_branches(a, b, t, params, true);
        const auto gauged =
            itf::record_from_branches(apply_global_phase(a, 0.9), apply_global_phase(b, 0.9), t, params, true);
        p.measured = record_distance(base, gauged);
        p.detail = "common global phase on both branches, max change over record fields";
    });

    checks.run(9, "branch_swap", 0.0, 1e-12, [&](Probe& p) {
        const auto psi0 = cfg.make_state();
        const auto a = evolve_exact(psi0, params, t);
        const auto b = shift_packet(evolve_free(psi0, params, t), 0.5 * params.g * t * t);
        const auto ab = itf::record_from_branches(a, b, t, params, false);
        const auto ba = itf::record_from_branches(b, a, t, params, false);
        p.measured = std::abs(ba.overlap - std::conj(ab.overlap));
        p.detail = "|<A|B> - conj(<B|A>)|";
    });

    checks.run(9, "piecewise_schedule", 0.0, 1e-10, [&](Probe& p) {
        const auto psi0 = cfg.make_state();
        const AccelSchedule quarters({{params.g, 0.25 * t}, {params.g, 0.25 * t}, {params.g, 0.25 * t},
                                      {params.g, 0.25 * t}});
        p.measured = l2_distance(evolve_piecewise(psi0, params, quarters), evolve_exact(psi0, params, t));
        p.detail = "four constant-g segments vs one evolve_exact step";
    });

    checks.run(10, "interfere_determinism", 0.0, 0.0, [&](Probe& p) {
        const std::string first = interfere_csv(cfg);
        const std::string second = interfere_csv(cfg);
        p.measured = first == second ? 0.0 : 1.0;
        p.ok = first.find('\r') == std::string::npos && !first.empty() && first.back() == '\n';
        p.detail = "two in-process interfere runs, " + std::to_string(first.size()) + " bytes each";
    });

    return report;
}

std::string format_check(const CheckResult& c)
{
    char head[160];
    std::snprintf(head, sizeof head, "%s [%2d] %-28s measured=%.6g target=%.6g tol=%.3g", c.pass ? "PASS" : "FAIL",
                  c.criterion, c.name.c_str(), c.measured, c.target, c.tolerance);
    std::string line = head;
    if (!c.detail.empty()) line += "  " + c.detail;
    return line;
}

std::string verify_json(const VerifyReport& report)
{
    nlohmann::json j;
    j["seed"] = report.seed;
    j["all_pass"] = report.all_pass();
    auto& list = j["checks"] = nlohmann::json::array();
    std::size_t failed = 0;
    for (const auto& c : report.checks) {
        nlohmann::json item;
        item["criterion"] = c.criterion;
        item["name"] = c.name;
        item["status"] = c.pass ? "PASS" : "FAIL";
        item["measured"] = std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json(nullptr);
        item["target"] = c.target;
        item["tolerance"] = c.tolerance;
        item["detail"] = c.detail;
        list.push_back(std::move(item));
        if (!c.pass) ++failed;
    }
    j["passed"] = report.checks.size() - failed;
    j["failed"] = failed;
    return j.dump(2) + "\n";
}

} // namespace qfall::app

#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qfall::app {

using nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& what)
    : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field))
{
}

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

/// One JSON object read under a dotted path; remembers which keys were used.
class Object {
public:
    Object(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) throw ConfigError(path_, "expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& at(const std::string& key)
    {
        if (!j_.contains(key)) throw ConfigError(join(path_, key), "missing required field");
        seen_.insert(key);
        return j_.at(key);
    }

    std::string field(const std::string& key) const { return join(path_, key); }

    double number(const std::string& key)
    {
        const auto& v = at(key);
        if (!v.is_number()) throw ConfigError(field(key), "expected a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    std::size_t count(const std::string& key)
    {
        const auto& v = at(key);
        if (!v.is_number_unsigned()) throw ConfigError(field(key), "expected a non-negative integer");
        return v.get<std::size_t>();
    }

    std::size_t count_or(const std::string& key, std::size_t fallback) { return has(key) ? count(key) : fallback; }

    std::string text(const std::string& key)
    {
        const auto& v = at(key);
        if (!v.is_string()) throw ConfigError(field(key), "expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key)
    {
        const auto& v = at(key);
        if (!v.is_array()) throw ConfigError(field(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    std::vector<std::size_t> counts(const std::string& key)
    {
        const auto& v = at(key);
        if (!v.is_array()) throw ConfigError(field(key), "expected an array of integers");
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_unsigned())
                throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a non-negative integer");
            out.push_back(v[i].get<std::size_t>());
        }
        return out;
    }

    void finish() const
    {
        for (const auto& [key, value] : j_.items())
            if (!seen_.count(key)) throw ConfigError(join(path_, key), "unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& field, const std::string& what)
{
    if (!ok) throw ConfigError(field, what);
}

void check_times(const std::vector<double>& ts, const std::string& field)
{
    require(!ts.empty(), field, "must not be empty");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        require(ts[i] >= 0.0, field, "times must be non-negative");
        if (i > 0) require(ts[i] > ts[i - 1], field, "times must be strictly increasing");
    }
}

PhysicalParams read_params(Object o)
{
    PhysicalParams p;
    p.hbar = o.number("hbar");
    p.m = o.number("m");
    p.g = o.number("g");
    p.c = o.number("c");
    o.finish();
    require(p.hbar > 0.0, o.field("hbar"), "must be positive");
    require(p.m > 0.0, o.field("m"), "must be positive");
    require(p.c > 0.0, o.field("c"), "must be positive");
    return p;
}

GridSpec read_grid(Object o)
{
    GridSpec g;
    g.x_min = o.number("x_min");
    g.x_max = o.number("x_max");
    g.n = o.count("n");
    o.finish();
    require(g.x_max > g.x_min, o.field("x_max"), "must exceed grid.x_min");
    require(g.n >= 8 && (g.n & (g.n - 1)) == 0, o.field("n"), "must be a power of two >= 8");
    return g;
}

StateSpec read_state(Object o)
{
    StateSpec s;
    s.x0 = o.number("x0");
    s.p0 = o.number("p0");
    s.sigma0 = o.number("sigma0");
    o.finish();
    require(s.sigma0 > 0.0, o.field("sigma0"), "must be positive");
    return s;
}

EvolveSpec read_evolve(Object o)
{
    EvolveSpec e;
    if (o.has("t_values")) e.t_values = o.numbers("t_values");
    e.n_steps = o.count_or("n_steps", e.n_steps);
    o.finish();
    check_times(e.t_values, o.field("t_values"));
    require(e.n_steps >= 1, o.field("n_steps"), "must be at least 1");
    return e;
}

AccelSchedule read_schedule(const json& j, const std::string& field)
{
    if (!j.is_array()) throw ConfigError(field, "expected an array of {g, dt} segments");
    std::vector<AccelSchedule::Segment> segments;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string here = field + "[" + std::to_string(i) + "]";
        Object seg(j[i], here);
        const double g = seg.number("g");
        const double dt = seg.number("dt");
        seg.finish();
        require(dt > 0.0, seg.field("dt"), "must be positive");
        segments.push_back({g, dt});
    }
    require(!segments.empty(), field, "must not be empty");
    return AccelSchedule(std::move(segments));
}

InterfereSpec read_interfere(Object o)
{
    InterfereSpec s;
    if (o.has("t_values")) s.t_values = o.numbers("t_values");
    const std::string scheme = o.has("scheme") ? o.text("scheme") : "colocated";
    if (scheme == "colocated") {
        require(!o.has("branch_a"), o.field("branch_a"), "only valid with the scheduled scheme");
        require(!o.has("branch_b"), o.field("branch_b"), "only valid with the scheduled scheme");
        s.scheme = interferometry::Colocated{};
    } else if (scheme == "scheduled") {
        auto a = read_schedule(o.at("branch_a"), o.field("branch_a"));
        auto b = read_schedule(o.at("branch_b"), o.field("branch_b"));
        s.scheme = interferometry::Scheduled{std::move(a), std::move(b)};
    } else {
        throw ConfigError(o.field("scheme"), "expected \"colocated\" or \"scheduled\"");
    }
    if (o.has("backend")) {
        const std::string backend = o.text("backend");
        if (backend == "analytic")
            s.backend = interferometry::Backend::Analytic;
        else if (backend == "split_step")
            s.backend = interferometry::Backend::SplitStep;
        else
            throw ConfigError(o.field("backend"), "expected \"analytic\" or \"split_step\"");
    }
    s.n_steps = o.count_or("n_steps", s.n_steps);
    o.finish();
    check_times(s.t_values, o.field("t_values"));
    require(s.n_steps >= 1, o.field("n_steps"), "must be at least 1");
    return s;
}

VerifySpec read_verify(Object o)
{
    VerifySpec v;
    v.t = o.number_or("t", v.t);
    if (o.has("convergence_steps")) v.convergence_steps = o.counts("convergence_steps");
    if (o.has("c_values")) v.c_values = o.numbers("c_values");
    v.release_height = o.number_or("release_height", v.release_height);
    v.random_trials = o.count_or("random_trials", v.random_trials);
    o.finish();
    require(v.t > 0.0, o.field("t"), "must be positive");
    require(v.convergence_steps.size() >= 2, o.field("convergence_steps"), "needs at least two entries");
    for (std::size_t i = 0; i < v.convergence_steps.size(); ++i) {
        require(v.convergence_steps[i] >= 1, o.field("convergence_steps"), "entries must be at least 1");
        if (i > 0)
            require(v.convergence_steps[i] > v.convergence_steps[i - 1], o.field("convergence_steps"),
                    "must be strictly increasing");
    }
    require(v.c_values.size() >= 3, o.field("c_values"), "needs at least three entries");
    for (std::size_t i = 0; i < v.c_values.size(); ++i) {
        require(v.c_values[i] > 0.0, o.field("c_values"), "entries must be positive");
        if (i > 0) require(v.c_values[i] > v.c_values[i - 1], o.field("c_values"), "must be strictly increasing");
    }
    require(v.random_trials >= 1, o.field("random_trials"), "must be at least 1");
    return v;
}

} // namespace

WavePacket RunConfig::make_state() const { return make_gaussian(make_grid(), state.x0, state.p0, state.sigma0, params); }

RunConfig parse_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    Object top(root, "");
    RunConfig cfg;
    cfg.params = read_params(Object(top.at("params"), "params"));
    cfg.grid = read_grid(Object(top.at("grid"), "grid"));
    cfg.state = read_state(Object(top.at("state"), "state"));
    if (top.has("evolve")) cfg.evolve = read_evolve(Object(top.at("evolve"), "evolve"));
    if (top.has("interfere")) cfg.interfere = read_interfere(Object(top.at("interfere"), "interfere"));
    if (top.has("verify")) cfg.verify = read_verify(Object(top.at("verify"), "verify"));
    top.finish();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace qfall::app

#pragma once
// Strict JSON run configuration for the qfall command-line tool.
//
// Top-level blocks: params, grid, state (required) and evolve, interfere,
// verify (optional, defaults below). Unknown keys anywhere are errors.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfall/core.hpp"
#include "qfall/interferometry.hpp"
#include "qfall/propagator.hpp"

namespace qfall::app {

/// Configuration problem; `field` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct GridSpec {
    double x_min = -20.0;
    double x_max = 20.0;
    std::size_t n = 256;
};

struct StateSpec {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma0 = 1.0;
};

struct EvolveSpec {
    std::vector<double> t_values{0.0, 0.5, 1.0, 1.5, 2.0};
    std::size_t n_steps = 2048;
};

struct InterfereSpec {
    std::vector<double> t_values{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    interferometry::Scheme scheme = interferometry::Colocated{};
    interferometry::Backend backend = interferometry::Backend::Analytic;
    std::size_t n_steps = 2048;
};

struct VerifySpec {
    double t = 1.0;
    std::vector<std::size_t> convergence_steps{64, 128, 256, 512};
    std::vector<double> c_values{10.0, 20.0, 40.0, 80.0};
    double release_height = 1.0;
    std::size_t random_trials = 1000;
};

struct RunConfig {
    PhysicalParams params;
    GridSpec grid;
    StateSpec state;
    EvolveSpec evolve;
    InterfereSpec interfere;
    VerifySpec verify;

    Grid make_grid() const { return Grid(grid.x_min, grid.x_max, grid.n); }
    WavePacket make_state() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

} // namespace qfall::app

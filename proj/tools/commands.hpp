#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"

namespace qfall::app {

/// 17 significant digits, "nan" for missing values.
std::string format_number(double v);

/// Columns: t, mean_x_exact, mean_p_exact, sigma_x_exact, mean_x_numeric,
/// sigma_x_numeric, norm_error. norm_error is |<psi|psi> - 1| of the
/// split-step state.
std::string evolve_csv(const RunConfig& cfg);

/// Columns: t, re_overlap, im_overlap, visibility, phase, phase_unwrapped,
/// predicted_phase, predicted_visibility.
std::string interfere_csv(const RunConfig& cfg);

/// A denser interfere t-list whose predicted phase steps stay below pi / 2.
std::vector<double> suggest_denser_times(const RunConfig& cfg);

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

VerifyReport run_verify(const RunConfig& cfg, std::uint64_t seed);
std::string format_check(const CheckResult& c);
std::string verify_json(const VerifyReport& report);

} // namespace qfall::app

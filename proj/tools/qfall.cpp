// qfall evolve|interfere|verify --config <path> --out <path> [--seed <u64>]
//
// Exit codes: 0 success, 1 verify FAIL or unexpected error, 2 invalid
// configuration, 3 grid overflow, 4 phase aliasing in a fringe scan.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

enum Exit : int { kOk = 0, kFail = 1, kConfig = 2, kOverflow = 3, kAliasing = 4 };

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("failed writing output file " + path);
}

/// Field most likely responsible for a library precondition failure.
std::string blamed_field(qfall::Errc code)
{
    using qfall::Errc;
    switch (code) {
    case Errc::BadSigma: return "state.sigma0";
    case Errc::BadGrid: return "grid";
    case Errc::BadParams: return "params";
    case Errc::BadSchedule:
    case Errc::SchemeMismatch: return "interfere.branch_a / interfere.branch_b";
    default: return "";
    }
}

int report_error(const qfall::Error& e, const qfall::app::RunConfig& cfg, const std::string& command)
{
    using qfall::Errc;
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
    case Errc::GridOverflow:
        std::cerr << "hint: widen grid.x_min / grid.x_max or shorten the run\n";
        return kOverflow;
    case Errc::PhaseAliasing: {
        std::cerr << "suggested interfere.t_values: [";
        const auto ts = qfall::app::suggest_denser_times(cfg);
        for (std::size_t i = 0; i < ts.size(); ++i) std::cerr << (i ? ", " : "") << qfall::app::format_number(ts[i]);
        std::cerr << "]\n";
        return kAliasing;
    }
    case Errc::BadSigma:
    case Errc::BadGrid:
    case Errc::BadParams:
    case Errc::BadSchedule:
    case Errc::SchemeMismatch:
    case Errc::BadInput:
    case Errc::NegativeTime:
        std::cerr << "config error in " << command << ": field " << blamed_field(e.code()) << "\n";
        return kConfig;
    default: return kFail;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Wave packet in a linear potential: propagation, interference and oracle checks"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::uint64_t seed = 1;
    for (const char* name : {"evolve", "interfere", "verify"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_path, "output file (CSV, or JSON summary for verify)")->required();
        sub->add_option("--seed", seed, "seed for randomized property sweeps");
    }
    app.get_subcommand("evolve")->description("moments vs t for the analytic and split-step propagators");
    app.get_subcommand("interfere")->description("fringe scan of the two-branch interferometer");
    app.get_subcommand("verify")->description("oracle and property checks; exit 1 on any FAIL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    qfall::app::RunConfig cfg;
    try {
        cfg = qfall::app::load_config(config_path);
    } catch (const qfall::app::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    }

    try {
        if (command == "evolve") {
            write_file(out_path, qfall::app::evolve_csv(cfg));
            return kOk;
        }
        if (command == "interfere") {
            write_file(out_path, qfall::app::interfere_csv(cfg));
            return kOk;
        }
        const auto report = qfall::app::run_verify(cfg, seed);
        for (const auto& c : report.checks) std::cout << qfall::app::format_check(c) << "\n";
        const bool ok = report.all_pass();
        std::cout << (ok ? "verify: all checks PASS" : "verify: FAIL") << "\n";
        write_file(out_path, qfall::app::verify_json(report));
        return ok ? kOk : kFail;
    } catch (const qfall::Error& e) {
        return report_error(e, cfg, command);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}

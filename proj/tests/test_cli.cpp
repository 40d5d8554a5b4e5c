#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "json.hpp"

using namespace qfall;
using namespace qfall::app;
using nlohmann::json;

namespace {

json base_config()
{
    return json::parse(R"({
        "params": {"hbar": 1, "m": 1, "g": 1, "c": 10},
        "grid": {"x_min": -20, "x_max": 20, "n": 256},
        "state": {"x0": 0, "p0": 0, "sigma0": 1}
    })");
}

std::string config_error_field(const json& j)
{
    try {
        parse_config(j.dump());
    } catch (const ConfigError& e) {
        return e.field();
    }
    FAIL("expected a config error");
    return "";
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream cs(line);
        std::string cell;
        while (std::getline(cs, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("config: defaults and strictness")
{
    const auto cfg = parse_config(base_config().dump());
    CHECK(cfg.grid.n == 256);
    CHECK(cfg.params.c == 10.0);
    CHECK(cfg.interfere.t_values.back() == 1.0);
    CHECK(std::holds_alternative<interferometry::Colocated>(cfg.interfere.scheme));

    auto j = base_config();
    j["grid"].erase("n");
    CHECK(config_error_field(j) == "grid.n");

    j = base_config();
    j["grid"]["nn"] = 3;
    CHECK(config_error_field(j) == "grid.nn");

    j = base_config();
    j["extra"] = json::object();
    CHECK(config_error_field(j) == "extra");

    j = base_config();
    j["grid"]["n"] = 100;
    CHECK(config_error_field(j) == "grid.n");

    j = base_config();
    j["grid"]["n"] = 256.5;
    CHECK(config_error_field(j) == "grid.n");

    j = base_config();
    j["params"]["m"] = "heavy";
    CHECK(config_error_field(j) == "params.m");

    j = base_config();
    j["state"]["sigma0"] = -1;
    CHECK(config_error_field(j) == "state.sigma0");

    j = base_config();
    j["interfere"] = {{"t_values", {0.2, 0.1}}};
    CHECK(config_error_field(j) == "interfere.t_values");

    j = base_config();
    j["interfere"] = {{"scheme", "scheduled"}, {"branch_a", {{{"g", 1}, {"dt", 0.5}}}},
                      {"branch_b", {{{"g", 0}, {"dt", 0}}}}};
    CHECK(config_error_field(j) == "interfere.branch_b[0].dt");

    j = base_config();
    j["verify"] = {{"c_values", {10, 20}}};
    CHECK(config_error_field(j) == "verify.c_values");

    CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
}

TEST_CASE("number formatting")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-300) == "-2.5e-300");
    CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("evolve CSV")
{
    auto j = base_config();
    j["params"]["g"] = 0.0;
    j["state"]["p0"] = 0.5;
    j["evolve"] = {{"t_values", {0.0, 1.0, 2.0}}, {"n_steps", 64}};
    const auto rows = parse_csv(evolve_csv(parse_config(j.dump())));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"t", "mean_x_exact", "mean_p_exact", "sigma_x_exact", "mean_x_numeric",
                                              "sigma_x_numeric", "norm_error"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 7);
        const double t = std::stod(rows[i][0]);
        CHECK(std::abs(std::stod(rows[i][1]) - 0.5 * t) < 1e-10);
        CHECK(std::abs(std::stod(rows[i][4]) - 0.5 * t) < 1e-10);
        CHECK(std::stod(rows[i][6]) < 1e-12);
    }

    // sigma_x does not depend on g.
    auto fall = base_config();
    fall["evolve"] = {{"t_values", {0.5, 1.0, 2.0}}, {"n_steps", 256}};
    auto still = fall;
    still["params"]["g"] = 0.0;
    const auto a = parse_csv(evolve_csv(parse_config(fall.dump())));
    const auto b = parse_csv(evolve_csv(parse_config(still.dump())));
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(std::abs(std::stod(a[i][3]) - std::stod(b[i][3])) < 1e-10);
}

TEST_CASE("interfere CSV")
{
    auto j = base_config();
    j["interfere"] = {{"t_values", {0.0}}};
    const std::string zero = interfere_csv(parse_config(j.dump()));
    const auto rows = parse_csv(zero);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].size() == 8);
    CHECK(rows[0][7] == "predicted_visibility");
    const std::vector<double> expected{0, 1, 0, 1, 0, 0, 0, 1};
    for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(std::stod(rows[1][k]) - expected[k]) < 1e-12);
    CHECK(zero.find('\r') == std::string::npos);
    CHECK(zero.back() == '\n');

    const auto cfg = parse_config(base_config().dump());
    const std::string scan = interfere_csv(cfg);
    CHECK(scan == interfere_csv(cfg));
    const auto scan_rows = parse_csv(scan);
    CHECK(std::abs(std::stod(scan_rows.back()[5]) - 1.0 / 3.0) < 1e-5);

    j = base_config();
    j["interfere"] = {{"t_values", {0.5, 1.0}}, {"scheme", "scheduled"}, {"branch_a", {{{"g", 1}, {"dt", 1}}}},
                      {"branch_b", {{{"g", 0}, {"dt", 1}}}}};
    const auto sched = parse_csv(interfere_csv(parse_config(j.dump())));
    CHECK(sched[1][7] == "nan");
}

TEST_CASE("denser t-list suggestion removes the aliasing")
{
    auto j = base_config();
    j["grid"] = {{"x_min", -40}, {"x_max", 40}, {"n", 1024}};
    j["state"]["x0"] = 5.0;
    j["interfere"] = {{"t_values", {0.5, 3.0}}};
    auto cfg = parse_config(j.dump());
    CHECK_THROWS_AS(interfere_csv(cfg), Error);
    cfg.interfere.t_values = suggest_denser_times(cfg);
    CHECK(cfg.interfere.t_values.size() > 2);
    CHECK_NOTHROW(interfere_csv(cfg));
}

TEST_CASE("verify reports structured failures")
{
    auto j = base_config();
    j["grid"]["n"] = 8;
    j["state"]["sigma0"] = 12.0;
    const auto report = run_verify(parse_config(j.dump()), 1);
    CHECK_FALSE(report.all_pass());
    bool overflow = false;
    for (const auto& c : report.checks)
        if (!c.pass && c.detail.find("GridOverflow") != std::string::npos) overflow = true;
    CHECK(overflow);
    const auto summary = json::parse(verify_json(report));
    CHECK(summary["all_pass"] == false);
    CHECK(summary["failed"].get<int>() > 0);

    const auto good = run_verify(parse_config(base_config().dump()), 7);
    CHECK(good.all_pass());
    for (int criterion = 1; criterion <= 10; ++criterion) {
        bool seen = false;
        for (const auto& c : good.checks) seen = seen || c.criterion == criterion;
        CHECK(seen);
    }
}

#ifdef QFALL_CLI_PATH
TEST_CASE("command-line exit codes")
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("qfall_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const json& j) {
        std::ofstream(dir / name) << j.dump();
        return (dir / name).string();
    };
    auto run = [&](const std::string& args) {
        const std::string cmd = std::string("'") + QFALL_CLI_PATH + "' " + args + " > /dev/null 2> '" +
                                (dir / "stderr.txt").string() + "'";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    auto stderr_text = [&] {
        std::ifstream in(dir / "stderr.txt");
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string out = " --out '" + (dir / "out.csv").string() + "'";

    CHECK(run("evolve --config '" + write("ok.json", base_config()) + "'" + out) == 0);

    auto missing = base_config();
    missing["grid"].erase("n");
    CHECK(run("evolve --config '" + write("missing.json", missing) + "'" + out) == 2);
    CHECK(stderr_text().find("grid.n") != std::string::npos);

    auto wide = base_config();
    wide["state"]["x0"] = 15.0;
    CHECK(run("evolve --config '" + write("wide.json", wide) + "'" + out) == 3);

    auto alias = base_config();
    alias["grid"] = {{"x_min", -40}, {"x_max", 40}, {"n", 1024}};
    alias["state"]["x0"] = 5.0;
    alias["interfere"] = {{"t_values", {0.5, 3.0}}};
    CHECK(run("interfere --config '" + write("alias.json", alias) + "'" + out) == 4);
    CHECK(stderr_text().find("suggested interfere.t_values") != std::string::npos);

    auto tiny = base_config();
    tiny["grid"]["n"] = 8;
    tiny["state"]["sigma0"] = 12.0;
    CHECK(run("verify --config '" + write("tiny.json", tiny) + "'" + out) == 1);

    CHECK(run("evolve --config '" + (dir / "absent.json").string() + "'" + out) == 2);
    CHECK(run("launch") == 2);
    fs::remove_all(dir);
}
#endif

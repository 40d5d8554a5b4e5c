#include "doctest.h"

#include <cmath>
#include <random>

#include "qfall/propagator.hpp"
#include "qfall/split_step.hpp"
#include "test_common.hpp"

using namespace qfall;
using qfall::test::natural;
using qfall::test::standard_gaussian;

TEST_CASE("split-step is exact when g = 0")
{
    std::mt19937_64 rng(23);
    const auto psi = test::random_localised(test::standard_grid(), rng);
    const auto params = natural(0.0);
    for (const std::size_t steps : {1u, 7u, 64u, 512u}) {
        const auto out = evolve_split_step(psi, params, 1.0, {steps, 0}).state;
        CHECK(l2_distance(out, evolve_free(psi, params, 1.0)) < 1e-12);
    }
}

TEST_CASE("split-step matches the analytic propagator")
{
    const auto params = natural();
    const auto psi = standard_gaussian();
    const auto out = evolve_split_step(psi, params, 1.0, {1024, 0}).state;
    CHECK(l2_distance(out, evolve_exact(psi, params, 1.0)) < 1e-6);
    CHECK(std::abs(norm(out) - 1.0) < 1e-10);
}

TEST_CASE("halving the step cuts the error by four")
{
    const auto params = natural();
    const auto psi = standard_gaussian();
    const auto exact = evolve_exact(psi, params, 1.0);
    double previous = 0.0;
    for (const std::size_t steps : {64u, 128u, 256u}) {
        const double err = l2_distance(evolve_split_step(psi, params, 1.0, {steps, 0}).state, exact);
        const double err2 = l2_distance(evolve_split_step(psi, params, 1.0, {2 * steps, 0}).state, exact);
        const double ratio = err / err2;
        CHECK(ratio >= 3.5);
        CHECK(ratio <= 4.5);
        if (previous > 0.0) CHECK(err < previous);
        previous = err;
    }
}

TEST_CASE("snapshots are recorded at integer steps and equal fresh runs")
{
    const auto params = natural();
    const auto psi = standard_gaussian();
    const auto run = evolve_split_step(psi, params, 1.0, {64, 16});
    REQUIRE(run.snapshots.size() == 4);
    CHECK(run.snapshots[0].step == 16);
    CHECK(run.snapshots[0].t == doctest::Approx(0.25));
    const auto fresh = evolve_split_step(psi, params, 0.25, {16, 0}).state;
    CHECK(l2_distance(run.snapshots[0].state, fresh) < 1e-12);
    CHECK(l2_distance(run.snapshots.back().state, run.state) < 1e-14);

    // Fused and unfused stepping agree.
    const auto plain = evolve_split_step(psi, params, 1.0, {64, 0}).state;
    CHECK(l2_distance(plain, run.state) < 1e-12);
}

TEST_CASE("intermediate wrap-around is caught at snapshots")
{
    // The packet falls through the boundary band before the run ends.
    const auto params = natural(12.0);
    const auto psi = standard_gaussian(0.0, 0.0, 1.0);
    try {
        evolve_split_step(psi, params, 1.9, {512, 32});
        FAIL("expected GridOverflow");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::GridOverflow);
    }
    CHECK_THROWS_AS(evolve_split_step(psi, natural(), -1.0, {8, 0}), Error);
    CHECK_THROWS_AS(evolve_split_step(psi, natural(), 1.0, {0, 0}), Error);
}

TEST_CASE("spread from the numeric route does not depend on g")
{
    const auto psi = standard_gaussian(0.0, 0.0, 1.0);
    for (const double t : {0.5, 1.0, 2.0}) {
        const auto free = moments(evolve_split_step(psi, natural(0.0), t, {2048, 0}).state, natural(0.0));
        const auto fall = moments(evolve_split_step(psi, natural(1.0), t, {2048, 0}).state, natural(1.0));
        CHECK(std::abs(fall.sigma_x - free.sigma_x) / free.sigma_x < 1e-6);
    }
}

TEST_CASE("convergence report")
{
    const auto psi = standard_gaussian();

    const auto flat = convergence_report(psi, natural(0.0), 1.0, {64, 128, 256, 512});
    REQUIRE(flat.rows.size() == 4);
    for (const auto& row : flat.rows) {
        CHECK(row.l2_error < 1e-12);
        CHECK_FALSE(row.observed_order.has_value());
    }

    const auto report = convergence_report(psi, natural(1.0), 1.0, {64, 128, 256, 512});
    REQUIRE(report.rows.size() == 4);
    CHECK(report.monotone);
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
        CHECK(report.rows[i + 1].l2_error < report.rows[i].l2_error);
        REQUIRE(report.rows[i].observed_order.has_value());
        CHECK(*report.rows[i].observed_order >= 1.8);
        CHECK(*report.rows[i].observed_order <= 2.2);
    }
    CHECK_FALSE(report.rows.back().observed_order.has_value());

    CHECK_THROWS_AS(convergence_report(psi, natural(), 1.0, {64, 64}), Error);
    CHECK_THROWS_AS(convergence_report(psi, natural(), 1.0, {0, 8}), Error);
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include <json.hpp>

#include "test_common.hpp"
#include "triemit/cli_runner.hpp"

using namespace triemit;
using test_common::split_fields;
using test_common::split_lines;
constexpr double pi = std::numbers::pi;

TEST_CASE("sweep-x emits the reference rows") {
    RunConfig cfg;
    cfg.mode = RunMode::SweepX;
    cfg.grid = {0.0, 3.0, 601};
    const auto lines = split_lines(run_sweep_x_csv(cfg));

    REQUIRE(lines.size() == 601 + 2);
    CHECK(lines[0].rfind("# ", 0) == 0);
    CHECK(lines[1] == "x_over_pi,g2,g3");

    // Row at x/pi = 0: both closed forms at 4/3.
    const auto first = split_fields(lines[2]);
    CHECK(first[0] == "0");
    CHECK(first[1] == "1.33333333333333");
    CHECK(first[2] == "1.33333333333333");

    // Row at x/pi = 0.5 (grid index 100): 4/9 and 8/27.
    const auto mid = split_fields(lines[2 + 100]);
    CHECK(mid[0] == "0.5");
    CHECK(std::stod(mid[1]) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(std::stod(mid[2]) == doctest::Approx(8.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("sweep-x hits the first g2 minimum at x/pi = 2/3") {
    RunConfig cfg;
    cfg.mode = RunMode::SweepX;
    cfg.grid = {0.0, 2.0, 4}; // 0, 2/3, 4/3, 2
    const auto lines = split_lines(run_sweep_x_csv(cfg));
    REQUIRE(lines.size() == 6);
    const auto row = split_fields(lines[3]);
    CHECK(std::stod(row[0]) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(std::stod(row[1]) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("identical configs produce byte-identical output") {
    RunConfig cfg;
    cfg.mode = RunMode::SweepX;
    cfg.grid = {0.0, 3.0, 601};
    CHECK(run_sweep_x_csv(cfg) == run_sweep_x_csv(cfg));

    RunConfig nb;
    nb.mode = RunMode::SweepNbar;
    nb.grid = {0.1, 10.0, 50};
    CHECK(run_sweep_nbar_csv(nb) == run_sweep_nbar_csv(nb));
}

TEST_CASE("sweep-nbar columns") {
    RunConfig cfg;
    cfg.mode = RunMode::SweepNbar;
    cfg.grid = {1000.0, 2000.0, 3};
    const auto lines = split_lines(run_sweep_nbar_csv(cfg));
    REQUIRE(lines.size() == 5);
    CHECK(lines[1] == "nbar,g2_dicke,g3_dicke,ratio,intensity");
    const auto row = split_fields(lines[2]);
    CHECK(std::stod(row[0]) == doctest::Approx(1000.0));
    CHECK(std::abs(std::stod(row[1]) - 0.96) < 1e-4);
    CHECK(std::stod(row[3]) ==
          doctest::Approx(std::stod(row[1]) / std::stod(row[2])).epsilon(1e-12));

    RunConfig low;
    low.mode = RunMode::SweepNbar;
    low.grid = {1e-7, 1e-6, 2};
    const auto small = split_lines(run_sweep_nbar_csv(low));
    CHECK(std::stod(split_fields(small[2])[1]) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("corr mode compares the numeric and closed-form routes") {
    RunConfig cfg;
    cfg.mode = RunMode::Corr;
    cfg.u = pi / 2;
    cfg.nbar = 1.0;

    SUBCASE("coincident pair") {
        cfg.detectors = {Eigen::Vector3d(0.3, -0.2, 0.93).normalized(),
                         Eigen::Vector3d(0.3, -0.2, 0.93).normalized()};
        const auto lines = split_lines(run_corr_csv(cfg));
        REQUIRE(lines.size() == 3);
        CHECK(lines[1] == "u,nbar,g2,g2_closed,g2_abs_diff");
        const auto row = split_fields(lines[2]);
        CHECK(std::stod(row[2]) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
        CHECK(std::stod(row[4]) < 1e-10);
    }

    SUBCASE("opposite in-plane pair at u = pi/2") {
        cfg.detectors = {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(-1, 0, 0)};
        const auto lines = split_lines(run_corr_csv(cfg));
        const auto row = split_fields(lines[2]);
        CHECK(std::stod(row[2]) == doctest::Approx(4.0 / 9.0).epsilon(1e-10));
    }

    SUBCASE("coincident triple") {
        const Eigen::Vector3d det = Eigen::Vector3d(0.1, 0.4, 0.9).normalized();
        cfg.detectors = {det, det, det};
        const auto lines = split_lines(run_corr_csv(cfg));
        CHECK(lines[1] == "u,nbar,g2,g2_closed,g2_abs_diff,g3,g3_closed,g3_abs_diff");
        const auto row = split_fields(lines[2]);
        CHECK(std::stod(row[5]) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
        CHECK(std::stod(row[7]) < 1e-10);
    }
}

TEST_CASE("steady mode reports populations against the analytic law") {
    RunConfig cfg;
    cfg.mode = RunMode::Steady;
    cfg.nbar = 1.0;
    cfg.chi_override = 0.5;
    cfg.delta_override = 1.0;
    const auto lines = split_lines(run_steady_csv(cfg));
    REQUIRE(lines.size() == 2 + 8 + 4);
    CHECK(lines[1] == "observable,value,analytic,abs_diff");
    const auto p1 = split_fields(lines[2]);
    CHECK(p1[0] == "p1");
    CHECK(std::stod(p1[1]) == doctest::Approx(8.0 / 27.0).epsilon(1e-10));
    for (std::size_t i = 2; i < lines.size(); ++i) {
        CHECK(std::stod(split_fields(lines[i])[3]) < 1e-9);
    }
}

TEST_CASE("evolve mode starts from the ground state") {
    RunConfig cfg;
    cfg.mode = RunMode::Evolve;
    cfg.nbar = 1.0;
    cfg.grid = {0.0, 50.0, 6};
    const auto lines = split_lines(run_evolve_csv(cfg));
    REQUIRE(lines.size() == 2 + 6);
    const auto first = split_fields(lines[2]);
    CHECK(std::stod(first[1]) == doctest::Approx(1.0));  // p1(0) = 1
    const auto last = split_fields(lines.back());
    CHECK(std::stod(last[1]) == doctest::Approx(8.0 / 27.0).epsilon(1e-7));
}

TEST_CASE("validation report is machine-readable and passes by default") {
    RunConfig cfg;
    cfg.mode = RunMode::Validate;
    bool ok = false;
    const auto report = nlohmann::json::parse(run_validate_report(cfg, ok));
    CHECK(ok);
    CHECK(report["failed"] == 0);
    bool found_eq13 = false;
    for (const auto& check : report["checks"]) {
        CHECK(check["pass"] == true);
        if (check["name"] == "eq13-matches-kernel") {
            found_eq13 = true;
            CHECK(check["max_abs_error"].is_number());
            CHECK(check["max_abs_error"].get<double>() < 1e-10);
        }
    }
    CHECK(found_eq13);
}

TEST_CASE("an injected invalid chi fails validation") {
    RunConfig cfg;
    cfg.mode = RunMode::Validate;
    cfg.chi_override = 1.5;
    bool ok = true;
    const auto report = nlohmann::json::parse(run_validate_report(cfg, ok));
    CHECK_FALSE(ok);
    CHECK(report["failed"].get<int>() > 0);
    bool psd_failed = false;
    for (const auto& check : report["checks"]) {
        if (check["name"] == "couplings-psd") {
            psd_failed = !check["pass"].get<bool>();
        }
    }
    CHECK(psd_failed);
}

TEST_CASE("bad configurations are rejected") {
    RunConfig both;
    both.mode = RunMode::SweepX;
    both.nbar = 1.0;
    both.omega0_over_kt = 1.0;
    CHECK_THROWS_AS(resolved_nbar(both), ConfigError);

    RunConfig short_grid;
    short_grid.mode = RunMode::SweepX;
    short_grid.grid = {0.0, 1.0, 1};
    CHECK_THROWS_AS(run_sweep_x_csv(short_grid), ConfigError);

    RunConfig one_det;
    one_det.mode = RunMode::Corr;
    one_det.detectors = {Eigen::Vector3d(1, 0, 0)};
    CHECK_THROWS_AS(run_corr_csv(one_det), ConfigError);

    RunConfig cold;
    cold.mode = RunMode::Corr;
    cold.nbar = 0.0;
    cold.detectors = {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0)};
    CHECK_THROWS_AS(run_corr_csv(cold), ConfigError);

    RunConfig bad_nbar_grid;
    bad_nbar_grid.mode = RunMode::SweepNbar;
    bad_nbar_grid.grid = {0.0, 1.0, 5};
    CHECK_THROWS_AS(run_sweep_nbar_csv(bad_nbar_grid), ConfigError);
}

TEST_CASE("the Bose factor route sets nbar") {
    RunConfig cfg;
    cfg.omega0_over_kt = std::log(2.0);
    CHECK(resolved_nbar(cfg) == doctest::Approx(1.0).epsilon(1e-14));
}

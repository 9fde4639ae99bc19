// cli_runner.hpp — Run configuration and the command implementations behind
// the command-line front end. Kept in the library so the commands are
// testable in-process; the binary is a thin argument-parsing wrapper.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "triemit/parallel.hpp"

namespace triemit {

enum class RunMode { Validate, Steady, Evolve, SweepX, SweepNbar, Corr };

struct GridSpec {
    double start = 0.0;
    double stop = 3.0;
    int count = 601;
};

struct RunConfig {
    RunMode mode = RunMode::Validate;
    std::optional<double> nbar;           // exactly one of nbar /
    std::optional<double> omega0_over_kt; // omega0_over_kt may be given
    double u = 1.0;                       // triangle side, omega0 r / c
    double gamma = 1.0;
    std::optional<double> chi_override;
    std::optional<double> delta_override;
    std::vector<Eigen::Vector3d> detectors;
    GridSpec grid;
    std::string output_path; // empty or "-" writes to stdout
    Exec exec = Exec::Parallel;
};

// Bad configuration (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Output could not be written (exit code 3).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// nbar, either direct or via the Bose factor of omega0_over_kt; defaults to 1.
double resolved_nbar(const RunConfig& cfg);

std::string run_sweep_x_csv(const RunConfig& cfg);
std::string run_sweep_nbar_csv(const RunConfig& cfg);
std::string run_corr_csv(const RunConfig& cfg);
std::string run_steady_csv(const RunConfig& cfg);
std::string run_evolve_csv(const RunConfig& cfg);

// JSON report of the validation suite; all_passed reports the verdict.
std::string run_validate_report(const RunConfig& cfg, bool& all_passed);

// Dispatches on cfg.mode, writes the output, and maps errors to the process
// exit code contract: 0 ok, 1 validation failure, 2 bad config, 3 I/O error.
int run_command(const RunConfig& cfg);

} // namespace triemit

// validation.hpp — Named invariant checks across all modules, runnable from
// the command line and from the test suites.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triemit/parallel.hpp"

namespace triemit {

struct ValidationConfig {
    double nbar = 1.0;
    double u = 1.0; // triangle side, dimensionless
    double gamma = 1.0;
    std::optional<double> chi_override;
    std::optional<double> delta_override;
    Exec exec = Exec::Parallel;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double max_abs_error = 0.0;
    std::string detail; // empty unless the check failed or threw
};

std::vector<CheckResult> run_validation(const ValidationConfig& cfg);

} // namespace triemit

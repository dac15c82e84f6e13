#pragma once

#include <string>
#include <vector>

namespace foxh {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Named verification suites: closed-forms, cross-method, rewrite, fourier,
/// mass, asymptotics, positivity-grid, subordination; "all" runs everything.
/// Throws std::invalid_argument for an unknown suite name.
std::vector<CriterionResult> run_suite(const std::string& suite, int threads = 1);

/// All suite names accepted by run_suite, in execution order.
const std::vector<std::string>& suite_names();

} // namespace foxh

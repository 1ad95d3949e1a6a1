#pragma once

#include <string>
#include <vector>

namespace hopcorr::checks {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string details_json;  // suite-specific numbers, already serialized
};

// Fixed-seed verification suites mirroring the library's analytic guarantees.
SuiteResult run_tc_suite();
SuiteResult run_spectrum_suite();
SuiteResult run_stationarity_suite();
SuiteResult run_subadd_suite();
SuiteResult run_selfavg_suite();

// names empty = every suite, in the order above. Unknown names throw.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names);

std::string report_to_json(const std::vector<SuiteResult>& results);

}  // namespace hopcorr::checks

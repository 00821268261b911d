#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <mmcurve/report.hpp>

namespace mmcurve {

struct SuiteCheck {
    // Acceptance criterion the check belongs to, 1..14.
    int criterion = 0;
    std::string name;
    std::function<CheckReport()> run;
    std::string note;
};

struct SuiteResult {
    int criterion = 0;
    std::string name;
    CheckReport report;
    std::string note;
};

// golden-thin, golden-fat, golden-onecut, identities, all
const std::vector<std::string>& suite_names();
// Throws DomainError for an unknown suite.
std::vector<SuiteCheck> suite_checks(std::string_view suite);

// MMCURVE_THREADS when set and positive, otherwise the hardware concurrency.
int worker_count();
// Results come back in the order of `checks` whatever the worker count. Exceptions inside a
// check become failed reports.
std::vector<SuiteResult> run_checks(const std::vector<SuiteCheck>& checks, int workers);

} // namespace mmcurve

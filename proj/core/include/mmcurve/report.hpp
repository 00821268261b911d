#pragma once

#include <string>

namespace mmcurve {

// Outcome of a verification routine; failures are data, not exceptions.
struct CheckReport {
    bool ok = true;
    long checked = 0;
    std::string detail;
    // Set when the check ran but compared nothing.
    std::string warning;
};

} // namespace mmcurve

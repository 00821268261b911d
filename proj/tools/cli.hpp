#pragma once

#include <iosfwd>

namespace mmcurve::cli {

// Exit codes: 0 success, 1 failed verification or computation, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mmcurve::cli

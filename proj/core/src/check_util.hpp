#pragma once

#include <string>

#include <mmcurve/laurent.hpp>
#include <mmcurve/report.hpp>
#include <mmcurve/series_io.hpp>

namespace mmcurve::detail {

inline std::string describe_term(const VarTable& table, int zpow, const PSeries::Term& t)
{
    std::string mono = render_monomial(table, t.first);
    return "z^" + std::to_string(zpow) + (mono.empty() ? "" : "*" + mono) + " (coefficient " + t.second.str() + ")";
}

// Compares a and b on powers hi down to lo; stops at the first disagreement.
inline CheckReport compare_range(const LSeries& a, const LSeries& b, int lo, int hi)
{
    CheckReport r;
    for (int k = hi; k >= lo; --k) {
        PSeries diff = a.coeff(k) - b.coeff(k);
        ++r.checked;
        if (!diff.is_zero()) {
            r.ok = false;
            r.detail = "mismatch at " + describe_term(*a.table(), k, diff.terms().front());
            return r;
        }
    }
    return r;
}

// Every power from hi down to lo must vanish.
inline CheckReport check_vanishing(const LSeries& a, int lo, int hi)
{
    return compare_range(a, LSeries(a.table(), a.coeff_truncation()), lo, hi);
}

} // namespace mmcurve::detail

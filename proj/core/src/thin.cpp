#include <mmcurve/thin.hpp>

#include <algorithm>
#include <sstream>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/error.hpp>
#include <mmcurve/lagrange.hpp>
#include <mmcurve/series_io.hpp>

#include "check_util.hpp"

namespace mmcurve {

CouplingFrame thin_frame(const CouplingFrame& frame)
{
    return frame.with_extra({laurent_var("N"), aux_var("v"), aux_var("w")});
}

namespace {

std::vector<PSeries> inversion_data(const CouplingFrame& thin, const RenormalizedCouplings& rc)
{
    const VarTablePtr& table = thin.table();
    TruncationPolicy pol = rc.I0.truncation();
    int top = std::max(thin.max_g_index() - 1, 1);
    std::vector<PSeries> J(top + 2, PSeries(table, pol));
    J[0] = PSeries::term(table, {{"N", 1}}, Rational(2), pol);
    for (int n = 1; n <= top; ++n) {
        auto it = rc.Ik.find(n);
        PSeries In = it == rc.Ik.end() ? PSeries(table, pol) : it->second;
        if (n == 1) {
            In = In - Rational(1);
        }
        J[n + 1] = In * Rational(n + 1);
    }
    return J;
}

} // namespace

ThinDeformation thin_deformation(const CouplingFrame& frame, int z_tail, int degree)
{
    if (z_tail < 0 || degree < 0) {
        throw DomainError("tail and degree must be non-negative");
    }
    ThinDeformation d{thin_frame(frame), {}, {}, {}, z_tail, degree};
    const VarTablePtr& table = d.frame.table();
    TruncationPolicy pol = grade_policy(degree);
    d.I0 = compute_I0(d.frame, degree);

    d.Y = LSeries(table, pol, -(z_tail + 1));
    int top = std::max(d.frame.max_g_index() - 1, 1);
    for (int n = 0; n <= top; ++n) {
        PSeries c = d.frame.t(n).truncated(pol);
        if (n == 1) {
            c = c - Rational(1);
        }
        d.Y.add_to(n, c / factorial(n));
    }
    PSeries N = PSeries::variable(table, "N", pol);
    PSeries power = PSeries::constant(table, Rational(1), pol);
    d.f.push_back(N);
    for (int n = 0; n <= z_tail; ++n) {
        if (n > 0) {
            power = power * d.I0;
            d.f.push_back(N * power);
        }
        d.Y.add_to(-n - 1, N * power * Rational(2));
    }
    return d;
}

std::vector<PSeries> thin_inversion_data(const CouplingFrame& thin, int degree)
{
    int top = std::max(thin.max_g_index() - 1, 1);
    return inversion_data(thin, renormalize(thin, degree, top));
}

PSeries thin_z_of_v(const CouplingFrame& frame, int order, int degree, InversionMethod method)
{
    if (order < 1) {
        throw DomainError("v-order must be at least 1");
    }
    CouplingFrame thin = thin_frame(frame);
    const VarTablePtr& table = thin.table();
    int top = std::max(thin.max_g_index() - 1, 1);
    RenormalizedCouplings rc = renormalize(thin, degree, top);
    std::vector<PSeries> J = inversion_data(thin, rc);

    PSeries w;
    if (method == InversionMethod::fixed_point) {
        w = invert_fixed_point(InversionProblem{phi_from_J(J, table, "w"), order});
    } else {
        w = invert_composition_formula(J, table, "v", order);
    }
    return w + rc.I0.truncated(w.truncation());
}

CheckReport thin_y2_minus_check(const ThinDeformation& d)
{
    const VarTablePtr& table = d.Y.table();
    LSeries lhs = laurent_split(d.Y * d.Y).second * Rational(1, 4);

    LSeries inner(table, d.Y.coeff_truncation(), -(d.tail + 1));
    inner.add_to(-1, d.f[0]);
    for (int n = 1; n <= d.tail && n < static_cast<int>(d.f.size()); ++n) {
        inner.add_to(-n - 1, d.f[n]);
    }
    LSeries rhs = inner * inner;
    int lo = std::max(lhs.valid_from(), rhs.valid_from());
    if (lo > -1) {
        return CheckReport{false, 0, "tail too short to compare any negative power", ""};
    }
    return detail::compare_range(lhs, rhs, lo, -1);
}

CheckReport thin_curve_check(const ThinDeformation& d)
{
    const VarTablePtr& table = d.Y.table();
    const TruncationPolicy& pol = d.Y.coeff_truncation();
    LSeries shift(table, pol);
    shift.add_to(1, PSeries::constant(table, Rational(1), pol));
    shift.add_to(0, -d.I0.truncated(pol));
    LSeries lhs = shift * d.Y;
    LSeries rhs = shift * laurent_split(d.Y).first;
    rhs.add_to(0, d.f[0] * Rational(2));
    int hi = std::max(lhs.head(), rhs.head());
    int lo = std::max(lhs.valid_from(), rhs.valid_from());
    return detail::compare_range(lhs, rhs, lo, hi);
}

CheckReport thin_integrality_check(int K, int degree, int order)
{
    std::vector<int> idx;
    for (int n = 1; n <= K; ++n) {
        idx.push_back(n);
    }
    PSeries z = thin_z_of_v(CouplingFrame::symbolic(FrameTag::g, idx), order, degree);
    std::size_t n_index = z.table()->index("N");
    CheckReport r;
    for (const auto& [m, c] : z.terms()) {
        ++r.checked;
        Rational scaled = c / Rational(2).pow(m.e[n_index]);
        if (!scaled.is_integer()) {
            r.ok = false;
            RenderOptions opts;
            opts.two_n = true;
            r.detail = "non-integral coefficient " + scaled.str() + " at " + render_monomial(*z.table(), m, opts);
            return r;
        }
    }
    return r;
}

} // namespace mmcurve

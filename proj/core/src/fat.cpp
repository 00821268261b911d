#include <mmcurve/fat.hpp>

#include <algorithm>

#include <mmcurve/error.hpp>

#include "check_util.hpp"

namespace mmcurve {

CouplingFrame fat_frame(const CouplingFrame& frame)
{
    return frame.with_extra({aux_var("t")});
}

LSeries FatState::resolvent() const
{
    TruncationPolicy pol = grade_policy(degree);
    LSeries w(frame.table(), pol, -(n_max + 1));
    for (int n = 0; n <= n_max; ++n) {
        w.add_to(-n - 1, f[n]);
    }
    return w;
}

FatState fat_fn_virasoro(const CouplingFrame& frame, int n_max, int degree)
{
    if (n_max < 1 || degree < 0) {
        throw PreconditionError("fat recursion needs n_max >= 1 and a non-negative degree");
    }
    CouplingFrame fr = fat_frame(frame);
    for (int k : fr.active()) {
        if (k >= 3 && !fr.is_symbolic(k)) {
            throw PreconditionError("numeric g" + std::to_string(k) +
                                    " makes the fat recursion non-terminating; keep couplings above g2 symbolic");
        }
    }
    const VarTablePtr& table = fr.table();
    TruncationPolicy pol = grade_policy(degree);
    int kmax = fr.max_g_index();
    int top = n_max + degree * std::max(kmax - 2, 0);

    std::vector<PSeries> g(kmax + 1, PSeries(table, pol));
    for (int k = 1; k <= kmax; ++k) {
        g[k] = fr.g(k).truncated(pol);
    }
    PSeries one = PSeries::constant(table, Rational(1), pol);
    PSeries scale = kmax >= 2 ? ps_invert(one - g[2]) : one;

    std::vector<PSeries> f(top + 1, PSeries(table, pol));
    f[0] = PSeries::variable(table, "t", pol);

    bool changed = true;
    for (int sweep = 0; sweep < degree + 2 && changed; ++sweep) {
        changed = false;
        for (int n = 1; n <= top; ++n) {
            int m = n - 2;
            PSeries rhs(table, pol);
            for (int k = 1; k <= kmax; ++k) {
                if (k == 2 || g[k].is_zero() || k + m > top) {
                    continue;
                }
                rhs += g[k] * f[k + m];
            }
            for (int j = 0; 2 * j <= m; ++j) {
                PSeries prod = f[j] * f[m - j];
                rhs += 2 * j == m ? prod : prod * Rational(2);
            }
            PSeries next = rhs * scale;
            if (!(next == f[n])) {
                f[n] = std::move(next);
                changed = true;
            }
        }
    }
    if (changed) {
        throw DivergenceError("fat recursion did not stabilise within " + std::to_string(degree + 2) + " sweeps");
    }
    f.resize(n_max + 1);
    return FatState{fr, std::move(f), n_max, degree};
}

LSeries potential_derivative(const CouplingFrame& frame, const VarTablePtr& table, const TruncationPolicy& pol)
{
    LSeries s(table, pol);
    int kmax = std::max(frame.max_g_index(), 2);
    for (int n = 1; n <= kmax; ++n) {
        PSeries c = frame.g(n).rebase(table).truncated(pol);
        if (n == 2) {
            c = c - Rational(1);
        }
        s.add_to(n - 1, c);
    }
    return s;
}

LSeries loop_polynomial(const CouplingFrame& frame, const std::vector<PSeries>& f, const TruncationPolicy& pol)
{
    int kmax = frame.max_g_index();
    if (f.empty() || static_cast<int>(f.size()) < kmax - 1) {
        throw PreconditionError("loop polynomial needs f_0 .. f_" + std::to_string(std::max(kmax - 2, 0)));
    }
    const VarTablePtr& table = f[0].table();
    LSeries p(table, pol);
    p.add_to(0, f[0].truncated(pol));
    for (int n = 2; n <= kmax; ++n) {
        PSeries gn = frame.g(n).rebase(table).truncated(pol);
        if (gn.is_zero()) {
            continue;
        }
        for (int j = 0; j <= n - 2; ++j) {
            p.add_to(n - 2 - j, -(gn * f[j].truncated(pol)));
        }
    }
    return p;
}

LSeries fat_resolvent_closed(const CouplingFrame& frame, const std::vector<PSeries>& f, int degree, int tail)
{
    if (tail < 0) {
        throw DomainError("tail must be non-negative");
    }
    CouplingFrame fr = fat_frame(frame);
    const VarTablePtr& table = fr.table();
    TruncationPolicy pol = grade_policy(degree);
    std::vector<PSeries> fin;
    fin.reserve(f.size());
    for (const PSeries& x : f) {
        fin.push_back(x.rebase(table));
    }
    LSeries sp = potential_derivative(fr, table, pol);
    LSeries disc = sp * sp - loop_polynomial(fr, fin, pol) * Rational(4);
    int floor = -(tail + 1);
    for (int branch : {1, -1}) {
        LSeries w = (-sp - ls_sqrt(disc, branch, floor)) * Rational(1, 2);
        if (w.is_zero() || w.head() < 0) {
            return w;
        }
    }
    throw BranchError("no branch of sqrt(S'^2 - 4P) makes omega vanish at large z");
}

CheckReport fat_y2_minus_check(const FatState& state, int tail)
{
    TruncationPolicy pol = grade_policy(state.degree);
    LSeries y = potential_derivative(state.frame, state.frame.table(), pol) + state.resolvent() * Rational(2);
    LSeries y2 = y * y;
    if (y2.valid_from() > -tail) {
        return CheckReport{false, 0,
                           "state known only down to z^" + std::to_string(y2.valid_from()) + ", asked for z^" +
                               std::to_string(-tail), ""};
    }
    return detail::check_vanishing(y2, -tail, -1);
}

} // namespace mmcurve

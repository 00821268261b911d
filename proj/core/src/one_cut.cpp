#include <mmcurve/one_cut.hpp>

#include <algorithm>
#include <climits>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/error.hpp>
#include <mmcurve/fat.hpp>
#include <mmcurve/series_io.hpp>

namespace mmcurve {

namespace {

TruncationPolicy cut_policy(const VarTablePtr& table, const CutOptions& o)
{
    if (o.degree < 0 && o.t_order < 0) {
        throw PreconditionError("a one-cut solve needs a coupling degree or a t-order");
    }
    TruncationPolicy p;
    if (o.degree >= 0) {
        p.set_max_grade(o.degree);
    }
    if (o.t_order >= 0) {
        p.set_max_exp(table->index("t"), o.t_order);
    }
    return p;
}

int top_index(const CouplingFrame& fr)
{
    return std::max(fr.max_g_index(), 2);
}

// g_m - delta_{m,2}
PSeries g_tilde(const CouplingFrame& fr, int m, const TruncationPolicy& pol)
{
    PSeries g = fr.g(m).truncated(pol);
    return m == 2 ? g - Rational(1) : g;
}

// Smallest t-exponent plus grade over the terms; INT_MAX for zero.
int combined_order(const PSeries& p)
{
    std::size_t ti = p.table()->index("t");
    int best = INT_MAX;
    for (const auto& [m, c] : p.terms()) {
        best = std::min(best, m.e[ti] + p.grade(m));
    }
    return best;
}

// Replaces s^{2k} by t^k; odd or negative powers of s break the one-cut ansatz.
PSeries s_to_t(const PSeries& p, const VarTablePtr& ttable, const TruncationPolicy& pol)
{
    const VarTable& st = *p.table();
    std::size_t si = st.index("s");
    std::size_t ti = ttable->index("t");
    std::vector<std::size_t> map(st.size());
    for (std::size_t i = 0; i < st.size(); ++i) {
        map[i] = i == si ? ti : ttable->index(st[i].name);
    }
    std::vector<PSeries::Term> terms;
    for (const auto& [m, c] : p.terms()) {
        int e = m.e[si];
        if (e < 0 || e % 2 != 0) {
            throw ConsistencyError("power s^" + std::to_string(e) + " survives where an even, non-negative power is required");
        }
        Monomial out;
        for (std::size_t i = 0; i < st.size(); ++i) {
            out.e[map[i]] = static_cast<Exponent>(i == si ? e / 2 : m.e[i]);
        }
        terms.emplace_back(out, c);
    }
    return PSeries::from_terms(ttable, std::move(terms), pol).truncated(pol);
}

// Q, omega and f_n from the endpoints.
CutData finish(CouplingFrame fr, PSeries b, PSeries c, const TruncationPolicy& pol, int n_max)
{
    if (n_max < 0) {
        throw DomainError("n_max must be non-negative");
    }
    const VarTablePtr& table = fr.table();
    int kmax = top_index(fr);
    std::vector<PSeries> e = inverse_sqrt_coefficients(b, c, kmax);

    CutData cut{fr, b, c, PSeries(table, pol), PSeries(table, pol), {}, {}, {}};
    LSeries q(table, pol);
    for (int i = 0; i <= kmax - 2; ++i) {
        PSeries qi(table, pol);
        for (int m = i + 2; m <= kmax; ++m) {
            qi -= g_tilde(fr, m, pol) * e[m - 2 - i];
        }
        if (!qi.is_zero()) {
            cut.Q[i] = qi;
            q.add_to(i, qi);
        }
    }

    LSeries d(table, pol);
    d.add_to(2, PSeries::constant(table, Rational(1), pol));
    d.add_to(1, -b);
    d.add_to(0, c);
    int floor = -(n_max + 1) - (kmax - 2);
    LSeries sp = potential_derivative(fr, table, pol);
    cut.omega = ((-sp) - q * ls_sqrt(d, 1, floor)) * Rational(1, 2);
    if (!cut.omega.is_zero() && cut.omega.head() >= 0) {
        throw ConsistencyError("resolvent has a non-negative power of z; the endpoints do not solve the cut equations");
    }
    for (int n = 0; n <= n_max; ++n) {
        cut.f.push_back(cut.omega.coeff(-n - 1));
    }
    PSeries t = PSeries::variable(table, "t", pol);
    if (!(cut.f[0] == t)) {
        throw ConsistencyError("resolvent does not start with t/z");
    }
    return cut;
}

} // namespace

std::vector<PSeries> inverse_sqrt_coefficients(const PSeries& b, const PSeries& c, int n_max)
{
    std::vector<PSeries> e;
    e.push_back(PSeries::constant(b.table(), Rational(1), b.truncation()));
    // (n+1) e_{n+1} = (n + 1/2) b e_n - n c e_{n-1}
    for (int n = 0; n < n_max; ++n) {
        PSeries next = b * e[n] * Rational(2 * n + 1, 2);
        if (n > 0) {
            next -= c * e[n - 1] * Rational(n);
        }
        e.push_back(next / Rational(n + 1));
    }
    return e;
}

CutData solve_one_cut_H(const CouplingFrame& frame, const CutOptions& opts)
{
    if (opts.degree < 1) {
        throw PreconditionError("the H-method needs a coupling degree of at least 1");
    }
    CouplingFrame fr = fat_frame(frame);
    CouplingFrame sf = frame.with_extra({laurent_var("s")});
    const VarTablePtr& stable = sf.table();
    TruncationPolicy spol = grade_policy(opts.degree);
    int kmax = top_index(sf);

    std::vector<PSeries> g(kmax + 1, PSeries(stable, spol));
    for (int m = 1; m <= kmax; ++m) {
        g[m] = sf.g(m).truncated(spol);
    }
    PSeries s = PSeries::variable(stable, "s", spol);
    Monomial s_mono = stable->monomial({{"s", 1}});
    PSeries bp(stable, spol);
    PSeries bm(stable, spol);

    bool stable_now = false;
    for (int iter = 0; iter < opts.degree + 2 && !stable_now; ++iter) {
        PSeries ap = (s + bp) * Rational(2);
        PSeries am = -(s + bm) * Rational(2);
        std::vector<PSeries> cn = inverse_sqrt_coefficients(ap + am, ap * am, kmax);
        PSeries r1(stable, spol);
        PSeries r2(stable, spol);
        for (int m = 1; m <= kmax; ++m) {
            if (g[m].is_zero()) {
                continue;
            }
            r1 += g[m] * cn[m - 1];
            r2 += g[m] * cn[m];
        }
        PSeries quad = bp * bp * Rational(3, 2) - bp * bm + bm * bm * Rational(3, 2);
        PSeries sum = (r2 - quad).divide_term(s_mono, Rational(2)).truncated(spol);
        PSeries nbp = (sum + r1) * Rational(1, 2);
        PSeries nbm = (sum - r1) * Rational(1, 2);
        stable_now = nbp == bp && nbm == bm;
        bp = std::move(nbp);
        bm = std::move(nbm);
    }
    if (!stable_now) {
        throw DivergenceError("H-method did not stabilise; numeric couplings need the system method");
    }
    for (const PSeries* x : {&bp, &bm}) {
        if (x->min_exp("s") < 0) {
            throw ConsistencyError("negative power of s in the endpoint deformation");
        }
    }

    TruncationPolicy pol = cut_policy(fr.table(), opts);
    PSeries b = s_to_t((bp - bm) * Rational(2), fr.table(), pol);
    PSeries c = s_to_t(-(s + bp) * (s + bm) * Rational(4), fr.table(), pol);
    CutData cut = finish(fr, b, c, pol, opts.n_max);
    cut.b_plus = bp;
    cut.b_minus = bm;
    return cut;
}

CutData solve_one_cut_even(const CouplingFrame& frame, const CutOptions& opts)
{
    CouplingFrame fr = fat_frame(frame);
    for (int k : fr.active()) {
        if (k % 2 != 0 && !fr.g(k).is_zero()) {
            throw PreconditionError("g" + std::to_string(k) + " is odd; the even method needs an even potential");
        }
    }
    const VarTablePtr& table = fr.table();
    TruncationPolicy pol = cut_policy(table, opts);
    int kmax = top_index(fr);
    PSeries one = PSeries::constant(table, Rational(1), pol);
    PSeries inv = ps_invert(one - fr.g(2).truncated(pol));
    PSeries seed = PSeries::variable(table, "t", pol) * inv * Rational(4);

    // A = 4t/(1-g2) + 2/(1-g2) sum_{n>=2} g_{2n} C(2n,n) A^n / 4^n
    PSeries a2 = seed;
    int last_order = -1;
    for (;;) {
        PSeries sum(table, pol);
        PSeries power = a2;
        for (int n = 2; 2 * n <= kmax; ++n) {
            power = power * a2;
            sum += fr.g(2 * n).truncated(pol) * power * (binomial(2 * n, n) / Rational(4).pow(n));
        }
        PSeries next = seed + inv * sum * Rational(2);
        PSeries diff = next - a2;
        a2 = std::move(next);
        if (diff.is_zero()) {
            break;
        }
        int order = combined_order(diff);
        if (order <= last_order) {
            throw DivergenceError("even one-cut iteration is not gaining order");
        }
        last_order = order;
    }
    return finish(fr, PSeries(table, pol), -a2, pol, opts.n_max);
}

CutData solve_one_cut_system(const CouplingFrame& frame, const CutOptions& opts)
{
    CouplingFrame fr = fat_frame(frame);
    const VarTablePtr& table = fr.table();
    TruncationPolicy pol = cut_policy(table, opts);
    int kmax = top_index(fr);
    PSeries one = PSeries::constant(table, Rational(1), pol);
    PSeries inv = ps_invert(one - fr.g(2).truncated(pol));
    PSeries t = PSeries::variable(table, "t", pol);

    std::vector<PSeries> g(kmax + 1, PSeries(table, pol));
    for (int m = 1; m <= kmax; ++m) {
        if (m != 2) {
            g[m] = fr.g(m).truncated(pol);
        }
    }

    // H_{-1} = 0:  (1 - g2) b = 2 sum_{m != 2} g_m e_{m-1}
    // H_{-2} = 2t: (1 - g2)(3/8 b^2 - c/2) = 2t + sum_{m != 2} g_m e_m
    PSeries b(table, pol);
    PSeries c = t * Rational(-4);
    int last_order = -1;
    for (;;) {
        std::vector<PSeries> e = inverse_sqrt_coefficients(b, c, kmax);
        PSeries rb(table, pol);
        for (int m = 1; m <= kmax; ++m) {
            if (!g[m].is_zero()) {
                rb += g[m] * e[m - 1];
            }
        }
        PSeries nb = inv * rb * Rational(2);

        e = inverse_sqrt_coefficients(nb, c, kmax);
        PSeries rc = t * Rational(2);
        for (int m = 1; m <= kmax; ++m) {
            if (!g[m].is_zero()) {
                rc += g[m] * e[m];
            }
        }
        PSeries nc = nb * nb * Rational(3, 4) - inv * rc * Rational(2);

        int order = std::min(combined_order(nb - b), combined_order(nc - c));
        b = std::move(nb);
        c = std::move(nc);
        if (order == INT_MAX) {
            break;
        }
        if (order <= last_order) {
            throw DivergenceError("one-cut system iteration is not gaining t-order; cap the t-order or keep couplings symbolic");
        }
        last_order = order;
    }
    return finish(fr, b, c, pol, opts.n_max);
}

PSeries discriminant(const std::vector<PSeries>& a)
{
    switch (a.size()) {
    case 3:
        return a[1] * a[1] - a[2] * a[0] * Rational(4);
    case 4: {
        const PSeries &A = a[3], &B = a[2], &C = a[1], &D = a[0];
        return B * B * C * C - A * C * C * C * Rational(4) - B * B * B * D * Rational(4) -
               A * A * D * D * Rational(27) + A * B * C * D * Rational(18);
    }
    case 5: {
        const PSeries &A = a[4], &B = a[3], &C = a[2], &D = a[1], &E = a[0];
        PSeries A2 = A * A, B2 = B * B, C2 = C * C, D2 = D * D, E2 = E * E;
        return A2 * A * E2 * E * Rational(256) - A2 * B * D * E2 * Rational(192) - A2 * C2 * E2 * Rational(128) +
               A2 * C * D2 * E * Rational(144) - A2 * D2 * D2 * Rational(27) + A * B2 * C * E2 * Rational(144) -
               A * B2 * D2 * E * Rational(6) - A * B * C2 * D * E * Rational(80) + A * B * C * D2 * D * Rational(18) +
               A * C2 * C2 * E * Rational(16) - A * C2 * C * D2 * Rational(4) - B2 * B2 * E2 * Rational(27) +
               B2 * B * C * D * E * Rational(18) - B2 * B * D2 * D * Rational(4) - B2 * C2 * C * E * Rational(4) +
               B2 * C2 * D2;
    }
    default:
        throw ScopeError("closed discriminants cover degrees 2 to 4 only");
    }
}

CheckReport discriminant_check(const CutData& cut)
{
    const CouplingFrame& fr = cut.frame;
    const TruncationPolicy& pol = cut.f.front().truncation();
    LSeries sp = potential_derivative(fr, fr.table(), pol);
    LSeries p = sp * sp - loop_polynomial(fr, cut.f, pol) * Rational(4);
    int deg = p.head();
    std::vector<PSeries> coeffs;
    for (int k = 0; k <= deg; ++k) {
        coeffs.push_back(p.coeff(k));
    }
    bool even = true;
    for (int k = 1; k <= deg; k += 2) {
        even = even && coeffs[k].is_zero();
    }
    if (even && (deg == 6 || deg == 8)) {
        std::vector<PSeries> u;
        for (int k = 0; k <= deg; k += 2) {
            u.push_back(coeffs[k]);
        }
        coeffs = std::move(u);
        deg /= 2;
    }
    if (deg < 2 || deg > 4) {
        throw ScopeError("S'^2 - 4P has degree " + std::to_string(p.head()) + "; the discriminant check covers 2 to 4 and even 6 or 8");
    }
    if (deg == 2) {
        return CheckReport{true, 0, "quadratic with simple roots; no repeated factor required", ""};
    }
    PSeries disc = discriminant(coeffs);
    CheckReport r{true, 1, "", ""};
    if (!disc.is_zero()) {
        r.ok = false;
        const auto& [m, c] = disc.terms().front();
        r.detail = "discriminant has term " + c.str() + "*" + render_monomial(*disc.table(), m);
    }
    return r;
}

} // namespace mmcurve

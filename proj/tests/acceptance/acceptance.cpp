// Acceptance run: one PASS/FAIL line per criterion. Expected values come from oracles written
// here (a small standalone polynomial type, closed-form sequences, transcribed tables), not from
// the library's own golden suites.

#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/couplings.hpp>
#include <mmcurve/fat.hpp>
#include <mmcurve/lagrange.hpp>
#include <mmcurve/one_cut.hpp>
#include <mmcurve/rooted_tree.hpp>
#include <mmcurve/sequences.hpp>
#include <mmcurve/series_io.hpp>
#include <mmcurve/thin.hpp>

namespace {

using mmcurve::PSeries;
using mmcurve::Rational;

// ---- standalone oracle arithmetic ----------------------------------------------------

using Exps = std::vector<int>;

// Sparse polynomial in a fixed number of variables; `keep` prunes monomials after each product.
struct Poly {
    std::map<Exps, mpq_class> terms;

    static Poly constant(std::size_t nvars, const mpq_class& c)
    {
        Poly p;
        if (c != 0) {
            p.terms[Exps(nvars, 0)] = c;
        }
        return p;
    }
    static Poly monomial(Exps e, const mpq_class& c)
    {
        Poly p;
        if (c != 0) {
            p.terms[std::move(e)] = c;
        }
        return p;
    }
    void add(const Exps& e, const mpq_class& c)
    {
        mpq_class& slot = terms[e];
        slot += c;
        if (slot == 0) {
            terms.erase(e);
        }
    }
    Poly& operator+=(const Poly& o)
    {
        for (const auto& [e, c] : o.terms) {
            add(e, c);
        }
        return *this;
    }
    Poly scaled(const mpq_class& s) const
    {
        Poly p;
        for (const auto& [e, c] : terms) {
            if (c * s != 0) {
                p.terms[e] = c * s;
            }
        }
        return p;
    }
    mpq_class at(const Exps& e) const
    {
        auto it = terms.find(e);
        return it == terms.end() ? mpq_class(0) : it->second;
    }
};

using Keep = std::function<bool(const Exps&)>;

Poly mul(const Poly& a, const Poly& b, const Keep& keep)
{
    Poly out;
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            Exps e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            if (keep(e)) {
                out.add(e, ca * cb);
            }
        }
    }
    return out;
}

mpq_class q(const Rational& r)
{
    return r.get();
}

mpz_class fact(int n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class choose(int n, int k)
{
    if (k < 0 || k > n) {
        return 0;
    }
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpq_class ratio(const mpz_class& a, const mpz_class& b)
{
    mpq_class r(a, b);
    r.canonicalize();
    return r;
}

mpz_class dfact(int n)
{
    if (n <= 0) {
        return 1;
    }
    mpz_class r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpq_class pow_q(const mpq_class& b, int e)
{
    mpq_class r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

// Library series -> oracle polynomial over the named variables; any other variable must be absent.
bool to_poly(const PSeries& s, const std::vector<std::string>& names, Poly& out, std::string& why)
{
    const auto& table = *s.table();
    std::vector<std::size_t> idx;
    for (const auto& n : names) {
        idx.push_back(table.find(n));
    }
    for (const auto& [m, c] : s.terms()) {
        Exps e(names.size(), 0);
        for (std::size_t i = 0; i < table.size(); ++i) {
            bool named = false;
            for (std::size_t j = 0; j < idx.size(); ++j) {
                if (idx[j] == i) {
                    e[j] = m[i];
                    named = true;
                }
            }
            if (!named && m[i] != 0) {
                why = "unexpected variable " + table[i].name;
                return false;
            }
        }
        out.add(e, q(c));
    }
    return true;
}

std::string show(const Exps& e, const std::vector<std::string>& names)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0) {
            s += (s.empty() ? "" : "*") + names[i] + "^" + std::to_string(e[i]);
        }
    }
    return s.empty() ? "1" : s;
}

// ---- criterion bookkeeping -----------------------------------------------------------

struct Outcome {
    bool ok = true;
    long compared = 0;
    std::string first_failure;

    void expect(bool cond, const std::string& what)
    {
        ++compared;
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
    void same(const Poly& got, const Poly& want, const std::vector<std::string>& names, const std::string& what)
    {
        std::map<Exps, bool> keys;
        for (const auto& [e, c] : got.terms) {
            keys[e] = true;
        }
        for (const auto& [e, c] : want.terms) {
            keys[e] = true;
        }
        for (const auto& [e, unused] : keys) {
            mpq_class g = got.at(e);
            mpq_class w = want.at(e);
            expect(g == w, what + ": coefficient of " + show(e, names) + " is " + g.get_str() + ", expected " +
                               w.get_str());
            if (!ok) {
                return;
            }
        }
    }
    void series(const PSeries& s, const Poly& want, const std::vector<std::string>& names, const std::string& what)
    {
        Poly got;
        std::string why;
        if (!to_poly(s, names, got, why)) {
            expect(false, what + ": " + why);
            return;
        }
        same(got, want, names, what);
    }
    void report(const mmcurve::CheckReport& r, const std::string& what)
    {
        compared += r.checked;
        if (!r.ok && ok) {
            ok = false;
            first_failure = what + ": " + r.detail;
        }
    }
};

// Lagrange coefficients by the residue formula: [v^n] w = (1/n) [w^(n-1)] phi(w)^n.
// phi is given as coefficients in w over an oracle polynomial ring; returns w(v) with v appended
// as the last variable.
Poly lagrange_residue(const std::vector<Poly>& phi, int order, const Keep& keep)
{
    // Polynomials in w with Poly coefficients, truncated at w^(order-1).
    using WPoly = std::vector<Poly>;
    auto wmul = [&](const WPoly& a, const WPoly& b) {
        WPoly out(order);
        for (int i = 0; i < order; ++i) {
            for (int j = 0; i + j < order; ++j) {
                if (i < static_cast<int>(a.size()) && j < static_cast<int>(b.size())) {
                    out[i + j] += mul(a[i], b[j], keep);
                }
            }
        }
        return out;
    };
    WPoly base(order);
    for (int i = 0; i < order && i < static_cast<int>(phi.size()); ++i) {
        base[i] = phi[i];
    }
    Poly w;
    WPoly power = base;
    for (int n = 1; n <= order; ++n) {
        if (n > 1) {
            power = wmul(power, base);
        }
        for (const auto& [e, c] : power[n - 1].terms) {
            Exps ev = e;
            ev.push_back(n);
            w.add(ev, c / n);
        }
    }
    return w;
}

// ---- criteria ------------------------------------------------------------------------

const std::vector<std::string> kNGV3 = {"N", "g3", "v"};
const std::vector<std::string> kNGV4 = {"N", "g4", "v"};

Outcome criterion_1()
{
    Outcome o;
    const int order = 14;
    const int degree = 4;
    PSeries z = mmcurve::thin_z_of_v(mmcurve::CouplingFrame::parse("g3"), order, degree);

    // phi(w) = 2N - w^2 + g3 w^3 in variables (N, g3).
    Keep keep = [&](const Exps& e) { return e[1] <= degree; };
    std::vector<Poly> phi = {Poly::monomial({1, 0}, 2), Poly{}, Poly::monomial({0, 0}, -1),
                             Poly::monomial({0, 1}, 1)};
    o.series(z, lagrange_residue(phi, order, keep), kNGV3, "z(v) against the residue formula");

    // The displayed expansion, term by term as (coefficient, 2N-power, g3-power, v-power).
    const int shown[][4] = {
        {1, 1, 0, 1},      {-1, 2, 0, 3},      {1, 3, 1, 4},      {2, 3, 0, 5},       {-5, 4, 1, 6},
        {3, 5, 2, 7},      {-5, 4, 0, 7},      {21, 5, 1, 8},     {-28, 6, 2, 9},     {14, 5, 0, 9},
        {12, 7, 3, 10},    {-84, 6, 1, 10},    {180, 7, 2, 11},   {-42, 6, 0, 11},    {-165, 8, 3, 12},
        {330, 7, 1, 12},   {55, 9, 4, 13},     {-990, 8, 2, 13},  {132, 7, 0, 13},    {1430, 9, 3, 14},
        {-1287, 8, 1, 14},
    };
    Poly want;
    for (const auto& t : shown) {
        want.add({t[1], t[2], t[3]}, mpq_class(t[0]) * pow_q(2, t[1]));
    }
    o.series(z, want, kNGV3, "z(v) against the displayed expansion");
    return o;
}

Outcome criterion_2()
{
    Outcome o;
    const int m_max = 7;
    const int order = 2 * m_max + 1;
    const int degree = m_max / 2;
    PSeries z = mmcurve::thin_z_of_v(mmcurve::CouplingFrame::parse("g4"), order, degree);

    Keep keep = [&](const Exps& e) { return e[1] <= degree; };
    std::vector<Poly> phi = {Poly::monomial({1, 0}, 2), Poly{}, Poly::monomial({0, 0}, -1), Poly{},
                             Poly::monomial({0, 1}, 1)};
    Poly lag = lagrange_residue(phi, order, keep);
    o.series(z, lag, kNGV4, "z(v) against the residue formula");

    Poly closed;
    for (int m = 0; m <= m_max; ++m) {
        for (int b = 0; 2 * b <= m; ++b) {
            mpq_class c = ratio(fact(2 * m), fact(b) * fact(m - 2 * b) * fact(m + 1 + b));
            c *= pow_q(2, m + b + 1) * (m % 2 == 0 ? 1 : -1);
            closed.add({m + b + 1, b, 2 * m + 1}, c);
        }
    }
    o.series(z, closed, kNGV4, "odd coefficients against the closed double sum");
    for (const auto& [e, c] : lag.terms) {
        o.expect(e[2] % 2 == 1, "even power v^" + std::to_string(e[2]) + " present");
    }
    return o;
}

Outcome criterion_3()
{
    Outcome o;
    PSeries z = mmcurve::thin_z_of_v(mmcurve::CouplingFrame::parse("g1,g2,g3,g4,g5"), 10, 6);
    std::size_t ni = z.table()->index("N");
    for (const auto& [m, c] : z.terms()) {
        mpq_class scaled = q(c) / pow_q(2, m[ni]);
        o.expect(scaled.get_den() == 1, "non-integral coefficient " + scaled.get_str() + " at " +
                                            mmcurve::render_monomial(*z.table(), m));
    }
    o.expect(z.size() > 100, "suspiciously few terms in z(v)");
    return o;
}

Outcome criterion_4()
{
    Outcome o;
    const int d = 9;
    {
        PSeries i0 = mmcurve::compute_I0(mmcurve::CouplingFrame::parse("g1,g2"), d);
        Poly want;
        for (int n = 0; n + 1 <= d; ++n) {
            want.add({1, n}, 1);
        }
        o.series(i0, want, {"g1", "g2"}, "I0 on (g1,g2)");
    }
    {
        PSeries i0 = mmcurve::compute_I0(mmcurve::CouplingFrame::parse("g1,g3"), d);
        Poly want;
        for (int m = 0; 2 * m + 1 <= d; ++m) {
            want.add({m + 1, m}, ratio(choose(2 * m, m), m + 1));
        }
        o.series(i0, want, {"g1", "g3"}, "I0 on (g1,g3)");
    }
    {
        PSeries i0 = mmcurve::compute_I0(mmcurve::CouplingFrame::parse("g1,g4"), d);
        Poly want;
        for (int m = 0; 3 * m + 1 <= d; ++m) {
            want.add({2 * m + 1, m}, ratio(choose(3 * m, m), 2 * m + 1));
        }
        o.series(i0, want, {"g1", "g4"}, "I0 on (g1,g4)");
    }
    {
        const int edges = 6;
        auto fr = mmcurve::CouplingFrame::symbolic(mmcurve::FrameTag::t, {0, 1, 2, 3, 4, 5, 6});
        std::vector<std::string> names;
        for (int n = 0; n <= 6; ++n) {
            names.push_back("t" + std::to_string(n));
        }
        for (int k = 0; k <= 2; ++k) {
            Poly trees;
            std::string why;
            o.expect(to_poly(mmcurve::tree_oracle(k, edges, fr), names, trees, why), why);
            PSeries ik = k == 0 ? mmcurve::compute_I0(fr, edges) : mmcurve::compute_Ik(fr, k, edges - k);
            o.series(ik, trees.scaled(mpq_class(fact(k + 1))), names, "I_" + std::to_string(k) + " against trees");
        }
    }
    return o;
}

Outcome criterion_5()
{
    Outcome o;
    const int m_max = 10;
    auto s = mmcurve::fat_fn_virasoro(mmcurve::CouplingFrame::make(mmcurve::FrameTag::g, {}), 2 * m_max, 0);
    for (int n = 0; n <= 2 * m_max; ++n) {
        Poly want;
        if (n % 2 == 0) {
            int m = n / 2;
            want.add({m + 1}, ratio(choose(2 * m, m), m + 1));
        }
        o.series(s.f[n], want, {"t"}, "f_" + std::to_string(n));
    }
    o.report(mmcurve::fat_y2_minus_check(s, 2 * m_max), "(Y^2)_-");
    return o;
}

Outcome criterion_6()
{
    Outcome o;
    const int n_max = 7;
    auto s = mmcurve::fat_fn_virasoro(mmcurve::CouplingFrame::parse("g1"), n_max, n_max);
    // Table rows: (coefficient, t-power, g1-power).
    const std::vector<std::vector<std::array<int, 3>>> table = {
        {{1, 1, 0}},
        {{1, 1, 1}},
        {{1, 1, 2}, {1, 2, 0}},
        {{1, 1, 3}, {3, 2, 1}},
        {{1, 1, 4}, {6, 2, 2}, {2, 3, 0}},
        {{1, 1, 5}, {10, 2, 3}, {10, 3, 1}},
        {{1, 1, 6}, {15, 2, 4}, {30, 3, 2}, {5, 4, 0}},
        {{1, 1, 7}, {21, 2, 5}, {70, 3, 3}, {35, 4, 1}},
    };
    for (int n = 0; n <= n_max; ++n) {
        Poly want;
        for (const auto& [c, te, ge] : table[n]) {
            want.add({te, ge}, c);
        }
        o.series(s.f[n], want, {"t", "g1"}, "f_" + std::to_string(n) + " table");
        if (n == 0) {
            continue;
        }
        Poly motz;
        for (int k = 0; 2 * k <= n; ++k) {
            mpq_class c = ratio(fact(n), fact(n - 2 * k) * fact(k) * fact(k + 1));
            motz.add({k + 1, n - 2 * k}, c);
        }
        o.series(s.f[n], motz, {"t", "g1"}, "f_" + std::to_string(n) + " Motzkin sum");
    }
    return o;
}

mpq_class trivalent(int m)
{
    mpq_class c = pow_q(2, 2 * m + 1) * mpq_class(dfact(3 * m));
    c /= mpq_class(fact(m + 2) * dfact(m));
    return c;
}

Outcome criterion_7()
{
    Outcome o;
    const int order = 10;
    auto s = mmcurve::fat_fn_virasoro(mmcurve::CouplingFrame::parse("g3"), 1, 2 * order + 1);
    std::vector<mpq_class> y(order + 1);
    for (int m = 0; m <= order; ++m) {
        y[m] = q(s.f[1].coeff({{"g3", 2 * m + 1}, {"t", m + 2}}));
        if (m <= 6) {
            o.expect(y[m] == trivalent(m), "f_1 coefficient " + std::to_string(m) + " is " + y[m].get_str() +
                                               ", expected " + trivalent(m).get_str());
        }
    }
    // 64x^3y^3 + x(1-96x)y^2 + (30x-1)y - 27x + 1 in x up to x^order.
    Keep keep = [&](const Exps& e) { return e[0] <= order; };
    Poly Y;
    for (int m = 0; m <= order; ++m) {
        Y.add({m}, y[m]);
    }
    Poly Y2 = mul(Y, Y, keep);
    Poly Y3 = mul(Y2, Y, keep);
    Poly lhs = mul(Poly::monomial({3}, 64), Y3, keep);
    Poly xq;
    xq.add({1}, 1);
    xq.add({2}, -96);
    lhs += mul(xq, Y2, keep);
    Poly lin;
    lin.add({1}, 30);
    lin.add({0}, -1);
    lhs += mul(lin, Y, keep);
    lhs.add({1}, -27);
    lhs.add({0}, 1);
    o.same(lhs, Poly{}, {"x"}, "cubic relation");
    return o;
}

Outcome criterion_8()
{
    Outcome o;
    auto s = mmcurve::fat_fn_virasoro(mmcurve::CouplingFrame::parse("g4"), 10, 6);
    Poly f2;
    for (int n = 0; n <= 6; ++n) {
        mpq_class c = mpq_class(2 * fact(2 * n)) * pow_q(3, n);
        c /= mpq_class(fact(n) * fact(n + 2));
        f2.add({n, n + 2}, c);
    }
    o.series(s.f[2], f2, {"g4", "t"}, "f_2");
    o.expect(s.f[1].is_zero(), "f_1 does not vanish");
    const std::vector<std::vector<long>> lists = {
        {2, 9, 54, 378, 2916, 24057},
        {5, 36, 270, 2160, 18225, 160380},
        {14, 140, 1260, 11340, 103950},
        {42, 540, 5670, 56700, 561330},
    };
    for (std::size_t i = 0; i < lists.size(); ++i) {
        int n = 4 + 2 * static_cast<int>(i);
        int lead = n / 2 + 1;
        for (std::size_t j = 0; j < lists[i].size(); ++j) {
            int k = static_cast<int>(j);
            mpq_class got = q(s.f[n].coeff({{"g4", k}, {"t", lead + k}}));
            o.expect(got == lists[i][j], "f_" + std::to_string(n) + " at g4^" + std::to_string(k) + " is " +
                                             got.get_str());
        }
    }
    return o;
}

Outcome criterion_9()
{
    Outcome o;
    const int n_max = 8;
    auto compare = [&](const std::string& couplings, int degree) {
        auto fr = mmcurve::CouplingFrame::parse(couplings);
        auto cut = mmcurve::solve_one_cut_H(fr, mmcurve::CutOptions{degree, -1, n_max});
        auto s = mmcurve::fat_fn_virasoro(fr, n_max, degree);
        for (int n = 0; n <= n_max; ++n) {
            PSeries diff = cut.f[n] - s.f[n].rebase(cut.f[n].table());
            o.expect(diff.is_zero(), couplings + " f_" + std::to_string(n) + " differs");
        }
    };
    compare("g1,g2,g3", 4);
    for (int k = 1; k <= 6; ++k) {
        compare("g" + std::to_string(k), 8);
    }
    return o;
}

Outcome criterion_10()
{
    Outcome o;
    const std::vector<std::string> gt3 = {"g3", "t"};
    {
        auto cut = mmcurve::solve_one_cut_H(mmcurve::CouplingFrame::parse("g3"), mmcurve::CutOptions{9, -1, 2});
        Poly b;
        for (auto [c, g, t] : {std::array<long, 3>{4, 1, 1}, {24, 3, 2}, {256, 5, 3}, {3360, 7, 4}, {49152, 9, 5}}) {
            b.add({static_cast<int>(g), static_cast<int>(t)}, c);
        }
        Poly c;
        for (auto [k, g, t] :
             {std::array<long, 3>{-4, 0, 1}, {-12, 2, 2}, {-112, 4, 3}, {-1392, 6, 4}, {-19776, 8, 5}}) {
            c.add({static_cast<int>(g), static_cast<int>(t)}, k);
        }
        o.series(cut.b, b, gt3, "g3-line b");
        o.series(cut.c, c, gt3, "g3-line c");
    }
    {
        auto cut = mmcurve::solve_one_cut_system(mmcurve::CouplingFrame::parse("g5"), mmcurve::CutOptions{-1, 12, 3});
        const std::vector<std::string> gt5 = {"g5", "t"};
        auto upto = [](const PSeries& p, int t_max) { return p.with_cap("t", t_max); };
        auto list = [](std::initializer_list<std::array<long, 3>> rows) {
            Poly p;
            for (auto [c, g, t] : rows) {
                p.add({static_cast<int>(g), static_cast<int>(t)}, c);
            }
            return p;
        };
        o.series(upto(cut.b, 11), list({{12, 1, 2}, {2592, 3, 5}, {1143072, 5, 8}, {638254080, 7, 11}}), gt5,
                 "g5-line b");
        o.series(upto(cut.c, 10), list({{-4, 0, 1}, {-252, 2, 4}, {-91584, 4, 7}, {-47262528, 6, 10}}), gt5,
                 "g5-line c");
        o.series(cut.f[1], list({{2, 1, 3}, {216, 3, 6}, {63504, 5, 9}, {26593920, 7, 12}}), gt5, "g5-line f_1");
        o.series(upto(cut.f[2], 11), list({{1, 0, 2}, {36, 2, 5}, {8640, 4, 8}, {3312576, 6, 11}}), gt5,
                 "g5-line f_2");
        o.series(upto(cut.f[3], 10), list({{9, 1, 4}, {1512, 3, 7}, {509328, 5, 10}}), gt5, "g5-line f_3");
    }
    {
        const int n_max = 5;
        auto cut = mmcurve::solve_one_cut_even(mmcurve::CouplingFrame::parse("g6"), mmcurve::CutOptions{n_max + 1, -1, 4});
        const std::vector<std::string> gt6 = {"g6", "t"};
        Poly f2;
        for (int n = 0; n <= n_max; ++n) {
            mpq_class c = pow_q(2, n) * mpq_class(choose(3 * n, n));
            c /= (n + 1) * (2 * n + 1);
            f2.add({n, 2 * n + 2}, c * pow_q(5, n));
        }
        Poly got2;
        std::string why;
        o.expect(to_poly(cut.f[2], gt6, got2, why), why);
        Poly low2;
        for (const auto& [e, c] : got2.terms) {
            if (e[0] <= n_max) {
                low2.add(e, c);
            }
        }
        o.same(low2, f2, gt6, "g6-line f_2");

        // a^2 = sum ternary(n) (5 g6/8)^n (4t)^(2n+1); f_4 = 9/40 a^4 t - (a^2 - 4t)/(25 g6).
        Keep keep = [&](const Exps& e) { return e[0] <= n_max + 1; };
        Poly a2;
        for (int n = 0; n <= n_max + 1; ++n) {
            mpq_class c = ratio(choose(3 * n, n), 2 * n + 1);
            a2.add({n, 2 * n + 1}, c * pow_q(mpq_class(5, 8), n) * pow_q(4, 2 * n + 1));
        }
        Poly f4 = mul(mul(a2, a2, keep), Poly::monomial({0, 1}, mpq_class(9, 40)), keep);
        for (const auto& [e, c] : a2.terms) {
            if (e[0] >= 1) {
                f4.add({e[0] - 1, e[1]}, -c / 25);
            }
        }
        Poly got4;
        o.expect(to_poly(cut.f[4], gt6, got4, why), why);
        Poly low4;
        Poly want4;
        for (const auto& [e, c] : got4.terms) {
            if (e[0] <= n_max) {
                low4.add(e, c);
            }
        }
        for (const auto& [e, c] : f4.terms) {
            if (e[0] <= n_max) {
                want4.add(e, c);
            }
        }
        o.same(low4, want4, gt6, "g6-line f_4 closed form");
    }
    return o;
}

Outcome criterion_11()
{
    Outcome o;
    o.report(mmcurve::discriminant_check(
                 mmcurve::solve_one_cut_H(mmcurve::CouplingFrame::parse("g3"), mmcurve::CutOptions{12, -1, 2})),
             "g3-line quartic");
    const int d = 8;
    auto s = mmcurve::fat_fn_virasoro(mmcurve::CouplingFrame::parse("g4"), 2, d);
    Keep keep = [&](const Exps& e) { return e[0] <= d; };
    Poly f2;
    std::string why;
    o.expect(to_poly(s.f[2], {"g4", "t"}, f2, why), why);
    Poly g4 = Poly::monomial({1, 0}, 1);
    Poly t = Poly::monomial({0, 1}, 1);
    Poly factor = mul(mul(mul(f2, f2, keep), mul(g4, g4, keep), keep), Poly::constant(2, 27), keep);
    factor += mul(g4, mul(t, mul(t, t, keep), keep), keep).scaled(16);
    factor += mul(f2, mul(g4, t, keep), keep).scaled(-18);
    factor += mul(t, t, keep).scaled(-1);
    factor += f2;
    o.same(factor, Poly{}, {"g4", "t"}, "g4-line factor");
    return o;
}

Outcome criterion_12()
{
    Outcome o;
    auto ids = mmcurve::identity_checks(10);
    o.expect(ids.size() == 4, "expected four identities");
    for (const auto& r : ids) {
        o.report(r.report, r.name);
        if (r.name.rfind("arches", 0) == 0) {
            o.expect(r.note == "numerically verified, no independent proof", "arches identity is not labelled");
        }
    }
    const long arches[] = {1, 3, 16, 105};
    for (int n = 0; n < 4; ++n) {
        o.expect(q(mmcurve::seq_eval("arches", n)) == arches[n], "arches(" + std::to_string(n) + ")");
    }
    return o;
}

Outcome criterion_13()
{
    Outcome o;
    std::mt19937 rng(424242);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
    auto table = mmcurve::make_table({mmcurve::aux_var("w"), mmcurve::aux_var("v")});
    const int order = 8;
    Keep keep = [](const Exps&) { return true; };
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PSeries> J;
        std::vector<Poly> phi;
        for (int n = 0; n <= 3; ++n) {
            int num = pick(-9, 9);
            if (n == 0 && num == 0) {
                num = 1;
            }
            Rational c(num, pick(1, 6));
            J.push_back(PSeries::constant(table, c));
            phi.push_back(Poly::constant(0, q(c) / mpq_class(fact(n))));
        }
        mmcurve::InversionProblem p{mmcurve::phi_from_J(J, table, "w"), order};
        PSeries a = mmcurve::invert_fixed_point(p);
        PSeries b = mmcurve::invert_composition_formula(J, table, "v", order);
        std::string label = "problem " + std::to_string(trial);
        o.expect((a - b).is_zero(), label + ": fixed point and composition differ");
        o.expect(mmcurve::compose_back_residual(p, a).is_zero(), label + ": compose-back fails");
        o.series(a, lagrange_residue(phi, order, keep), {"v"}, label + " against the residue formula");
    }
    return o;
}

Outcome criterion_14()
{
    Outcome o;
    std::mt19937 rng(777);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
    for (int i = 0; i < 10; ++i) {
        int K = pick(1, 4);
        std::vector<int> idx;
        for (int k = 1; k <= K; ++k) {
            if (k == K || pick(0, 1) == 1) {
                idx.push_back(k);
            }
        }
        auto fr = mmcurve::CouplingFrame::symbolic(mmcurve::FrameTag::g, idx);
        int degree = pick(1, 4);
        int tail = pick(K + 1, 10);
        std::string label = "frame " + std::to_string(i);
        auto d = mmcurve::thin_deformation(fr, tail, degree);
        o.report(mmcurve::thin_y2_minus_check(d), label + " thin");
        int n_max = tail + std::max(fr.max_g_index(), 2);
        o.report(mmcurve::fat_y2_minus_check(mmcurve::fat_fn_virasoro(fr, n_max, degree), tail), label + " fat");
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"thin g3-line z(v) through v^14", criterion_1},
        {"thin g4-line odd closed form, vanishing even coefficients", criterion_2},
        {"thin z(v) integral in (v, 2N, g1..g5) through degree 6", criterion_3},
        {"I0 on coupling lines and rooted-tree agreement", criterion_4},
        {"fat Catalan baseline and (Y^2)_- = 0", criterion_5},
        {"fat g1-line Motzkin table", criterion_6},
        {"fat g3-line trivalent counts and cubic relation", criterion_7},
        {"fat g4-line 4-regular counts and listed correlators", criterion_8},
        {"one-cut resolvent equals the fat recursion", criterion_9},
        {"one-cut endpoints on the g3, g5 and g6 lines", criterion_10},
        {"discriminant vanishing", criterion_11},
        {"combinatorial identities", criterion_12},
        {"Lagrange duality on 20 random problems", criterion_13},
        {"thin and fat (Y^2)_- on random frames", criterion_14},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.first_failure = std::string("exception: ") + e.what();
        }
        failed += o.ok ? 0 : 1;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " ("
                  << o.compared << " comparisons)\n";
        if (!o.ok) {
            std::cout << "    " << o.first_failure << '\n';
        }
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}

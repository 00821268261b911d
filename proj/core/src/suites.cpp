#include <mmcurve/suites.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <thread>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/couplings.hpp>
#include <mmcurve/error.hpp>
#include <mmcurve/fat.hpp>
#include <mmcurve/lagrange.hpp>
#include <mmcurve/one_cut.hpp>
#include <mmcurve/rooted_tree.hpp>
#include <mmcurve/sequences.hpp>
#include <mmcurve/series_io.hpp>
#include <mmcurve/thin.hpp>

namespace mmcurve {

namespace {

constexpr std::uint32_t kSeed = 20240611;

CheckReport same_series(const PSeries& got, const PSeries& want, const std::string& what)
{
    PSeries diff = got - want;
    CheckReport r{true, static_cast<long>(std::max(got.size(), want.size())), "", ""};
    if (!diff.is_zero()) {
        const auto& [m, c] = diff.terms().front();
        r.ok = false;
        r.detail = what + ": differs by " + c.str() + "*" + render_monomial(*diff.table(), m);
    }
    return r;
}

// Folds reports in order; the first failure wins.
CheckReport combine(std::initializer_list<CheckReport> parts)
{
    CheckReport out;
    for (const CheckReport& p : parts) {
        out.checked += p.checked;
        if (!p.warning.empty() && out.warning.empty()) {
            out.warning = p.warning;
        }
        if (!p.ok && out.ok) {
            out.ok = false;
            out.detail = p.detail;
        }
    }
    return out;
}

void fold(CheckReport& acc, const CheckReport& part, const std::string& label = "")
{
    acc.checked += part.checked;
    if (!part.ok && acc.ok) {
        acc.ok = false;
        acc.detail = label.empty() ? part.detail : label + ": " + part.detail;
    }
    if (!part.warning.empty() && acc.warning.empty()) {
        acc.warning = part.warning;
    }
}

PSeries golden(const PSeries& like, std::string_view text)
{
    return parse_series(text, like.table(), like.truncation());
}

CouplingFrame no_couplings()
{
    return CouplingFrame::make(FrameTag::g, {});
}

// ---- thin ---------------------------------------------------------------------------

constexpr std::string_view kThinG3 =
    "(2N)*v - (2N)^2*v^3 + (2N)^3*g3*v^4 + 2*(2N)^3*v^5 - 5*(2N)^4*g3*v^6"
    " + (3*g3^2*(2N)^5 - 5*(2N)^4)*v^7 + 21*g3*(2N)^5*v^8"
    " + (-28*g3^2*(2N)^6 + 14*(2N)^5)*v^9 + (12*g3^3*(2N)^7 - 84*g3*(2N)^6)*v^10"
    " + (180*g3^2*(2N)^7 - 42*(2N)^6)*v^11"
    " + (-165*g3^3*(2N)^8 + 330*g3*(2N)^7)*v^12"
    " + (55*g3^4*(2N)^9 - 990*g3^2*(2N)^8 + 132*(2N)^7)*v^13"
    " + (1430*g3^3*(2N)^9 - 1287*g3*(2N)^8)*v^14";

CheckReport thin_g3_line()
{
    PSeries z = thin_z_of_v(CouplingFrame::parse("g3"), 14, 4);
    return same_series(z, golden(z, kThinG3), "z(v) on the g3-line");
}

CheckReport thin_g4_line()
{
    const int m_max = 7;
    PSeries z = thin_z_of_v(CouplingFrame::parse("g4"), 2 * m_max + 1, m_max / 2);
    const VarTablePtr& table = z.table();
    CheckReport r;
    for (int m = 0; m <= m_max; ++m) {
        fold(r, same_series(z.coefficient_of("v", 2 * m), PSeries(table), "a_" + std::to_string(2 * m)));
        PSeries want(table);
        for (int b = 0; 2 * b <= m; ++b) {
            Rational c = factorial(2 * m) / (factorial(b) * factorial(m - 2 * b) * factorial(m + 1 + b));
            c *= Rational(2).pow(m + b + 1) * Rational(m % 2 == 0 ? 1 : -1);
            want += PSeries::term(table, {{"N", m + b + 1}, {"g4", b}}, c);
        }
        fold(r, same_series(z.coefficient_of("v", 2 * m + 1), want, "a_" + std::to_string(2 * m + 1)));
    }
    return r;
}

CheckReport thin_integrality()
{
    return thin_integrality_check(5, 6, 10);
}

CheckReport renormalized_lines()
{
    const int d = 8;
    CheckReport r;
    {
        CouplingFrame fr = CouplingFrame::parse("g1,g2");
        PSeries i0 = compute_I0(fr, d);
        PSeries one = PSeries::constant(fr.table(), Rational(1), i0.truncation());
        PSeries want = fr.g(1).truncated(i0.truncation()) * ps_invert(one - fr.g(2).truncated(i0.truncation()));
        fold(r, same_series(i0, want, "I0 on (g1,g2)"));
    }
    {
        CouplingFrame fr = CouplingFrame::parse("g1,g3");
        PSeries i0 = compute_I0(fr, 2 * d + 1);
        fold(r, verify_series(i0, {{"g1", 1, 1}, {"g3", 1, 0}}, "catalan", 0, d), "I0 on (g1,g3)");
        PSeries rest = i0;
        for (int m = 0; m <= d; ++m) {
            rest -= PSeries::term(i0.table(), {{"g1", m + 1}, {"g3", m}}, catalan(m));
        }
        fold(r, same_series(rest, PSeries(i0.table()), "I0 on (g1,g3) beyond the Catalan family"));
    }
    {
        CouplingFrame fr = CouplingFrame::parse("g1,g4");
        PSeries i0 = compute_I0(fr, 3 * d + 1);
        PSeries want(i0.table());
        for (int m = 0; m <= d; ++m) {
            want += PSeries::term(i0.table(), {{"g1", 2 * m + 1}, {"g4", m}}, seq_eval("ternary", m));
        }
        fold(r, same_series(i0, want, "I0 on (g1,g4)"));
    }
    {
        const int edges = 6;
        CouplingFrame fr = CouplingFrame::symbolic(FrameTag::t, {0, 1, 2, 3, 4, 5, 6});
        for (int k = 0; k <= 2; ++k) {
            PSeries trees = tree_oracle(k, edges, fr);
            PSeries ik = compute_Ik(fr, k, edges - k) / factorial(k + 1);
            fold(r, same_series(ik, trees, "I_" + std::to_string(k) + " against rooted trees"));
        }
    }
    return r;
}

CheckReport lagrange_duality()
{
    std::mt19937 rng(kSeed);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
    VarTablePtr table = make_table({aux_var("w"), aux_var("v")});
    CheckReport r;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PSeries> J;
        for (int n = 0; n <= 3; ++n) {
            int num = pick(-9, 9);
            if (n == 0 && num == 0) {
                num = 1;
            }
            J.push_back(PSeries::constant(table, Rational(num, pick(1, 6))));
        }
        InversionProblem p{phi_from_J(J, table, "w"), 8};
        PSeries a = invert_fixed_point(p);
        PSeries b = invert_composition_formula(J, table, "v", 8);
        std::string label = "problem " + std::to_string(trial);
        fold(r, same_series(a, b, label + " fixed point vs composition"));
        fold(r, same_series(compose_back_residual(p, a), PSeries(table), label + " compose-back"));
    }
    return r;
}

struct RandomFrame {
    CouplingFrame frame;
    int degree;
    int tail;
};

std::vector<RandomFrame> random_frames(std::uint32_t seed, int count)
{
    std::mt19937 rng(seed);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
    std::vector<RandomFrame> out;
    for (int i = 0; i < count; ++i) {
        int K = pick(1, 4);
        std::vector<int> idx;
        for (int k = 1; k <= K; ++k) {
            if (k == K || pick(0, 1) == 1) {
                idx.push_back(k);
            }
        }
        out.push_back({CouplingFrame::symbolic(FrameTag::g, idx), pick(1, 4), pick(1, 10)});
    }
    return out;
}

CheckReport thin_y2_minus_random()
{
    CheckReport r;
    for (const RandomFrame& f : random_frames(kSeed + 1, 8)) {
        ThinDeformation d = thin_deformation(f.frame, f.tail, f.degree);
        fold(r, thin_y2_minus_check(d), "thin (Y^2)_-");
        fold(r, thin_curve_check(d), "thin curve");
    }
    return r;
}

// ---- fat ----------------------------------------------------------------------------

CheckReport fat_catalan()
{
    const int m_max = 10;
    FatState s = fat_fn_virasoro(no_couplings(), 2 * m_max, 0);
    const VarTablePtr& table = s.frame.table();
    CheckReport r;
    for (int n = 0; n <= 2 * m_max; ++n) {
        PSeries want(table);
        if (n % 2 == 0) {
            want = PSeries::term(table, {{"t", n / 2 + 1}}, catalan(n / 2));
        }
        fold(r, same_series(s.f[n], want, "f_" + std::to_string(n)));
    }
    fold(r, fat_y2_minus_check(s, 2 * m_max), "(Y^2)_-");
    return r;
}

constexpr std::string_view kFatG1[] = {
    "t",
    "t*g1",
    "t*g1^2 + t^2",
    "t*g1^3 + 3*t^2*g1",
    "t*g1^4 + 6*t^2*g1^2 + 2*t^3",
    "t*g1^5 + 10*t^2*g1^3 + 10*t^3*g1",
    "t*g1^6 + 15*t^2*g1^4 + 30*t^3*g1^2 + 5*t^4",
    "t*g1^7 + 21*t^2*g1^5 + 70*t^3*g1^3 + 35*t^4*g1",
};

CheckReport fat_motzkin()
{
    const int n_max = 7;
    FatState s = fat_fn_virasoro(CouplingFrame::parse("g1"), n_max, n_max);
    const VarTablePtr& table = s.frame.table();
    CheckReport r;
    for (int n = 0; n <= n_max; ++n) {
        std::string label = "f_" + std::to_string(n);
        fold(r, same_series(s.f[n], golden(s.f[n], kFatG1[n]), label + " against the table"));
        if (n == 0) {
            continue;
        }
        PSeries motzkin(table);
        for (int k = 0; 2 * k <= n; ++k) {
            motzkin += PSeries::term(table, {{"t", k + 1}, {"g1", n - 2 * k}}, seq_eval("motzkin", n, k));
        }
        fold(r, same_series(s.f[n], motzkin, label + " against Motzkin numbers"));
    }
    return r;
}

CheckReport fat_trivalent()
{
    const int order = 10;
    FatState s = fat_fn_virasoro(CouplingFrame::parse("g3"), 1, 2 * order + 1);
    CheckReport r;
    fold(r, verify_series(s.f[1], {{"g3", 2, 1}, {"t", 1, 2}}, "trivalent", 0, 6), "f_1");

    VarTablePtr xt = make_table({aux_var("x")});
    TruncationPolicy pol;
    pol.set_max_exp(0, order);
    std::vector<PSeries::Term> terms;
    for (int m = 0; m <= order; ++m) {
        terms.emplace_back(xt->monomial({{"x", m}}), s.f[1].coeff({{"g3", 2 * m + 1}, {"t", m + 2}}));
    }
    PSeries y = PSeries::from_terms(xt, terms, pol);
    PSeries x = PSeries::variable(xt, "x", pol);
    PSeries one = PSeries::constant(xt, Rational(1), pol);
    PSeries cubic = x.pow(3) * y.pow(3) * Rational(64) + x * (one - x * Rational(96)) * y * y +
                    (x * Rational(30) - one) * y - x * Rational(27) + one;
    fold(r, same_series(cubic, PSeries(xt), "cubic relation for f_1"));
    return r;
}

constexpr std::string_view kFatG4[] = {
    "2*t^3 + 9*t^4*g4 + 54*t^5*g4^2 + 378*t^6*g4^3 + 2916*t^7*g4^4 + 24057*t^8*g4^5",
    "5*t^4 + 36*g4*t^5 + 270*g4^2*t^6 + 2160*g4^3*t^7 + 18225*g4^4*t^8 + 160380*g4^5*t^9",
    "14*t^5 + 140*g4*t^6 + 1260*g4^2*t^7 + 11340*g4^3*t^8 + 103950*g4^4*t^9",
    "42*t^6 + 540*g4*t^7 + 5670*g4^2*t^8 + 56700*g4^3*t^9 + 561330*g4^4*t^10",
};

CheckReport fat_four_regular()
{
    FatState s = fat_fn_virasoro(CouplingFrame::parse("g4"), 10, 6);
    CheckReport r;
    fold(r, verify_series(s.f[2], {{"g4", 1, 0}, {"t", 1, 2}}, "four_regular", 0, 6), "f_2");
    fold(r, same_series(s.f[1], PSeries(s.f[1].table()), "f_1"));
    for (int i = 0; i < 4; ++i) {
        int n = 4 + 2 * i;
        PSeries want = golden(s.f[n], kFatG4[i]);
        fold(r, same_series(s.f[n].grade_at_most(want.max_grade_present()), want, "f_" + std::to_string(n)));
    }
    return r;
}

CheckReport fat_y2_minus_random()
{
    CheckReport r;
    for (const RandomFrame& f : random_frames(kSeed + 2, 8)) {
        int n_max = f.tail + std::max(f.frame.max_g_index(), 2);
        fold(r, fat_y2_minus_check(fat_fn_virasoro(f.frame, n_max, f.degree), f.tail), "fat (Y^2)_-");
    }
    return r;
}

// ---- one-cut ------------------------------------------------------------------------

CheckReport cut_against_virasoro(const CouplingFrame& frame, int degree)
{
    const int n_max = 8;
    CutData cut = solve_one_cut_H(frame, CutOptions{degree, -1, n_max});
    FatState s = fat_fn_virasoro(frame, n_max, degree);
    CheckReport r;
    for (int n = 0; n <= n_max; ++n) {
        fold(r, same_series(cut.f[n], s.f[n].rebase(cut.f[n].table()), "f_" + std::to_string(n)));
    }
    return r;
}

CheckReport one_cut_master()
{
    CheckReport r;
    fold(r, cut_against_virasoro(CouplingFrame::parse("g1,g2,g3"), 4), "(g1,g2,g3)");
    for (int k = 1; k <= 6; ++k) {
        std::string g = "g" + std::to_string(k);
        fold(r, cut_against_virasoro(CouplingFrame::parse(g), 8), g + "-line");
    }
    return r;
}

CheckReport one_cut_g3_endpoints()
{
    CutData cut = solve_one_cut_H(CouplingFrame::parse("g3"), CutOptions{9, -1, 2});
    return combine({
        same_series(cut.b, golden(cut.b, "4*g3*t + 24*g3^3*t^2 + 256*g3^5*t^3 + 3360*g3^7*t^4 + 49152*g3^9*t^5"), "b"),
        same_series(cut.c, golden(cut.c, "-4*t - 12*g3^2*t^2 - 112*g3^4*t^3 - 1392*g3^6*t^4 - 19776*g3^8*t^5"), "c"),
    });
}

CheckReport one_cut_g5_system()
{
    CutData cut = solve_one_cut_system(CouplingFrame::parse("g5"), CutOptions{-1, 12, 3});
    auto upto = [](const PSeries& p, int t_max) { return p.with_cap("t", t_max); };
    return combine({
        same_series(upto(cut.b, 11), golden(upto(cut.b, 11), "12*g5*t^2 + 2592*g5^3*t^5 + 1143072*g5^5*t^8 + 638254080*g5^7*t^11"), "b"),
        same_series(upto(cut.c, 10), golden(upto(cut.c, 10), "-4*t - 252*g5^2*t^4 - 91584*g5^4*t^7 - 47262528*g5^6*t^10"), "c"),
        same_series(cut.f[1], golden(cut.f[1], "2*g5*t^3 + 216*g5^3*t^6 + 63504*g5^5*t^9 + 26593920*g5^7*t^12"), "f_1"),
        same_series(upto(cut.f[2], 11), golden(upto(cut.f[2], 11), "t^2 + 36*g5^2*t^5 + 8640*g5^4*t^8 + 3312576*g5^6*t^11"), "f_2"),
        same_series(upto(cut.f[3], 10), golden(upto(cut.f[3], 10), "9*g5*t^4 + 1512*g5^3*t^7 + 509328*g5^5*t^10"), "f_3"),
    });
}

CheckReport one_cut_g6_closed()
{
    const int n_max = 5;
    CouplingFrame fr = CouplingFrame::parse("g6");
    CutData cut = solve_one_cut_even(fr, CutOptions{n_max + 1, -1, 4});
    const VarTablePtr& table = cut.f[0].table();
    TruncationPolicy pol = grade_policy(n_max + 1);

    // a^2 = sum_n ternary(n) (5 g6/8)^n (4t)^(2n+1)
    PSeries a2(table, pol);
    for (int n = 0; n <= n_max + 1; ++n) {
        Rational c = seq_eval("ternary", n) * Rational(5, 8).pow(n) * Rational(4).pow(2 * n + 1);
        a2 += PSeries::term(table, {{"g6", n}, {"t", 2 * n + 1}}, c, pol);
    }
    PSeries t = PSeries::variable(table, "t", pol);
    PSeries f4 = a2 * a2 * t * Rational(9, 40) -
                 (a2 - t * Rational(4)).divide_term(table->monomial({{"g6", 1}}), Rational(25));

    CheckReport r;
    fold(r, verify_series(cut.f[2], {{"g6", 1, 0}, {"t", 2, 2}}, "bridgeless_cubic", 0, n_max, Rational(5)), "f_2");
    fold(r, same_series(cut.f[4].with_max_grade(n_max), f4.with_max_grade(n_max), "f_4 closed form"));
    PSeries listed = golden(cut.f[4].with_max_grade(n_max),
                            "2*t^3 + 24*g6*t^5 + 600*g6^2*t^7 + 20000*g6^3*t^9 + 780000*g6^4*t^11 + 33600000*g6^5*t^13");
    fold(r, same_series(cut.f[4].with_max_grade(n_max), listed, "f_4 listed terms"));
    return r;
}

CheckReport discriminants()
{
    CheckReport r;
    fold(r, discriminant_check(solve_one_cut_H(CouplingFrame::parse("g3"), CutOptions{12, -1, 2})), "g3-line quartic");

    const int d = 8;
    FatState s = fat_fn_virasoro(CouplingFrame::parse("g4"), 2, d);
    PSeries f2 = s.f[2];
    PSeries g4 = s.frame.g(4).truncated(f2.truncation());
    PSeries t = s.f[0];
    PSeries factor = f2 * f2 * g4 * g4 * Rational(27) + g4 * t.pow(3) * Rational(16) - f2 * g4 * t * Rational(18) -
                     t * t + f2;
    fold(r, same_series(factor, PSeries(f2.table()), "g4-line factor"));
    fold(r, discriminant_check(solve_one_cut_even(CouplingFrame::parse("g4"), CutOptions{d, -1, 2})),
         "g4-line reduced cubic");
    return r;
}

// ---- registry -----------------------------------------------------------------------

std::vector<SuiteCheck> thin_checks()
{
    return {
        {1, "thin g3-line z(v) through v^14", thin_g3_line, ""},
        {2, "thin g4-line odd coefficients and vanishing even ones", thin_g4_line, ""},
        {3, "thin z(v) integrality in 2N through degree 6", thin_integrality, ""},
        {4, "renormalized couplings on coupling lines and rooted trees", renormalized_lines, ""},
        {13, "Lagrange inversion duality on random cubic problems", lagrange_duality, ""},
        {14, "thin (Y^2)_- on random symbolic frames", thin_y2_minus_random, ""},
    };
}

std::vector<SuiteCheck> fat_checks()
{
    return {
        {5, "fat Catalan baseline with all couplings off", fat_catalan, ""},
        {6, "fat g1-line Motzkin table", fat_motzkin, ""},
        {7, "fat g3-line trivalent maps and cubic relation", fat_trivalent, ""},
        {8, "fat g4-line 4-regular maps", fat_four_regular, ""},
        {14, "fat (Y^2)_- on random symbolic frames", fat_y2_minus_random, ""},
    };
}

std::vector<SuiteCheck> onecut_checks()
{
    return {
        {9, "one-cut resolvent against the fat recursion", one_cut_master, ""},
        {10, "one-cut g3-line endpoints", one_cut_g3_endpoints, ""},
        {10, "one-cut g5-line system", one_cut_g5_system, ""},
        {10, "one-cut g6-line closed forms", one_cut_g6_closed, ""},
        {11, "discriminants of S'^2 - 4P", discriminants, ""},
    };
}

std::vector<SuiteCheck> identity_suite()
{
    std::vector<SuiteCheck> out;
    std::vector<std::function<IdentityResult(int)>> ids = {trivalent_cubic_identity, four_regular_quadratic_identity,
                                                           ternary_square_identity, arches_trivalent_identity};
    for (const auto& id : ids) {
        IdentityResult probe = id(0);
        out.push_back({12, probe.name, [id] { return id(10).report; }, probe.note});
    }
    return out;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"golden-thin", "golden-fat", "golden-onecut", "identities", "all"};
    return names;
}

std::vector<SuiteCheck> suite_checks(std::string_view suite)
{
    if (suite == "golden-thin") {
        return thin_checks();
    }
    if (suite == "golden-fat") {
        return fat_checks();
    }
    if (suite == "golden-onecut") {
        return onecut_checks();
    }
    if (suite == "identities") {
        return identity_suite();
    }
    if (suite == "all") {
        std::vector<SuiteCheck> all;
        for (auto part : {thin_checks(), fat_checks(), onecut_checks(), identity_suite()}) {
            all.insert(all.end(), part.begin(), part.end());
        }
        std::stable_sort(all.begin(), all.end(),
                         [](const SuiteCheck& a, const SuiteCheck& b) { return a.criterion < b.criterion; });
        return all;
    }
    throw DomainError("unknown suite '" + std::string(suite) + "'");
}

int worker_count()
{
    if (const char* env = std::getenv("MMCURVE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SuiteResult> run_checks(const std::vector<SuiteCheck>& checks, int workers)
{
    std::vector<SuiteResult> results(checks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < checks.size(); i = next++) {
            const SuiteCheck& c = checks[i];
            SuiteResult& out = results[i];
            out.criterion = c.criterion;
            out.name = c.name;
            out.note = c.note;
            try {
                out.report = c.run();
            } catch (const std::exception& e) {
                out.report = CheckReport{false, 0, std::string("error: ") + e.what(), ""};
            }
        }
    };
    int n = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(checks.size(), 1)));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) {
        pool.emplace_back(work);
    }
    work();
    for (std::thread& th : pool) {
        th.join();
    }
    return results;
}

} // namespace mmcurve

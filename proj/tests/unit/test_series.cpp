#include <doctest.h>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/error.hpp>
#include <mmcurve/fat.hpp>
#include <mmcurve/couplings.hpp>
#include <mmcurve/series.hpp>

#include "support.hpp"

using namespace mmcurve;
using mmtest::parse;

namespace {

VarTablePtr ring_table()
{
    return make_table({coupling_var("g1"), coupling_var("g2"), aux_var("x")});
}

TruncationPolicy ring_policy(const VarTablePtr& table)
{
    TruncationPolicy p = grade_policy(4);
    p.set_max_exp(table->index("x"), 3);
    return p;
}

} // namespace

TEST_CASE("difference of squares")
{
    VarTablePtr table = make_table({coupling_var("g1")});
    TruncationPolicy pol = grade_policy(2);
    PSeries one = PSeries::constant(table, Rational(1), pol);
    PSeries g1 = PSeries::variable(table, "g1", pol);
    PSeries prod = (one + g1) * (one - g1);
    CHECK(prod == parse(prod, "1 - g1^2"));
    CHECK((g1 + (-g1)).is_zero());
}

TEST_CASE("products respect the grade cap")
{
    VarTablePtr table = make_table({coupling_var("g1"), coupling_var("g2")});
    PSeries a = parse_series("1 + g1 + g2^2", table, grade_policy(3));
    PSeries b = parse_series("1 - g1 + g1*g2", table, grade_policy(2));
    PSeries p = a * b;
    CHECK(p.truncation().max_grade() == 2);
    CHECK(p == parse_series("1 - g1^2 + g1*g2 + g2^2", table));
    for (const auto& [m, c] : p.terms()) {
        CHECK(table->grade(m) <= 2);
        CHECK_FALSE(c.is_zero());
    }
}

TEST_CASE("ring axioms on random series")
{
    std::mt19937 rng(7);
    VarTablePtr table = ring_table();
    TruncationPolicy pol = ring_policy(table);
    for (int trial = 0; trial < 12; ++trial) {
        PSeries a = mmtest::random_series(rng, table, pol, 4, 3);
        PSeries b = mmtest::random_series(rng, table, pol, 4, 3);
        PSeries c = mmtest::random_series(rng, table, pol, 4, 3);
        CHECK((a + b) == (b + a));
        CHECK((a * b) == (b * a));
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
        CHECK((a - a).is_zero());
        CHECK((a * Rational(3, 2)) == (a + a * Rational(1, 2)));
    }
}

TEST_CASE("incompatible tables are rejected")
{
    PSeries a = PSeries::variable(make_table({coupling_var("g1")}), "g1");
    PSeries b = PSeries::variable(make_table({coupling_var("g2")}), "g2");
    CHECK_THROWS_AS(a + b, StructureError);
    CHECK_THROWS_AS(a * b, StructureError);
}

TEST_CASE("geometric series")
{
    VarTablePtr table = make_table({coupling_var("g2")});
    TruncationPolicy pol = grade_policy(5);
    PSeries inv = ps_invert(parse_series("1 - g2", table, pol));
    CHECK(inv == parse(inv, "1 + g2 + g2^2 + g2^3 + g2^4 + g2^5"));
}

TEST_CASE("inversion of a non-unit fails")
{
    VarTablePtr table = make_table({coupling_var("g1")});
    CHECK_THROWS_AS(ps_invert(parse_series("g1 + g1^2", table, grade_policy(3))), NonUnitError);
    CHECK_THROWS_AS(ps_invert(PSeries(table, grade_policy(3))), NonUnitError);
}

TEST_CASE("invert and sqrt round trips on random units")
{
    std::mt19937 rng(11);
    VarTablePtr table = ring_table();
    TruncationPolicy pol = ring_policy(table);
    for (int trial = 0; trial < 10; ++trial) {
        PSeries a = mmtest::random_series(rng, table, pol, 3, 2);
        a = a - Rational(a.constant_term()) + Rational(1);
        PSeries one = PSeries::constant(table, Rational(1), pol);
        PSeries inv = ps_invert(a);
        CHECK((a * inv) == one);
        CHECK(ps_invert(inv) == a);
        PSeries sq = a * a * Rational(4, 9);
        PSeries root = ps_sqrt(sq);
        CHECK((root * root) == sq);
        CHECK(root == a * Rational(2, 3));
        CHECK(ps_sqrt(sq, -1) == -root);
    }
}

TEST_CASE("sqrt(1 - 4x) gives the Catalan numbers")
{
    VarTablePtr table = make_table({aux_var("x")});
    TruncationPolicy pol;
    pol.set_max_exp(0, 10);
    PSeries root = ps_sqrt(parse_series("1 - 4*x", table, pol));
    CHECK(root == parse_series("1 - 2*x - 2*x^2 - 4*x^3 - 10*x^4 - 28*x^5 - 84*x^6 - 264*x^7 - 858*x^8"
                               " - 2860*x^9 - 9724*x^10",
                               table));
    for (int n = 1; n <= 10; ++n) {
        CHECK(root.coeff({{"x", n}}) == Rational(-2) * catalan(n - 1));
    }
}

TEST_CASE("sqrt of a perfect square in a Laurent variable")
{
    VarTablePtr table = make_table({coupling_var("g1"), laurent_var("z")});
    PSeries sq = parse_series("z^2 - 2*g1*z + g1^2", table, grade_policy(6));
    PSeries root = ps_sqrt(sq);
    CHECK(root == parse(root, "z - g1"));
}

TEST_CASE("sqrt with a non-square lead fails")
{
    VarTablePtr table = make_table({aux_var("x")});
    TruncationPolicy pol;
    pol.set_max_exp(0, 4);
    CHECK_THROWS_AS(ps_sqrt(parse_series("2 + x", table, pol)), BranchError);
    CHECK_THROWS_AS(ps_sqrt(parse_series("x + x^2", table, pol)), BranchError);
}

TEST_CASE("coefficients beyond the cap are unknown, not zero")
{
    VarTablePtr table = make_table({coupling_var("g3"), aux_var("t")});
    TruncationPolicy pol = grade_policy(3);
    pol.set_max_exp(table->index("t"), 4);
    PSeries a = parse_series("g3*t^2 + 4*g3^3*t^3", table, pol);
    CHECK(a.coeff({{"g3", 3}, {"t", 3}}) == Rational(4));
    CHECK(a.coeff({{"g3", 2}, {"t", 3}}) == Rational(0));
    CHECK_THROWS_AS(a.coeff({{"g3", 4}}), TruncationError);
    CHECK_THROWS_AS(a.coeff({{"t", 5}}), TruncationError);
}

TEST_CASE("fat g3-line f1 carries 32 g3^5 t^4")
{
    FatState s = fat_fn_virasoro(CouplingFrame::parse("g3"), 1, 7);
    CHECK(s.f[1].coeff({{"g3", 5}, {"t", 4}}) == Rational(32));
    CHECK(ps_coeff(s.f[1], s.f[1].table()->monomial({{"g3", 7}, {"t", 5}})) == Rational(336));
}

TEST_CASE("substituting g1 -> 0 in I0 vanishes")
{
    CouplingFrame fr = CouplingFrame::parse("g1,g2,g3");
    PSeries i0 = compute_I0(fr, 5);
    PSeries zero = PSeries(i0.table(), grade_policy(5));
    PSeries sub = ps_substitute(i0, "g1", zero);
    CHECK(sub.is_zero());
}

TEST_CASE("t -> s^2 on the fat g3-line f1")
{
    FatState s = fat_fn_virasoro(CouplingFrame::parse("g3"), 1, 7);
    const PSeries& f1 = s.f[1];
    VarTablePtr st = extend_table(remove_from_table(f1.table(), "t"), {aux_var("s")});
    TruncationPolicy pol = grade_policy(7);
    PSeries s2 = PSeries::term(st, {{"s", 2}}, Rational(1), pol);
    PSeries in_s = ps_substitute(f1.without_cap("t"), "t", s2);
    CHECK(in_s.size() == f1.size());
    for (const auto& [m, c] : in_s.terms()) {
        CHECK(m[st->index("s")] % 2 == 0);
        CHECK(m[st->index("g3")] % 2 == 1);
        int t_exp = m[st->index("s")] / 2;
        CHECK(c == f1.coeff({{"g3", m[st->index("g3")]}, {"t", t_exp}}));
    }
}

TEST_CASE("grade-lowering substitution diverges")
{
    VarTablePtr table = make_table({coupling_var("g1"), aux_var("x")});
    PSeries a = parse_series("g1 + g1^2", table, grade_policy(3));
    PSeries x = PSeries::variable(table, "x", grade_policy(3));
    CHECK_THROWS_AS(ps_substitute(a, "g1", x), DivergenceError);
}

TEST_CASE("derivative and divide_by_var")
{
    VarTablePtr table = make_table({coupling_var("g1"), aux_var("t")});
    PSeries a = parse_series("3*g1^2*t + g1*t^3", table, grade_policy(4));
    CHECK(a.derivative("t") == parse(a, "3*g1^2 + 3*g1*t^2"));
    CHECK(divide_by_var(a, "t") == parse(a, "3*g1^2 + g1*t^2"));
    CHECK(divide_by_var(a, "g1").truncation().max_grade() == 3);
    CHECK_THROWS_AS(divide_by_var(a, "t", 2), DomainError);
}

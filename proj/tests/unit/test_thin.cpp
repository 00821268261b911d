#include <doctest.h>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/error.hpp>
#include <mmcurve/lagrange.hpp>
#include <mmcurve/thin.hpp>

#include "support.hpp"

using namespace mmcurve;
using mmtest::parse;

TEST_CASE("g1 only: shifted pole")
{
    const int tail = 6;
    ThinDeformation d = thin_deformation(CouplingFrame::parse("g1"), tail, tail);
    const VarTablePtr& table = d.frame.table();
    CHECK(d.I0 == parse(d.I0, "g1"));
    CHECK(d.Y.coeff(1) == parse_series("-1", table));
    CHECK(d.Y.coeff(0) == parse_series("g1", table));
    for (int n = 0; n <= tail; ++n) {
        PSeries want = PSeries::term(table, {{"N", 1}, {"g1", n}}, Rational(2));
        CHECK(d.Y.coeff(-n - 1) == want);
        CHECK(d.f[n] == want / Rational(2));
    }
    CHECK(thin_y2_minus_check(d).ok);
    CHECK(thin_curve_check(d).ok);
}

TEST_CASE("no couplings: the thin spectral curve")
{
    ThinDeformation d = thin_deformation(CouplingFrame::make(FrameTag::g, {}), 4, 2);
    const VarTablePtr& table = d.frame.table();
    CHECK(d.Y.coeff(1) == parse_series("-1", table));
    CHECK(d.Y.coeff(0).is_zero());
    CHECK(d.Y.coeff(-1) == parse_series("2*N", table));
    for (int k = -5; k <= -2; ++k) {
        CHECK(d.Y.coeff(k).is_zero());
    }
    CheckReport r = thin_y2_minus_check(d);
    CHECK(r.ok);
    CHECK(r.checked > 0);
}

TEST_CASE("(g1,g2,g3): Y matches I0 and the recentred pole")
{
    ThinDeformation d = thin_deformation(CouplingFrame::parse("g1,g2,g3"), 5, 5);
    // I0 solves g3 I^2 - (1 - g2) I + g1 = 0.
    PSeries g1 = d.frame.g(1).truncated(d.I0.truncation());
    PSeries g2 = d.frame.g(2).truncated(d.I0.truncation());
    PSeries g3 = d.frame.g(3).truncated(d.I0.truncation());
    PSeries residual = g3 * d.I0 * d.I0 - (PSeries::constant(d.I0.table(), Rational(1)) - g2) * d.I0 + g1;
    CHECK(residual.is_zero());
    CHECK(thin_y2_minus_check(d).ok);
    CHECK(thin_curve_check(d).ok);
}

TEST_CASE("the tail is linear in N")
{
    ThinDeformation d = thin_deformation(CouplingFrame::parse("g1,g2,g3,g4"), 8, 4);
    for (int k = -9; k <= -1; ++k) {
        PSeries coeff = d.Y.coeff(k);
        for (const auto& [m, c] : coeff.terms()) {
            CHECK(m[d.frame.table()->index("N")] == 1);
        }
    }
}

TEST_CASE("random symbolic frames satisfy the tail identity")
{
    for (const char* couplings : {"g1,g2", "g2,g4", "g1,g3,g4", "g1,g2,g3,g4"}) {
        ThinDeformation d = thin_deformation(CouplingFrame::parse(couplings), 8, 4);
        CHECK(thin_y2_minus_check(d).ok);
        CHECK(thin_curve_check(d).ok);
    }
}

TEST_CASE("a corrupted tail is caught")
{
    ThinDeformation d = thin_deformation(CouplingFrame::parse("g1,g3"), 5, 4);
    d.Y.add_to(-3, PSeries::term(d.frame.table(), {{"N", 1}, {"g1", 2}}, Rational(1), d.Y.coeff_truncation()));
    CheckReport r = thin_y2_minus_check(d);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.detail.empty());
}

TEST_CASE("g1 only: z - g1 is the semicircle inverse")
{
    PSeries z = thin_z_of_v(CouplingFrame::parse("g1"), 8, 6);
    CHECK(z == parse(z, "g1 + 2*N*v - 4*N^2*v^3 + 16*N^3*v^5 - 80*N^4*v^7"));
}

TEST_CASE("(g1,g3) plane: the v^5 coefficient carries h^2 = 1 - 4 g1 g3")
{
    PSeries z = thin_z_of_v(CouplingFrame::parse("g1,g3"), 5, 6);
    PSeries want = parse(z, "2*(2N)^3*(1 - 4*g1*g3)");
    CHECK(z.coefficient_of("v", 5) == want.coefficient_of("v", 0));
}

TEST_CASE("fixed point and composition give the same z(v)")
{
    for (const char* couplings : {"g3", "g1,g3", "g1,g2,g4"}) {
        CouplingFrame fr = CouplingFrame::parse(couplings);
        CHECK(thin_z_of_v(fr, 9, 4, InversionMethod::fixed_point) ==
              thin_z_of_v(fr, 9, 4, InversionMethod::composition));
    }
}

TEST_CASE("z(v) composes back to v")
{
    CouplingFrame fr = thin_frame(CouplingFrame::parse("g1,g2,g3"));
    const int degree = 4;
    const int order = 8;
    std::vector<PSeries> J = thin_inversion_data(fr, degree);
    PSeries z = thin_z_of_v(CouplingFrame::parse("g1,g2,g3"), order, degree);
    PSeries i0 = compute_I0(fr, degree);
    PSeries w = z - i0.truncated(z.truncation());
    InversionProblem p{phi_from_J(J, fr.table(), "w"), order};
    CHECK(compose_back_residual(p, w.rebase(fr.table())).is_zero());
}

TEST_CASE("integrality in 2N")
{
    CHECK(thin_integrality_check(3, 6, 9).ok);
    CHECK(thin_integrality_check(1, 4, 6).ok);
    CHECK(thin_integrality_check(4, 5, 8).ok);
}

TEST_CASE("bad arguments")
{
    CHECK_THROWS_AS(thin_z_of_v(CouplingFrame::parse("g3"), 0, 2), DomainError);
    CHECK_THROWS_AS(thin_deformation(CouplingFrame::parse("g3"), -1, 2), DomainError);
}

#pragma once

#include <map>
#include <vector>

#include <mmcurve/couplings.hpp>
#include <mmcurve/laurent.hpp>
#include <mmcurve/report.hpp>

namespace mmcurve {

// Truncation for a one-cut solve. A negative value leaves that direction uncapped;
// at least one of the two must be finite.
struct CutOptions {
    int degree = -1;  // total coupling grade
    int t_order = -1; // exponent of t
    int n_max = 8;    // correlators f_0 .. f_{n_max} read off the resolvent
};

// Endpoints a_+, a_- of the cut through b = a_+ + a_- and c = a_+ a_-, together with
// S'^2 - 4P = Q(z)^2 (z^2 - b z + c).
struct CutData {
    CouplingFrame frame; // fat frame, holds t
    PSeries b;
    PSeries c;
    // a_+ = 2s + 2 b_plus and a_- = -2s - 2 b_minus with s^2 = t; only set by the H-method.
    PSeries b_plus;
    PSeries b_minus;
    std::map<int, PSeries> Q; // power of z -> coefficient
    std::vector<PSeries> f;   // f_0 = t, f_1, ..., f_{n_max}
    LSeries omega;
};

// e_n with (1 - b x + c x^2)^{-1/2} = sum_n e_n x^n, for n = 0..n_max.
std::vector<PSeries> inverse_sqrt_coefficients(const PSeries& b, const PSeries& c, int n_max);

// Works in s = t^{1/2}: solves H_{-1} = 0 and H_{-2} = 2t for b_plus, b_minus grade by grade.
CutData solve_one_cut_H(const CouplingFrame& frame, const CutOptions& opts);
// Even potentials: b = 0 and a^2 = -c solves a single fixed-point equation.
CutData solve_one_cut_even(const CouplingFrame& frame, const CutOptions& opts);
// Fixed point of the coefficient equations for (b, c) seeded at (0, -4t).
CutData solve_one_cut_system(const CouplingFrame& frame, const CutOptions& opts);

// Discriminant of S'^2 - 4P built from cut.f; must vanish when Q is not constant.
// Quadratics are accepted vacuously; even sextics and octics reduce through u = z^2.
CheckReport discriminant_check(const CutData& cut);

// Discriminants of a_n x^n + ... + a_0 for n = 2, 3, 4; coefficients low to high.
PSeries discriminant(const std::vector<PSeries>& coeffs);

} // namespace mmcurve

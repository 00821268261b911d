#pragma once

#include <vector>

#include <mmcurve/couplings.hpp>
#include <mmcurve/laurent.hpp>
#include <mmcurve/report.hpp>

namespace mmcurve {

// Thin special deformation with Y = sqrt(2) y:
//   Y = sum_n (t_n - delta_{n,1}) z^n / n! + 2N / (z - I_0), expanded at large z.
struct ThinDeformation {
    CouplingFrame frame;   // table carries N
    PSeries I0;
    LSeries Y;             // coefficients over frame.table()
    std::vector<PSeries> f; // f[n] = N I_0^n for 1 <= n <= tail; f[0] = N
    int tail = 0;
    int degree = 0;
};

// Adds the symbols N, v, w used by the thin pipelines.
CouplingFrame thin_frame(const CouplingFrame& frame);

ThinDeformation thin_deformation(const CouplingFrame& frame, int z_tail, int degree);

enum class InversionMethod { fixed_point, composition };

// z(v) = I_0 + w(v) with w = v (2N + sum_{n>=1} (I_n - delta_{n,1}) w^{n+1} / n!).
PSeries thin_z_of_v(const CouplingFrame& frame, int order, int degree,
                    InversionMethod method = InversionMethod::fixed_point);
// The J data feeding the inversion: J_0 = 2N, J_1 = 0, J_{n+1} = (n+1)(I_n - delta_{n,1}).
std::vector<PSeries> thin_inversion_data(const CouplingFrame& thin, int degree);

// 1/4 (Y^2)_- against (N/z + sum_{n>=1} f_n z^{-n-1})^2 on the known tail.
CheckReport thin_y2_minus_check(const ThinDeformation& d);
// Y (z - I_0) = (z - I_0) S'(z) + 2N on every known power of z.
CheckReport thin_curve_check(const ThinDeformation& d);
// Every coefficient of z(v) in v, 2N, g_1..g_K is an integer.
CheckReport thin_integrality_check(int K, int degree, int order);

} // namespace mmcurve

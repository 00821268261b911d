#pragma once

#include <vector>

#include <mmcurve/couplings.hpp>
#include <mmcurve/laurent.hpp>
#include <mmcurve/report.hpp>

namespace mmcurve {

// Adds the 't Hooft coupling t (grade 0) to a coupling frame.
CouplingFrame fat_frame(const CouplingFrame& frame);

// Genus-zero fat correlators f_0 = t, f_1, ..., f_{n_max} through coupling degree `degree`.
struct FatState {
    CouplingFrame frame;
    std::vector<PSeries> f;
    int n_max = 0;
    int degree = 0;

    // t/z + sum_{n>=1} f_n z^{-n-1}, known down to z^{-n_max-1}.
    LSeries resolvent() const;
};

// Solves the genus-zero loop equations
//   f_{m+2} = sum_{k>=1} g_k f_{k+m} + sum_{j=0}^{m} f_j f_{m-j},  m >= -1.
// Numeric g_1 and g_2 are allowed; numeric g_k with k >= 3 would never close and is rejected.
FatState fat_fn_virasoro(const CouplingFrame& frame, int n_max, int degree);

// S'(z) = sum_n (g_n - delta_{n,2}) z^{n-1} as an exact Laurent polynomial over `table`.
LSeries potential_derivative(const CouplingFrame& frame, const VarTablePtr& table, const TruncationPolicy& pol);
// P(z) = t - sum_{n>=2} g_n sum_{j=0}^{n-2} f_j z^{n-2-j}; f[0] is t.
LSeries loop_polynomial(const CouplingFrame& frame, const std::vector<PSeries>& f, const TruncationPolicy& pol);

// omega = (-S' - sqrt(S'^2 - 4P))/2 expanded to z^{-tail-1}, using f_0..f_{d-2} only.
LSeries fat_resolvent_closed(const CouplingFrame& frame, const std::vector<PSeries>& f, int degree, int tail);

// Every power z^{-1} .. z^{-tail} of (S' + 2 omega)^2 vanishes.
CheckReport fat_y2_minus_check(const FatState& state, int tail);

} // namespace mmcurve

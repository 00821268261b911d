#pragma once

#include <string>
#include <vector>

#include <mmcurve/series.hpp>

namespace mmcurve {

// w(v) solving w = v * phi(w); phi lives over a table holding both w and v.
struct InversionProblem {
    PSeries phi;
    int target_order = 1;
    std::string w = "w";
    std::string v = "v";
};

PSeries invert_fixed_point(const InversionProblem& p);

// Sum over k of v^k/k * sum_{p1+..+pk=k-1} prod J_{p_i}/p_i!, over `table` (which holds v).
PSeries invert_composition_formula(const std::vector<PSeries>& J, const VarTablePtr& table, std::string_view v,
                                   int target_order);

// c_k = 1/k * [x^(k-1)] (sum_p J_p x^p / p!)^k for k = 1..max_k; entry 0 is unused.
std::vector<PSeries> composition_coefficients(const std::vector<PSeries>& J, int max_k);

// phi(w) = sum_n J_n w^n / n! over `table`.
PSeries phi_from_J(const std::vector<PSeries>& J, const VarTablePtr& table, std::string_view w);

// v - w(v)/phi(w(v)); zero when the inversion is correct. Needs phi(0) invertible.
PSeries compose_back_residual(const InversionProblem& p, const PSeries& w_of_v);

} // namespace mmcurve

#include <mmcurve/lagrange.hpp>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/error.hpp>

namespace mmcurve {

namespace {

TruncationPolicy v_policy(const PSeries& base, std::string_view v, int order)
{
    TruncationPolicy p = base.truncation();
    std::size_t vi = base.table()->index(v);
    p.set_max_exp(vi, std::min(p.max_exp(vi), order));
    return p;
}

} // namespace

PSeries invert_fixed_point(const InversionProblem& p)
{
    if (p.target_order < 1) {
        throw DomainError("inversion order must be at least 1");
    }
    const VarTablePtr& table = p.phi.table();
    if (p.phi.coefficient_of(p.w, 0).is_zero()) {
        throw NonUnitError("phi(0) vanishes; w = v*phi(w) is not invertible");
    }
    TruncationPolicy pol = v_policy(p.phi, p.v, p.target_order);
    PSeries phi = p.phi.without_cap(p.w);
    PSeries v = PSeries::variable(table, p.v, pol);
    PSeries w(table, pol);
    // Each pass fixes one more power of v.
    for (int i = 0; i < p.target_order; ++i) {
        w = v * ps_substitute(phi, p.w, w);
    }
    return w;
}

std::vector<PSeries> composition_coefficients(const std::vector<PSeries>& J, int max_k)
{
    if (J.empty()) {
        throw DomainError("composition sum needs J_0");
    }
    const VarTablePtr& table = J.front().table();
    TruncationPolicy pol = J.front().truncation();
    for (const PSeries& j : J) {
        pol = pol.tightest(j.truncation());
    }
    // F(x) = sum J_p x^p / p!, stored densely up to x^(max_k - 1).
    const int len = max_k;
    std::vector<PSeries> F(len, PSeries(table, pol));
    for (int p = 0; p < len && p < static_cast<int>(J.size()); ++p) {
        F[p] = J[p].truncated(pol) / factorial(p);
    }
    std::vector<PSeries> out(max_k + 1, PSeries(table, pol));
    std::vector<PSeries> power = F;
    for (int k = 1; k <= max_k; ++k) {
        if (k > 1) {
            std::vector<PSeries> next(len, PSeries(table, pol));
            for (int i = 0; i < len; ++i) {
                if (power[i].is_zero()) {
                    continue;
                }
                for (int j = 0; i + j < len; ++j) {
                    if (!F[j].is_zero()) {
                        next[i + j] += power[i] * F[j];
                    }
                }
            }
            power = std::move(next);
        }
        out[k] = power[k - 1] / Rational(k);
    }
    return out;
}

PSeries invert_composition_formula(const std::vector<PSeries>& J, const VarTablePtr& table, std::string_view v,
                                   int target_order)
{
    if (target_order < 1) {
        throw DomainError("inversion order must be at least 1");
    }
    if (J.empty() || J.front().is_zero()) {
        throw NonUnitError("J_0 vanishes; the composition sum is not an inversion");
    }
    std::vector<PSeries> lifted;
    lifted.reserve(J.size());
    for (const PSeries& j : J) {
        lifted.push_back(j.rebase(table));
    }
    std::vector<PSeries> c = composition_coefficients(lifted, target_order);
    TruncationPolicy pol = v_policy(c[1], v, target_order);
    PSeries w(table, pol);
    std::size_t vi = table->index(v);
    for (int k = 1; k <= target_order; ++k) {
        Monomial m;
        m.e[vi] = static_cast<Exponent>(k);
        w += c[k].with_policy(pol).mul_term(m, Rational(1));
    }
    return w;
}

PSeries phi_from_J(const std::vector<PSeries>& J, const VarTablePtr& table, std::string_view w)
{
    PSeries phi(table, J.empty() ? TruncationPolicy{} : J.front().rebase(table).truncation());
    std::size_t wi = table->index(w);
    for (std::size_t n = 0; n < J.size(); ++n) {
        Monomial m;
        m.e[wi] = static_cast<Exponent>(n);
        phi += J[n].rebase(table).mul_term(m, Rational(1) / factorial(static_cast<int>(n)));
    }
    return phi;
}

PSeries compose_back_residual(const InversionProblem& p, const PSeries& w_of_v)
{
    PSeries phi_w = ps_substitute(p.phi.without_cap(p.w), p.w, w_of_v);
    PSeries v = PSeries::variable(w_of_v.table(), p.v, w_of_v.truncation());
    return v - w_of_v * ps_invert(phi_w);
}

} // namespace mmcurve

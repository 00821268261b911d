#include <mmcurve/sequences.hpp>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/error.hpp>

namespace mmcurve {

namespace {

Rational pow2(int e)
{
    return Rational(2).pow(e);
}

std::vector<SeqFormula> build_catalog()
{
    auto unary = [](std::string name, std::string formula, std::function<Rational(int)> f) {
        return SeqFormula{std::move(name), 1, std::move(formula), [f](int n, int) { return f(n); }};
    };
    std::vector<SeqFormula> c;
    c.push_back(unary("catalan", "C(2n,n)/(n+1)", [](int n) { return catalan(n); }));
    c.push_back(SeqFormula{"motzkin", 2, "n!/((n-2k)! k! (k+1)!)", [](int n, int k) {
                               if (2 * k > n) {
                                   return Rational(0);
                               }
                               return factorial(n) / (factorial(n - 2 * k) * factorial(k) * factorial(k + 1));
                           }});
    c.push_back(SeqFormula{"thin_g3", 2, "(2n+k)!/(k! (n-k)! (n+k+1)!)", [](int n, int k) {
                               if (k > n) {
                                   return Rational(0);
                               }
                               return factorial(2 * n + k) / (factorial(k) * factorial(n - k) * factorial(n + k + 1));
                           }});
    c.push_back(unary("ternary", "C(3m,m)/(2m+1)", [](int m) { return binomial(3 * m, m) / Rational(2 * m + 1); }));
    c.push_back(SeqFormula{"kary", 2, "C((k+1)m,m)/(km+1)", [](int m, int k) {
                               return binomial((k + 1) * m, m) / Rational(k * m + 1);
                           }});
    c.push_back(unary("trivalent", "2^(2m+1) (3m)!!/((m+2)! m!!)", [](int m) {
        return pow2(2 * m + 1) * double_factorial(3 * m) / (factorial(m + 2) * double_factorial(m));
    }));
    c.push_back(unary("four_regular", "2 3^n (2n)!/(n! (n+2)!)", [](int n) {
        return Rational(2) * Rational(3).pow(n) * factorial(2 * n) / (factorial(n) * factorial(n + 2));
    }));
    c.push_back(unary("bridgeless_cubic", "2^n C(3n,n)/((n+1)(2n+1))", [](int n) {
        return pow2(n) * binomial(3 * n, n) / Rational((n + 1) * (2 * n + 1));
    }));
    c.push_back(unary("arches", "2^(2n) C(3n/2,n)/(n+1)", [](int n) {
        return pow2(2 * n) * binomial(Rational(3 * n, 2), n) / Rational(n + 1);
    }));
    return c;
}

// Univariate series sum_{n<=order} a(n) x^n over a private one-variable table.
struct Univariate {
    VarTablePtr table;
    TruncationPolicy pol;

    explicit Univariate(int order) : table(make_table({aux_var("x")}))
    {
        pol.set_max_exp(0, order);
    }

    PSeries gf(const std::function<Rational(int)>& a) const
    {
        std::vector<PSeries::Term> terms;
        for (int n = 0; n <= pol.max_exp(0); ++n) {
            terms.emplace_back(table->monomial({{"x", n}}), a(n));
        }
        return PSeries::from_terms(table, std::move(terms), pol);
    }
    PSeries x() const { return PSeries::variable(table, "x", pol); }
    PSeries one() const { return PSeries::constant(table, Rational(1), pol); }
};

CheckReport zero_report(const PSeries& residual, int order)
{
    CheckReport r{true, order + 1, "", ""};
    if (!residual.is_zero()) {
        const auto& [m, c] = residual.terms().front();
        r.ok = false;
        r.detail = "residual " + c.str() + " at x^" + std::to_string(m.e[0]);
    }
    return r;
}

CheckReport equal_report(const PSeries& a, const PSeries& b, int order)
{
    return zero_report(a - b, order);
}

} // namespace

const std::vector<SeqFormula>& sequence_catalog()
{
    static const std::vector<SeqFormula> catalog = build_catalog();
    return catalog;
}

const SeqFormula& find_sequence(std::string_view name)
{
    for (const SeqFormula& f : sequence_catalog()) {
        if (f.name == name) {
            return f;
        }
    }
    throw DomainError("unknown sequence '" + std::string(name) + "'");
}

Rational seq_eval(std::string_view name, int n, std::optional<int> k)
{
    const SeqFormula& f = find_sequence(name);
    if (f.arity == 2 && !k) {
        throw DomainError("sequence '" + f.name + "' needs a second index");
    }
    if (n < 0 || (k && *k < 0)) {
        throw DomainError("sequence indices must be non-negative");
    }
    return f.eval(n, k.value_or(0));
}

CheckReport verify_series(const PSeries& series, const SeriesPattern& pattern,
                          const std::function<Rational(int)>& expected, int lo, int hi)
{
    const VarTable& table = *series.table();
    CheckReport r;
    for (int i = lo; i <= hi; ++i) {
        Monomial m;
        bool valid = true;
        for (const AffineExp& a : pattern) {
            int e = a.mul * i + a.add;
            if (e < 0 && !table[table.index(a.var)].laurent) {
                valid = false;
                break;
            }
            m.e[table.index(a.var)] = static_cast<Exponent>(e);
        }
        if (!valid || !series.truncation().admits(m, table.grade(m))) {
            continue;
        }
        Rational want = expected(i);
        Rational got = series.coeff(m);
        ++r.checked;
        if (got != want) {
            r.ok = false;
            r.detail = "index " + std::to_string(i) + ": series has " + got.str() + ", formula gives " + want.str();
            return r;
        }
    }
    if (r.checked == 0) {
        r.warning = "pattern selects no monomial inside the truncation for indices " + std::to_string(lo) + ".." +
                    std::to_string(hi);
    }
    return r;
}

CheckReport verify_series(const PSeries& series, const SeriesPattern& pattern, std::string_view sequence, int lo,
                          int hi, const Rational& ratio)
{
    const SeqFormula& f = find_sequence(sequence);
    return verify_series(series, pattern, [&](int i) { return f.eval(i, 0) * ratio.pow(i); }, lo, hi);
}

IdentityResult trivalent_cubic_identity(int order)
{
    Univariate u(order);
    PSeries y = u.gf([](int m) { return seq_eval("trivalent", m); });
    PSeries x = u.x();
    PSeries one = u.one();
    PSeries residual = x.pow(3) * y.pow(3) * Rational(64) + x * (one - x * Rational(96)) * y * y +
                       (x * Rational(30) - one) * y - x * Rational(27) + one;
    return {"trivalent cubic: 64x^3y^3 + x(1-96x)y^2 + (30x-1)y - 27x + 1 = 0", zero_report(residual, order), ""};
}

IdentityResult four_regular_quadratic_identity(int order)
{
    Univariate u(order);
    PSeries a = u.gf([](int n) { return seq_eval("four_regular", n); });
    PSeries z = u.x();
    PSeries one = u.one();
    PSeries residual = one - z * Rational(16) + (z * Rational(18) - one) * a - z * z * a * a * Rational(27);
    return {"4-regular quadratic: 1 - 16z + (18z-1)A - 27z^2A^2 = 0", zero_report(residual, order), ""};
}

IdentityResult ternary_square_identity(int order)
{
    Univariate u(order);
    PSeries t = u.gf([](int n) { return seq_eval("ternary", n); });
    PSeries rhs = u.gf([](int n) { return binomial(3 * n, n) / Rational((n + 1) * (2 * n + 1)); });
    PSeries lhs = t * Rational(3, 2) - t * t * Rational(1, 2);
    return {"ternary square: 3/2 T - 1/2 T^2 = sum C(3n,n) x^n/((n+1)(2n+1))", equal_report(lhs, rhs, order), ""};
}

IdentityResult arches_trivalent_identity(int order)
{
    Univariate u(order);
    PSeries a = u.gf([](int n) {
        return pow2(3 * n + 2) / Rational(n + 1) * binomial(Rational(3 * n, 2), n);
    });
    PSeries b = u.gf([](int n) {
        return pow2(3 * n + 5) / Rational(n + 2) * binomial(Rational(3 * n + 3, 2), n + 1);
    });
    PSeries lhs = a * Rational(3, 8) - b * Rational(1, 32) + a * a * Rational(1, 64);
    PSeries rhs = u.gf([](int n) { return seq_eval("trivalent", n); });
    return {"arches to trivalent: 3/8 A - 1/32 B + 1/64 A^2 = sum 2^(2n+1)(3n)!!/((n+2)! n!!) x^n",
            equal_report(lhs, rhs, order), "numerically verified, no independent proof"};
}

std::vector<IdentityResult> identity_checks(int order)
{
    if (order < 0) {
        throw DomainError("identity order must be non-negative");
    }
    return {trivalent_cubic_identity(order), four_regular_quadratic_identity(order), ternary_square_identity(order),
            arches_trivalent_identity(order)};
}

} // namespace mmcurve

#include <mmcurve/combinatorics.hpp>

#include <mmcurve/error.hpp>

namespace mmcurve {

Rational factorial(int n)
{
    if (n < 0) {
        throw DomainError("factorial of a negative integer");
    }
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

Rational binomial(int n, int k)
{
    if (k < 0 || (n >= 0 && k > n)) {
        return Rational(0);
    }
    return binomial(Rational(n), k);
}

Rational binomial(const Rational& r, int k)
{
    if (k < 0) {
        return Rational(0);
    }
    Rational num(1);
    for (int i = 0; i < k; ++i) {
        num *= r - Rational(i);
    }
    return num / factorial(k);
}

Rational double_factorial(int n)
{
    if (n < -1) {
        throw DomainError("double factorial below -1");
    }
    if (n <= 0) {
        return Rational(1);
    }
    mpz_class r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

Rational catalan(int n)
{
    if (n < 0) {
        throw DomainError("Catalan number of a negative index");
    }
    return binomial(2 * n, n) / Rational(n + 1);
}

} // namespace mmcurve

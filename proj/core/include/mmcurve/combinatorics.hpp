#pragma once

#include <mmcurve/rational.hpp>

namespace mmcurve {

Rational factorial(int n);
Rational binomial(int n, int k);
// Falling factorial r(r-1)...(r-k+1)/k! for a rational upper argument.
Rational binomial(const Rational& r, int k);
// n!! with 0!! = (-1)!! = 1.
Rational double_factorial(int n);
Rational catalan(int n);

} // namespace mmcurve

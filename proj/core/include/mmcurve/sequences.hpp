#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <mmcurve/rational.hpp>
#include <mmcurve/report.hpp>
#include <mmcurve/series.hpp>

namespace mmcurve {

struct SeqFormula {
    std::string name;
    // 1 for plain sequences, 2 for triangles T(n, k).
    int arity = 1;
    std::string formula;
    std::function<Rational(int, int)> eval;
};

const std::vector<SeqFormula>& sequence_catalog();
// Throws DomainError for an unknown name.
const SeqFormula& find_sequence(std::string_view name);

// Negative indices raise DomainError; triangle entries outside their range are 0.
Rational seq_eval(std::string_view name, int n, std::optional<int> k = {});

// Exponent of one variable as a function of the family index: mul * i + add.
struct AffineExp {
    std::string var;
    int mul = 0;
    int add = 0;
};
using SeriesPattern = std::vector<AffineExp>;

// Compares the coefficient of the pattern monomial at index i with expected(i) for i in [lo, hi].
// Indices whose monomial falls outside the series truncation are skipped; if none remain the
// report carries a warning.
CheckReport verify_series(const PSeries& series, const SeriesPattern& pattern,
                          const std::function<Rational(int)>& expected, int lo, int hi);
CheckReport verify_series(const PSeries& series, const SeriesPattern& pattern, std::string_view sequence, int lo,
                          int hi, const Rational& ratio = Rational(1));

struct IdentityResult {
    std::string name;
    CheckReport report;
    std::string note;
};

// Generating-function identities among the sequences, each checked through x^order.
IdentityResult trivalent_cubic_identity(int order);
IdentityResult four_regular_quadratic_identity(int order);
IdentityResult ternary_square_identity(int order);
IdentityResult arches_trivalent_identity(int order);
std::vector<IdentityResult> identity_checks(int order);

} // namespace mmcurve

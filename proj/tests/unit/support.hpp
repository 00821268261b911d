#pragma once

#include <random>
#include <string_view>

#include <mmcurve/series.hpp>
#include <mmcurve/series_io.hpp>

namespace mmtest {

using namespace mmcurve;

inline PSeries parse(const PSeries& like, std::string_view text)
{
    return parse_series(text, like.table(), like.truncation());
}

inline PSeries zero_like(const PSeries& like)
{
    return PSeries(like.table(), like.truncation());
}

// Random series with small rational coefficients over every admissible monomial of `table`
// up to grade `grade` and exponent `aux_cap` in each ungraded variable.
inline PSeries random_series(std::mt19937& rng, const VarTablePtr& table, const TruncationPolicy& pol, int grade,
                             int aux_cap, int density_percent = 60)
{
    std::vector<PSeries::Term> terms;
    const std::size_t n = table->size();
    std::vector<int> e(n, 0);
    auto bounded = [&](std::size_t i) { return (*table)[i].weight > 0 ? grade : aux_cap; };
    while (true) {
        Monomial m;
        for (std::size_t i = 0; i < n; ++i) {
            m.e[i] = static_cast<Exponent>(e[i]);
        }
        if (table->grade(m) <= grade && pol.admits(m, table->grade(m)) &&
            static_cast<int>(rng() % 100) < density_percent) {
            int num = static_cast<int>(rng() % 19) - 9;
            int den = 1 + static_cast<int>(rng() % 4);
            terms.emplace_back(m, Rational(num, den));
        }
        std::size_t i = 0;
        while (i < n && e[i] == bounded(i)) {
            e[i] = 0;
            ++i;
        }
        if (i == n) {
            break;
        }
        ++e[i];
    }
    return PSeries::from_terms(table, std::move(terms), pol);
}

} // namespace mmtest

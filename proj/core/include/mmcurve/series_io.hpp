#pragma once

#include <string>
#include <string_view>

#include <mmcurve/laurent.hpp>
#include <mmcurve/series.hpp>

namespace mmcurve {

// Graded-lex: total coupling grade first, then the exponent vector in table order.
bool graded_lex_less(const VarTable& table, const Monomial& a, const Monomial& b);
std::vector<PSeries::Term> graded_lex_terms(const PSeries& s);

struct RenderOptions {
    // Print powers of N as (2N)^k with the coefficient rescaled accordingly.
    bool two_n = false;
};

std::string render_monomial(const VarTable& table, const Monomial& m, const RenderOptions& opts = {});
std::string render_plain(const PSeries& s, const RenderOptions& opts = {});
// One "z^k: coefficient" line per power, highest power first.
std::string render_plain(const LSeries& s, std::string_view z = "z", const RenderOptions& opts = {});

std::string to_json_string(const PSeries& s, int indent = -1);
PSeries from_json_string(std::string_view text);

// Parses expressions such as "2N - w^2*(1 - g3*w)" over `table`.
// Juxtaposition multiplies; '/' accepts only constant divisors.
PSeries parse_series(std::string_view text, const VarTablePtr& table, const TruncationPolicy& trunc = {});

} // namespace mmcurve

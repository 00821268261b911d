#pragma once

#include <limits>
#include <map>
#include <string_view>
#include <utility>

#include <mmcurve/series.hpp>

namespace mmcurve {

// Series in a distinguished variable z, finite towards positive powers and truncated
// towards negative ones. Coefficients are PSeries over a common table.
//
// valid_from() is the lowest power of z whose coefficient is known exactly; kExact marks
// a finite Laurent polynomial. Products track how far the known range shrinks.
class LSeries {
public:
    static constexpr int kExact = std::numeric_limits<int>::min();

    LSeries() = default;
    LSeries(VarTablePtr table, TruncationPolicy coeff_trunc = {}, int valid_from = kExact);

    static LSeries from_pseries(const PSeries& p, std::string_view z);
    static LSeries monomial(const PSeries& c, int k);

    // Writes the series into a table that also holds z; the tail cap becomes a min-exponent.
    PSeries to_pseries(const VarTablePtr& table_with_z, std::string_view z) const;

    const VarTablePtr& table() const { return table_; }
    const TruncationPolicy& coeff_truncation() const { return trunc_; }
    const std::map<int, PSeries>& coeffs() const { return coeffs_; }

    int valid_from() const { return valid_from_; }
    bool is_exact() const { return valid_from_ == kExact; }
    bool is_zero() const { return coeffs_.empty(); }
    // Highest power present; kExact for the zero series.
    int head() const { return coeffs_.empty() ? kExact : coeffs_.rbegin()->first; }
    int lowest() const { return coeffs_.empty() ? kExact : coeffs_.begin()->first; }

    // Throws TruncationError below valid_from().
    PSeries coeff(int k) const;
    void set(int k, const PSeries& c);
    void add_to(int k, const PSeries& c);

    LSeries truncated_below(int k) const;
    LSeries shifted(int k) const;
    template <class F>
    LSeries transform(F f) const
    {
        LSeries r(table_, trunc_, valid_from_);
        for (const auto& [k, c] : coeffs_) {
            r.add_to(k, f(c));
        }
        return r;
    }
    LSeries with_coeff_truncation(const TruncationPolicy& p) const;

    LSeries& operator+=(const LSeries& o);
    LSeries& operator-=(const LSeries& o);

    friend LSeries operator+(const LSeries& a, const LSeries& b);
    friend LSeries operator-(const LSeries& a, const LSeries& b);
    friend LSeries operator-(const LSeries& a);
    friend LSeries operator*(const LSeries& a, const LSeries& b);
    friend LSeries operator*(const LSeries& a, const PSeries& c);
    friend LSeries operator*(const LSeries& a, const Rational& c);

    // Same coefficients and the same known range.
    friend bool operator==(const LSeries& a, const LSeries& b);

private:
    void check_compatible(const LSeries& o, const char* op) const;
    void drop_below(int k);

    VarTablePtr table_;
    TruncationPolicy trunc_;
    std::map<int, PSeries> coeffs_;
    int valid_from_ = kExact;
};

// (plus, minus): powers >= 0 and powers < 0. plus + minus == a.
std::pair<LSeries, LSeries> laurent_split(const LSeries& a);

// Square root expanded at large z, exact for every power >= floor.
// The leading behaviour is read off the highest power whose coefficient has a part of
// zero capped degree; that part must be a monomial square.
LSeries ls_sqrt(const LSeries& a, int branch, int floor);
LSeries ls_invert(const LSeries& a, int floor);

} // namespace mmcurve

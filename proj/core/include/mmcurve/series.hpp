#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <mmcurve/rational.hpp>

namespace mmcurve {

inline constexpr std::size_t kMaxVars = 16;
using Exponent = std::int16_t;

struct Variable {
    std::string name;
    // Contribution of one unit of exponent to the coupling grade.
    int weight = 0;
    bool laurent = false;

    bool operator==(const Variable&) const = default;
};

Variable coupling_var(std::string name);
Variable aux_var(std::string name);
Variable laurent_var(std::string name);

struct Monomial {
    std::array<Exponent, kMaxVars> e{};

    Exponent& operator[](std::size_t i) { return e[i]; }
    Exponent operator[](std::size_t i) const { return e[i]; }
    bool is_one() const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

using ExpList = std::initializer_list<std::pair<std::string_view, int>>;

// Ordered set of variables a series is written in.
class VarTable {
public:
    explicit VarTable(std::vector<Variable> vars);

    std::size_t size() const { return vars_.size(); }
    const Variable& operator[](std::size_t i) const { return vars_[i]; }
    const std::vector<Variable>& vars() const { return vars_; }

    std::size_t find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != npos; }
    // Throws StructureError when the name is absent.
    std::size_t index(std::string_view name) const;

    int grade(const Monomial& m) const;
    Monomial monomial(ExpList exps) const;
    Monomial monomial(const std::vector<std::pair<std::string, int>>& exps) const;

    bool operator==(const VarTable& o) const { return vars_ == o.vars_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<Variable> vars_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

VarTablePtr make_table(std::vector<Variable> vars);
// Appends the variables of `extra` that are not already present.
VarTablePtr extend_table(const VarTablePtr& base, const std::vector<Variable>& extra);
VarTablePtr remove_from_table(const VarTablePtr& base, std::string_view name);
bool same_table(const VarTablePtr& a, const VarTablePtr& b);

// Per-variable exponent caps and a cap on total coupling grade, indexed like a VarTable.
class TruncationPolicy {
public:
    static constexpr int kNone = std::numeric_limits<int>::max();

    TruncationPolicy();

    int max_grade() const { return max_grade_; }
    bool grade_capped() const { return max_grade_ != kNone; }
    int max_exp(std::size_t i) const { return hi_[i]; }
    int min_exp(std::size_t i) const { return lo_[i]; }
    bool capped(std::size_t i) const { return hi_[i] != kNone; }

    TruncationPolicy& set_max_grade(int d);
    TruncationPolicy& set_max_exp(std::size_t i, int k);
    TruncationPolicy& set_min_exp(std::size_t i, int k);
    TruncationPolicy& clear_var(std::size_t i);

    TruncationPolicy tightest(const TruncationPolicy& o) const;
    bool admits(const Monomial& m, int grade) const;
    // Sum of grade (when grade is capped) and the exponents of capped variables.
    int capped_degree(const Monomial& m, int grade) const;
    // Sum of every finite cap; the largest capped_degree an admissible monomial can have.
    long budget() const;

    bool operator==(const TruncationPolicy&) const = default;

private:
    int max_grade_ = kNone;
    std::array<int, kMaxVars> hi_;
    std::array<int, kMaxVars> lo_;
};

TruncationPolicy grade_policy(int max_grade);

// Truncated multivariate power series with exact rational coefficients.
class PSeries {
public:
    using Term = std::pair<Monomial, Rational>;

    PSeries() = default;
    explicit PSeries(VarTablePtr table, TruncationPolicy trunc = {});

    static PSeries constant(VarTablePtr table, const Rational& c, TruncationPolicy trunc = {});
    static PSeries variable(VarTablePtr table, std::string_view name, TruncationPolicy trunc = {});
    static PSeries term(VarTablePtr table, const Monomial& m, const Rational& c, TruncationPolicy trunc = {});
    static PSeries term(VarTablePtr table, ExpList exps, const Rational& c, TruncationPolicy trunc = {});
    // Builds from unsorted, possibly repeated terms; zero sums are dropped.
    static PSeries from_terms(VarTablePtr table, std::vector<Term> terms, TruncationPolicy trunc = {});

    const VarTablePtr& table() const { return table_; }
    const TruncationPolicy& truncation() const { return trunc_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;

    int grade(const Monomial& m) const { return table_->grade(m); }
    // Largest and smallest grade present; zero series reports 0.
    int max_grade_present() const;

    // Throws TruncationError when m lies outside the truncation policy.
    Rational coeff(const Monomial& m) const;
    Rational coeff(ExpList exps) const;

    int max_exp(std::string_view var) const;
    int min_exp(std::string_view var) const;

    // Terms whose exponent of `var` equals k, with that exponent kept.
    PSeries slice(std::string_view var, int k) const;
    // Coefficient of var^k, with the variable removed from each monomial.
    PSeries coefficient_of(std::string_view var, int k) const;
    std::map<int, PSeries> collect(std::string_view var) const;
    PSeries homogeneous(int grade) const;
    PSeries grade_at_most(int grade) const;

    PSeries truncated(const TruncationPolicy& p) const;
    PSeries with_max_grade(int d) const;
    PSeries with_cap(std::string_view var, int k) const;
    PSeries without_cap(std::string_view var) const;
    // Replaces the policy; the caller vouches that the data is exact under it.
    PSeries with_policy(const TruncationPolicy& p) const;
    // Re-expresses over another table that contains every variable in use.
    PSeries rebase(const VarTablePtr& table) const;

    PSeries mul_term(const Monomial& m, const Rational& c) const;
    // Exact division by c·m; throws DomainError when a term is not divisible.
    PSeries divide_term(const Monomial& m, const Rational& c) const;
    PSeries derivative(std::string_view var) const;
    PSeries pow(unsigned e) const;

    PSeries& operator+=(const PSeries& o);
    PSeries& operator-=(const PSeries& o);
    PSeries& operator*=(const PSeries& o);
    PSeries& operator*=(const Rational& c);
    PSeries& operator/=(const Rational& c);

    friend PSeries operator+(const PSeries& a, const PSeries& b);
    friend PSeries operator-(const PSeries& a, const PSeries& b);
    friend PSeries operator*(const PSeries& a, const PSeries& b);
    friend PSeries operator-(const PSeries& a);
    friend PSeries operator*(PSeries a, const Rational& c) { return a *= c; }
    friend PSeries operator*(const Rational& c, PSeries a) { return a *= c; }
    friend PSeries operator/(PSeries a, const Rational& c) { return a /= c; }
    friend PSeries operator+(const PSeries& a, const Rational& c);
    friend PSeries operator-(const PSeries& a, const Rational& c);

    // Same table and same terms; truncation policies are not compared.
    friend bool operator==(const PSeries& a, const PSeries& b);

private:
    void check_compatible(const PSeries& o, const char* op) const;
    void normalize_sorted();

    VarTablePtr table_;
    TruncationPolicy trunc_;
    std::vector<Term> terms_;
};

PSeries ps_invert(const PSeries& a);
PSeries ps_sqrt(const PSeries& a, int branch = +1);
PSeries ps_substitute(const PSeries& a, std::string_view var, const PSeries& replacement);
Rational ps_coeff(const PSeries& a, const Monomial& m);

// Divides by var^k, which every term must contain; a grade cap drops by k·weight.
PSeries divide_by_var(const PSeries& a, std::string_view var, int k = 1);

} // namespace mmcurve

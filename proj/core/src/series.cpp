#include <mmcurve/series.hpp>

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <mmcurve/error.hpp>

namespace mmcurve {

Variable coupling_var(std::string name)
{
    return Variable{std::move(name), 1, false};
}

Variable aux_var(std::string name)
{
    return Variable{std::move(name), 0, false};
}

Variable laurent_var(std::string name)
{
    return Variable{std::move(name), 0, true};
}

namespace {

Exponent checked_exponent(int v)
{
    if (v > std::numeric_limits<Exponent>::max() || v < std::numeric_limits<Exponent>::min()) {
        throw ResourceError("exponent out of range");
    }
    return static_cast<Exponent>(v);
}

} // namespace

bool Monomial::is_one() const
{
    return std::all_of(e.begin(), e.end(), [](Exponent x) { return x == 0; });
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.e[i] = checked_exponent(a.e[i] + b.e[i]);
    }
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.e[i] = checked_exponent(a.e[i] - b.e[i]);
    }
    return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (Exponent x : m.e) {
        h ^= static_cast<std::uint16_t>(x);
        h *= 1099511628211ull;
    }
    return h;
}

// ---------------------------------------------------------------------------
// VarTable

VarTable::VarTable(std::vector<Variable> vars) : vars_(std::move(vars))
{
    if (vars_.size() > kMaxVars) {
        throw ResourceError("too many variables in one table (max " + std::to_string(kMaxVars) + ")");
    }
    bool has_s = false;
    bool has_t = false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const Variable& v = vars_[i];
        if (v.name.empty()) {
            throw StructureError("empty variable name");
        }
        if (v.weight < 0) {
            throw StructureError("negative grading weight for " + v.name);
        }
        if (v.weight > 0 && v.laurent) {
            throw StructureError("graded variable " + v.name + " cannot carry negative exponents");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (vars_[j].name == v.name) {
                throw StructureError("duplicate variable " + v.name);
            }
        }
        has_s = has_s || v.name == "s";
        has_t = has_t || v.name == "t";
    }
    if (has_s && has_t) {
        throw StructureError("variables s and t cannot share a table");
    }
}

std::size_t VarTable::find(std::string_view name) const
{
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name == name) {
            return i;
        }
    }
    return npos;
}

std::size_t VarTable::index(std::string_view name) const
{
    std::size_t i = find(name);
    if (i == npos) {
        throw StructureError("unknown variable '" + std::string(name) + "'");
    }
    return i;
}

int VarTable::grade(const Monomial& m) const
{
    int g = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        g += vars_[i].weight * m.e[i];
    }
    return g;
}

Monomial VarTable::monomial(ExpList exps) const
{
    Monomial m;
    for (const auto& [name, k] : exps) {
        std::size_t i = index(name);
        m.e[i] = checked_exponent(m.e[i] + k);
    }
    return m;
}

Monomial VarTable::monomial(const std::vector<std::pair<std::string, int>>& exps) const
{
    Monomial m;
    for (const auto& [name, k] : exps) {
        std::size_t i = index(name);
        m.e[i] = checked_exponent(m.e[i] + k);
    }
    return m;
}

VarTablePtr make_table(std::vector<Variable> vars)
{
    return std::make_shared<const VarTable>(std::move(vars));
}

VarTablePtr extend_table(const VarTablePtr& base, const std::vector<Variable>& extra)
{
    std::vector<Variable> vars = base ? base->vars() : std::vector<Variable>{};
    for (const Variable& v : extra) {
        auto it = std::find_if(vars.begin(), vars.end(), [&](const Variable& x) { return x.name == v.name; });
        if (it == vars.end()) {
            vars.push_back(v);
        } else if (!(*it == v)) {
            throw StructureError("conflicting declarations of variable " + v.name);
        }
    }
    return make_table(std::move(vars));
}

VarTablePtr remove_from_table(const VarTablePtr& base, std::string_view name)
{
    std::vector<Variable> vars;
    for (const Variable& v : base->vars()) {
        if (v.name != name) {
            vars.push_back(v);
        }
    }
    return make_table(std::move(vars));
}

bool same_table(const VarTablePtr& a, const VarTablePtr& b)
{
    return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// TruncationPolicy

TruncationPolicy::TruncationPolicy()
{
    hi_.fill(kNone);
    lo_.fill(-kNone);
}

TruncationPolicy& TruncationPolicy::set_max_grade(int d)
{
    max_grade_ = d;
    return *this;
}

TruncationPolicy& TruncationPolicy::set_max_exp(std::size_t i, int k)
{
    hi_.at(i) = k;
    return *this;
}

TruncationPolicy& TruncationPolicy::set_min_exp(std::size_t i, int k)
{
    lo_.at(i) = k;
    return *this;
}

TruncationPolicy& TruncationPolicy::clear_var(std::size_t i)
{
    hi_.at(i) = kNone;
    lo_.at(i) = -kNone;
    return *this;
}

TruncationPolicy TruncationPolicy::tightest(const TruncationPolicy& o) const
{
    TruncationPolicy r;
    r.max_grade_ = std::min(max_grade_, o.max_grade_);
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.hi_[i] = std::min(hi_[i], o.hi_[i]);
        r.lo_[i] = std::max(lo_[i], o.lo_[i]);
    }
    return r;
}

bool TruncationPolicy::admits(const Monomial& m, int grade) const
{
    if (grade > max_grade_) {
        return false;
    }
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (m.e[i] > hi_[i] || m.e[i] < lo_[i]) {
            return false;
        }
    }
    return true;
}

int TruncationPolicy::capped_degree(const Monomial& m, int grade) const
{
    int d = grade_capped() ? grade : 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (hi_[i] != kNone) {
            d += m.e[i];
        }
    }
    return d;
}

long TruncationPolicy::budget() const
{
    long b = grade_capped() ? max_grade_ : 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (hi_[i] != kNone) {
            b += hi_[i];
        }
    }
    return b;
}

TruncationPolicy grade_policy(int max_grade)
{
    TruncationPolicy p;
    p.set_max_grade(max_grade);
    return p;
}

// ---------------------------------------------------------------------------
// PSeries

PSeries::PSeries(VarTablePtr table, TruncationPolicy trunc) : table_(std::move(table)), trunc_(trunc)
{
    if (!table_) {
        throw StructureError("series without a variable table");
    }
}

PSeries PSeries::constant(VarTablePtr table, const Rational& c, TruncationPolicy trunc)
{
    return term(std::move(table), Monomial{}, c, trunc);
}

PSeries PSeries::variable(VarTablePtr table, std::string_view name, TruncationPolicy trunc)
{
    Monomial m;
    m.e[table->index(name)] = 1;
    return term(std::move(table), m, Rational(1), trunc);
}

PSeries PSeries::term(VarTablePtr table, const Monomial& m, const Rational& c, TruncationPolicy trunc)
{
    PSeries r(std::move(table), trunc);
    if (!c.is_zero() && r.trunc_.admits(m, r.grade(m))) {
        r.terms_.emplace_back(m, c);
    }
    return r;
}

PSeries PSeries::term(VarTablePtr table, ExpList exps, const Rational& c, TruncationPolicy trunc)
{
    Monomial m = table->monomial(exps);
    return term(std::move(table), m, c, trunc);
}

PSeries PSeries::from_terms(VarTablePtr table, std::vector<Term> terms, TruncationPolicy trunc)
{
    PSeries r(std::move(table), trunc);
    r.terms_ = std::move(terms);
    r.normalize_sorted();
    return r;
}

void PSeries::normalize_sorted()
{
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            out.push_back(std::move(t));
        }
    }
    terms_.clear();
    for (auto& t : out) {
        if (!t.second.is_zero() && trunc_.admits(t.first, grade(t.first))) {
            terms_.push_back(std::move(t));
        }
    }
}

void PSeries::check_compatible(const PSeries& o, const char* op) const
{
    if (!table_ || !o.table_) {
        throw StructureError(std::string(op) + ": uninitialised series");
    }
    if (!same_table(table_, o.table_)) {
        throw StructureError(std::string(op) + ": operands use different variable tables");
    }
}

bool PSeries::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
}

Rational PSeries::constant_term() const
{
    if (!terms_.empty() && terms_.front().first.is_one()) {
        return terms_.front().second;
    }
    // Monomials with negative exponents sort before the unit monomial.
    auto it = std::lower_bound(terms_.begin(), terms_.end(), Monomial{},
                               [](const Term& t, const Monomial& m) { return t.first < m; });
    if (it != terms_.end() && it->first.is_one()) {
        return it->second;
    }
    return Rational(0);
}

int PSeries::max_grade_present() const
{
    int g = 0;
    for (const auto& t : terms_) {
        g = std::max(g, grade(t.first));
    }
    return g;
}

Rational PSeries::coeff(const Monomial& m) const
{
    if (!trunc_.admits(m, grade(m))) {
        throw TruncationError("coefficient requested beyond the truncation order");
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return t.first < x; });
    if (it != terms_.end() && it->first == m) {
        return it->second;
    }
    return Rational(0);
}

Rational PSeries::coeff(ExpList exps) const
{
    return coeff(table_->monomial(exps));
}

int PSeries::max_exp(std::string_view var) const
{
    std::size_t i = table_->index(var);
    int r = 0;
    bool first = true;
    for (const auto& t : terms_) {
        r = first ? t.first.e[i] : std::max<int>(r, t.first.e[i]);
        first = false;
    }
    return r;
}

int PSeries::min_exp(std::string_view var) const
{
    std::size_t i = table_->index(var);
    int r = 0;
    bool first = true;
    for (const auto& t : terms_) {
        r = first ? t.first.e[i] : std::min<int>(r, t.first.e[i]);
        first = false;
    }
    return r;
}

PSeries PSeries::slice(std::string_view var, int k) const
{
    std::size_t i = table_->index(var);
    PSeries r(table_, trunc_);
    for (const auto& t : terms_) {
        if (t.first.e[i] == k) {
            r.terms_.push_back(t);
        }
    }
    return r;
}

PSeries PSeries::coefficient_of(std::string_view var, int k) const
{
    std::size_t i = table_->index(var);
    PSeries r(table_, trunc_);
    r.trunc_.clear_var(i);
    for (const auto& t : terms_) {
        if (t.first.e[i] == k) {
            Monomial m = t.first;
            m.e[i] = 0;
            r.terms_.emplace_back(m, t.second);
        }
    }
    r.normalize_sorted();
    return r;
}

std::map<int, PSeries> PSeries::collect(std::string_view var) const
{
    std::size_t i = table_->index(var);
    std::map<int, std::vector<Term>> buckets;
    for (const auto& t : terms_) {
        Monomial m = t.first;
        int k = m.e[i];
        m.e[i] = 0;
        buckets[k].emplace_back(m, t.second);
    }
    TruncationPolicy p = trunc_;
    p.clear_var(i);
    std::map<int, PSeries> out;
    for (auto& [k, ts] : buckets) {
        out.emplace(k, from_terms(table_, std::move(ts), p));
    }
    return out;
}

PSeries PSeries::homogeneous(int g) const
{
    PSeries r(table_, trunc_);
    for (const auto& t : terms_) {
        if (grade(t.first) == g) {
            r.terms_.push_back(t);
        }
    }
    return r;
}

PSeries PSeries::grade_at_most(int g) const
{
    PSeries r(table_, trunc_);
    for (const auto& t : terms_) {
        if (grade(t.first) <= g) {
            r.terms_.push_back(t);
        }
    }
    return r;
}

PSeries PSeries::truncated(const TruncationPolicy& p) const
{
    PSeries r(table_, trunc_.tightest(p));
    for (const auto& t : terms_) {
        if (r.trunc_.admits(t.first, grade(t.first))) {
            r.terms_.push_back(t);
        }
    }
    return r;
}

PSeries PSeries::with_max_grade(int d) const
{
    TruncationPolicy p;
    p.set_max_grade(d);
    return truncated(p);
}

PSeries PSeries::with_cap(std::string_view var, int k) const
{
    TruncationPolicy p;
    p.set_max_exp(table_->index(var), k);
    return truncated(p);
}

PSeries PSeries::without_cap(std::string_view var) const
{
    PSeries r = *this;
    r.trunc_.clear_var(table_->index(var));
    return r;
}

PSeries PSeries::with_policy(const TruncationPolicy& p) const
{
    PSeries r(table_, p);
    r.terms_ = terms_;
    r.normalize_sorted();
    return r;
}

PSeries PSeries::rebase(const VarTablePtr& table) const
{
    if (same_table(table_, table)) {
        return *this;
    }
    std::array<std::size_t, kMaxVars> map{};
    TruncationPolicy p;
    p.set_max_grade(trunc_.max_grade());
    for (std::size_t i = 0; i < table_->size(); ++i) {
        map[i] = table->find((*table_)[i].name);
        if (map[i] != VarTable::npos) {
            if ((*table)[map[i]].weight != (*table_)[i].weight) {
                throw StructureError("variable " + (*table_)[i].name + " changes grading weight on rebase");
            }
            p.set_max_exp(map[i], trunc_.max_exp(i));
            p.set_min_exp(map[i], trunc_.min_exp(i));
        }
    }
    PSeries r(table, p);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m;
        for (std::size_t i = 0; i < table_->size(); ++i) {
            if (t.first.e[i] == 0) {
                continue;
            }
            if (map[i] == VarTable::npos) {
                throw StructureError("rebase: target table lacks variable " + (*table_)[i].name);
            }
            m.e[map[i]] = t.first.e[i];
        }
        r.terms_.emplace_back(m, t.second);
    }
    r.normalize_sorted();
    return r;
}

PSeries PSeries::mul_term(const Monomial& m, const Rational& c) const
{
    PSeries r(table_, trunc_);
    if (c.is_zero()) {
        return r;
    }
    for (const auto& t : terms_) {
        Monomial x = t.first * m;
        if (trunc_.admits(x, grade(x))) {
            r.terms_.emplace_back(x, t.second * c);
        }
    }
    // Multiplying by a monomial preserves the relative order of exponent vectors.
    return r;
}

PSeries PSeries::divide_term(const Monomial& m, const Rational& c) const
{
    if (c.is_zero()) {
        throw DomainError("division by zero");
    }
    TruncationPolicy p = trunc_;
    int g = grade(m);
    if (p.grade_capped()) {
        p.set_max_grade(p.max_grade() - g);
    }
    for (std::size_t i = 0; i < table_->size(); ++i) {
        if (p.capped(i)) {
            p.set_max_exp(i, p.max_exp(i) - m.e[i]);
        }
        if (p.min_exp(i) != -TruncationPolicy::kNone) {
            p.set_min_exp(i, p.min_exp(i) - m.e[i]);
        }
    }
    PSeries r(table_, p);
    Rational inv = Rational(1) / c;
    for (const auto& t : terms_) {
        Monomial x = t.first / m;
        for (std::size_t i = 0; i < table_->size(); ++i) {
            if (x.e[i] < 0 && !(*table_)[i].laurent) {
                throw DomainError("series is not divisible by the requested monomial");
            }
        }
        r.terms_.emplace_back(x, t.second * inv);
    }
    return r;
}

PSeries PSeries::derivative(std::string_view var) const
{
    std::size_t i = table_->index(var);
    TruncationPolicy p = trunc_;
    int w = (*table_)[i].weight;
    if (w > 0 && p.grade_capped()) {
        p.set_max_grade(p.max_grade() - w);
    }
    if (p.capped(i)) {
        p.set_max_exp(i, p.max_exp(i) - 1);
    }
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.first.e[i] == 0) {
            continue;
        }
        Monomial m = t.first;
        Rational c = t.second * Rational(m.e[i]);
        m.e[i] = checked_exponent(m.e[i] - 1);
        out.emplace_back(m, c);
    }
    return from_terms(table_, std::move(out), p);
}

PSeries PSeries::pow(unsigned e) const
{
    PSeries result = constant(table_, Rational(1), trunc_);
    PSeries base = *this;
    while (e > 0) {
        if (e & 1u) {
            result *= base;
        }
        e >>= 1u;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

namespace {

std::vector<PSeries::Term> merge_terms(const std::vector<PSeries::Term>& a, const std::vector<PSeries::Term>& b,
                                       bool subtract, const TruncationPolicy& p, const VarTable& table)
{
    std::vector<PSeries::Term> out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    auto push = [&](const Monomial& m, Rational c) {
        if (!c.is_zero() && p.admits(m, table.grade(m))) {
            out.emplace_back(m, std::move(c));
        }
    };
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            push(ia->first, ia->second);
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            push(ib->first, subtract ? -ib->second : ib->second);
            ++ib;
        } else {
            push(ia->first, subtract ? ia->second - ib->second : ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

} // namespace

PSeries& PSeries::operator+=(const PSeries& o)
{
    check_compatible(o, "add");
    trunc_ = trunc_.tightest(o.trunc_);
    terms_ = merge_terms(terms_, o.terms_, false, trunc_, *table_);
    return *this;
}

PSeries& PSeries::operator-=(const PSeries& o)
{
    check_compatible(o, "sub");
    trunc_ = trunc_.tightest(o.trunc_);
    terms_ = merge_terms(terms_, o.terms_, true, trunc_, *table_);
    return *this;
}

PSeries operator+(const PSeries& a, const PSeries& b)
{
    PSeries r = a;
    r += b;
    return r;
}

PSeries operator-(const PSeries& a, const PSeries& b)
{
    PSeries r = a;
    r -= b;
    return r;
}

PSeries operator-(const PSeries& a)
{
    PSeries r = a;
    for (auto& t : r.terms_) {
        t.second = -t.second;
    }
    return r;
}

PSeries operator+(const PSeries& a, const Rational& c)
{
    return a + PSeries::constant(a.table(), c, a.truncation());
}

PSeries operator-(const PSeries& a, const Rational& c)
{
    return a - PSeries::constant(a.table(), c, a.truncation());
}

PSeries operator*(const PSeries& a, const PSeries& b)
{
    a.check_compatible(b, "mul");
    TruncationPolicy p = a.trunc_.tightest(b.trunc_);
    PSeries r(a.table_, p);
    if (a.terms_.empty() || b.terms_.empty()) {
        return r;
    }
    const PSeries& big = a.terms_.size() >= b.terms_.size() ? a : b;
    const PSeries& small = a.terms_.size() >= b.terms_.size() ? b : a;

    // Order the larger operand by grade so that each row stops at the grade cap.
    std::vector<std::pair<int, std::size_t>> order;
    order.reserve(big.terms_.size());
    for (std::size_t j = 0; j < big.terms_.size(); ++j) {
        order.emplace_back(big.grade(big.terms_[j].first), j);
    }
    std::sort(order.begin(), order.end());

    std::unordered_map<Monomial, mpq_class, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 8);
    mpq_class prod;
    const bool capped = p.grade_capped();
    for (const auto& [ma, ca] : small.terms_) {
        int ga = small.grade(ma);
        for (const auto& [gb, j] : order) {
            if (capped && ga + gb > p.max_grade()) {
                break;
            }
            const auto& [mb, cb] = big.terms_[j];
            Monomial m = ma * mb;
            if (!p.admits(m, ga + gb)) {
                continue;
            }
            mpq_mul(prod.get_mpq_t(), ca.get().get_mpq_t(), cb.get().get_mpq_t());
            auto [it, inserted] = acc.try_emplace(m);
            if (inserted) {
                it->second = prod;
            } else {
                it->second += prod;
            }
        }
    }
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
        if (sgn(c) != 0) {
            r.terms_.emplace_back(m, Rational(c));
        }
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const PSeries::Term& x, const PSeries::Term& y) { return x.first < y.first; });
    return r;
}

PSeries& PSeries::operator*=(const PSeries& o)
{
    *this = *this * o;
    return *this;
}

PSeries& PSeries::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) {
        t.second *= c;
    }
    return *this;
}

PSeries& PSeries::operator/=(const Rational& c)
{
    if (c.is_zero()) {
        throw DomainError("division by zero");
    }
    return *this *= Rational(1) / c;
}

bool operator==(const PSeries& a, const PSeries& b)
{
    return same_table(a.table_, b.table_) && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------------------
// Inversion, square root, substitution

namespace {

// Splits off the part of `a` that no truncation cap can see; it must be one monomial.
PSeries::Term leading_unit(const PSeries& a, const char* what)
{
    const TruncationPolicy& p = a.truncation();
    std::vector<PSeries::Term> lead;
    for (const auto& t : a.terms()) {
        if (p.capped_degree(t.first, a.grade(t.first)) == 0) {
            lead.push_back(t);
        }
    }
    if (lead.size() != 1) {
        throw NonUnitError(std::string(what) + ": leading part is " +
                           (lead.empty() ? "zero" : "not a single monomial"));
    }
    return lead.front();
}

void check_positive_capped(const PSeries& eps, const char* what)
{
    const TruncationPolicy& p = eps.truncation();
    for (const auto& t : eps.terms()) {
        for (std::size_t i = 0; i < eps.table()->size(); ++i) {
            if (p.capped(i) && t.first.e[i] < 0) {
                throw DivergenceError(std::string(what) + ": negative exponent of a capped variable");
            }
        }
        if (p.capped_degree(t.first, eps.grade(t.first)) <= 0) {
            throw DivergenceError(std::string(what) + ": expansion does not terminate at the truncation");
        }
    }
}

} // namespace

PSeries ps_invert(const PSeries& a)
{
    auto [m0, c0] = leading_unit(a, "invert");
    const VarTable& table = *a.table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (m0.e[i] != 0 && !table[i].laurent) {
            throw NonUnitError("invert: leading monomial contains non-invertible variable " + table[i].name);
        }
    }
    Monomial inv_m = Monomial{} / m0;
    Rational inv_c = Rational(1) / c0;
    PSeries eps = a.mul_term(inv_m, inv_c) - Rational(1);
    check_positive_capped(eps, "invert");

    PSeries neg = -eps;
    PSeries sum = PSeries::constant(a.table(), Rational(1), a.truncation());
    PSeries power = sum;
    while (true) {
        power = power * neg;
        if (power.is_zero()) {
            break;
        }
        sum += power;
    }
    return sum.mul_term(inv_m, inv_c);
}

PSeries ps_sqrt(const PSeries& a, int branch)
{
    if (branch != 1 && branch != -1) {
        throw BranchError("branch must be +1 or -1");
    }
    if (a.is_zero()) {
        return a;
    }
    auto [m0, c0] = [&] {
        try {
            return leading_unit(a, "sqrt");
        } catch (const NonUnitError& e) {
            throw BranchError(e.what());
        }
    }();
    auto root_c = c0.sqrt();
    if (!root_c) {
        throw BranchError("sqrt: leading coefficient " + c0.str() + " is not a rational square");
    }
    Monomial half;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (m0.e[i] % 2 != 0) {
            throw BranchError("sqrt: leading monomial is not a perfect square");
        }
        half.e[i] = static_cast<Exponent>(m0.e[i] / 2);
    }
    PSeries eps = a.mul_term(Monomial{} / m0, Rational(1) / c0) - Rational(1);
    check_positive_capped(eps, "sqrt");

    PSeries sum = PSeries::constant(a.table(), Rational(1), a.truncation());
    PSeries power = sum;
    Rational binom(1);
    const Rational half_r(1, 2);
    for (int j = 1;; ++j) {
        power = power * eps;
        if (power.is_zero()) {
            break;
        }
        binom *= (half_r - Rational(j - 1)) / Rational(j);
        sum += power * binom;
    }
    return sum.mul_term(half, *root_c * Rational(branch));
}

PSeries ps_substitute(const PSeries& a, std::string_view var, const PSeries& replacement)
{
    const VarTablePtr& from = a.table();
    const VarTablePtr& to = replacement.table();
    std::size_t vi = from->index(var);
    const Variable& v = (*from)[vi];
    const TruncationPolicy& ap = a.truncation();
    const TruncationPolicy& rp = replacement.truncation();

    TruncationPolicy extra;
    if (v.weight > 0 && ap.grade_capped()) {
        for (const auto& t : replacement.terms()) {
            if (replacement.grade(t.first) < v.weight) {
                throw DivergenceError("substitution for " + v.name + " lowers the grade below its weight");
            }
        }
    }
    if (ap.capped(vi)) {
        int cap = ap.max_exp(vi);
        if (replacement.size() == 1) {
            const Monomial& m = replacement.terms().front().first;
            for (std::size_t i = 0; i < to->size(); ++i) {
                if (m.e[i] > 0) {
                    extra.set_max_exp(i, cap * m.e[i]);
                } else if (m.e[i] < 0) {
                    throw DivergenceError("substitution into a capped variable with a negative power");
                }
            }
        } else {
            bool found = false;
            for (std::size_t i = 0; i < to->size() && !found; ++i) {
                if (!rp.capped(i)) {
                    continue;
                }
                bool all = !replacement.is_zero();
                for (const auto& t : replacement.terms()) {
                    all = all && t.first.e[i] >= 1;
                }
                if (all) {
                    extra.set_max_exp(i, std::min(cap, rp.max_exp(i)));
                    found = true;
                }
            }
            if (!found && !replacement.is_zero()) {
                throw DivergenceError("substitution into capped variable " + v.name +
                                      " needs a replacement of positive order in a capped variable");
            }
        }
    }

    std::map<int, PSeries> parts = a.collect(var);
    TruncationPolicy result_policy = rp.tightest(extra);
    result_policy.set_max_grade(std::min(ap.max_grade(), rp.max_grade()));
    // Carry caps of the remaining variables over by name.
    for (std::size_t i = 0; i < from->size(); ++i) {
        if (i == vi) {
            continue;
        }
        std::size_t j = to->find((*from)[i].name);
        if (j == VarTable::npos) {
            continue;
        }
        if (ap.capped(i)) {
            result_policy.set_max_exp(j, std::min(result_policy.max_exp(j), ap.max_exp(i)));
        }
        if (ap.min_exp(i) != -TruncationPolicy::kNone) {
            result_policy.set_min_exp(j, std::max(result_policy.min_exp(j), ap.min_exp(i)));
        }
    }

    auto lift = [&](const PSeries& c) {
        PSeries r = c.rebase(to);
        return r.with_policy(result_policy);
    };
    PSeries repl = replacement.with_policy(result_policy);
    PSeries result(to, result_policy);
    if (parts.empty()) {
        return result;
    }
    int top = parts.rbegin()->first;
    int bottom = parts.begin()->first;
    if (top >= 0) {
        for (int k = top; k >= 0; --k) {
            result = result * repl;
            auto it = parts.find(k);
            if (it != parts.end()) {
                result += lift(it->second);
            }
        }
    }
    if (bottom < 0) {
        PSeries inv = ps_invert(repl);
        PSeries neg(to, result_policy);
        for (int k = bottom; k <= -1; ++k) {
            auto it = parts.find(k);
            if (it != parts.end()) {
                neg += lift(it->second);
            }
            neg = neg * inv;
        }
        result += neg;
    }
    return result;
}

Rational ps_coeff(const PSeries& a, const Monomial& m)
{
    return a.coeff(m);
}

PSeries divide_by_var(const PSeries& a, std::string_view var, int k)
{
    Monomial m;
    m.e[a.table()->index(var)] = checked_exponent(k);
    return a.divide_term(m, Rational(1));
}

} // namespace mmcurve

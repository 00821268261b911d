#include <mmcurve/laurent.hpp>

#include <algorithm>
#include <functional>

#include <mmcurve/error.hpp>

namespace mmcurve {

namespace {

int add_lim(int a, int b)
{
    if (a == LSeries::kExact || b == LSeries::kExact) {
        return LSeries::kExact;
    }
    return a + b;
}

} // namespace

LSeries::LSeries(VarTablePtr table, TruncationPolicy coeff_trunc, int valid_from)
    : table_(std::move(table)), trunc_(coeff_trunc), valid_from_(valid_from)
{
    if (!table_) {
        throw StructureError("Laurent series without a variable table");
    }
}

LSeries LSeries::from_pseries(const PSeries& p, std::string_view z)
{
    std::size_t zi = p.table()->index(z);
    int valid = p.truncation().min_exp(zi) == -TruncationPolicy::kNone ? kExact : p.truncation().min_exp(zi);
    VarTablePtr coeff_table = remove_from_table(p.table(), z);
    TruncationPolicy t = p.truncation();
    t.clear_var(zi);
    TruncationPolicy coeff_policy = PSeries(p.table(), t).rebase(coeff_table).truncation();
    LSeries r(coeff_table, coeff_policy, valid);
    for (auto& [k, c] : p.collect(z)) {
        r.add_to(k, c.rebase(coeff_table));
    }
    return r;
}

LSeries LSeries::monomial(const PSeries& c, int k)
{
    LSeries r(c.table(), c.truncation());
    r.add_to(k, c);
    return r;
}

PSeries LSeries::to_pseries(const VarTablePtr& table_with_z, std::string_view z) const
{
    std::size_t zi = table_with_z->index(z);
    if (!(*table_with_z)[zi].laurent && lowest() != kExact && lowest() < 0) {
        throw StructureError("target variable " + std::string(z) + " does not allow negative exponents");
    }
    TruncationPolicy p = PSeries(table_, trunc_).rebase(table_with_z).truncation();
    if (valid_from_ != kExact) {
        p.set_min_exp(zi, valid_from_);
    }
    PSeries out(table_with_z, p);
    for (const auto& [k, c] : coeffs_) {
        Monomial m;
        m.e[zi] = static_cast<Exponent>(k);
        out += c.rebase(table_with_z).with_policy(p).mul_term(m, Rational(1));
    }
    return out;
}

void LSeries::check_compatible(const LSeries& o, const char* op) const
{
    if (!same_table(table_, o.table_)) {
        throw StructureError(std::string(op) + ": Laurent operands use different coefficient tables");
    }
}

PSeries LSeries::coeff(int k) const
{
    if (valid_from_ != kExact && k < valid_from_) {
        throw TruncationError("z^" + std::to_string(k) + " lies below the known tail");
    }
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
        return PSeries(table_, trunc_);
    }
    return it->second;
}

void LSeries::set(int k, const PSeries& c)
{
    coeffs_.erase(k);
    add_to(k, c);
}

void LSeries::add_to(int k, const PSeries& c)
{
    if (!same_table(table_, c.table())) {
        throw StructureError("Laurent coefficient over a different table");
    }
    if (valid_from_ != kExact && k < valid_from_) {
        return;
    }
    if (!(c.truncation() == trunc_)) {
        TruncationPolicy t = trunc_.tightest(c.truncation());
        if (!(t == trunc_)) {
            trunc_ = t;
            for (auto it = coeffs_.begin(); it != coeffs_.end();) {
                it->second = it->second.truncated(t);
                it = it->second.is_zero() ? coeffs_.erase(it) : std::next(it);
            }
        }
    }
    PSeries v = c.truncated(trunc_);
    auto it = coeffs_.find(k);
    if (it != coeffs_.end()) {
        it->second += v;
        if (it->second.is_zero()) {
            coeffs_.erase(it);
        }
    } else if (!v.is_zero()) {
        coeffs_.emplace(k, std::move(v));
    }
}

void LSeries::drop_below(int k)
{
    if (k == kExact) {
        return;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.lower_bound(k));
}

LSeries LSeries::truncated_below(int k) const
{
    LSeries r = *this;
    r.valid_from_ = std::max(valid_from_, k);
    r.drop_below(r.valid_from_);
    return r;
}

LSeries LSeries::shifted(int k) const
{
    LSeries r(table_, trunc_, add_lim(valid_from_, k));
    for (const auto& [e, c] : coeffs_) {
        r.coeffs_.emplace(e + k, c);
    }
    return r;
}

LSeries LSeries::with_coeff_truncation(const TruncationPolicy& p) const
{
    LSeries r(table_, trunc_.tightest(p), valid_from_);
    for (const auto& [k, c] : coeffs_) {
        r.add_to(k, c);
    }
    return r;
}

LSeries& LSeries::operator+=(const LSeries& o)
{
    check_compatible(o, "add");
    valid_from_ = std::max(valid_from_, o.valid_from_);
    drop_below(valid_from_);
    for (const auto& [k, c] : o.coeffs_) {
        add_to(k, c);
    }
    return *this;
}

LSeries& LSeries::operator-=(const LSeries& o)
{
    return *this += -o;
}

LSeries operator+(const LSeries& a, const LSeries& b)
{
    LSeries r = a;
    r += b;
    return r;
}

LSeries operator-(const LSeries& a, const LSeries& b)
{
    LSeries r = a;
    r -= b;
    return r;
}

LSeries operator-(const LSeries& a)
{
    LSeries r = a;
    for (auto& [k, c] : r.coeffs_) {
        c = -c;
    }
    return r;
}

LSeries operator*(const LSeries& a, const LSeries& b)
{
    a.check_compatible(b, "mul");
    int valid = std::max(add_lim(a.valid_from_, b.head()), add_lim(b.valid_from_, a.head()));
    LSeries r(a.table_, a.trunc_.tightest(b.trunc_), valid);
    for (const auto& [i, ca] : a.coeffs_) {
        for (auto it = b.coeffs_.rbegin(); it != b.coeffs_.rend(); ++it) {
            int k = i + it->first;
            if (valid != LSeries::kExact && k < valid) {
                break;
            }
            r.add_to(k, ca * it->second);
        }
    }
    return r;
}

LSeries operator*(const LSeries& a, const PSeries& c)
{
    if (!same_table(a.table_, c.table())) {
        throw StructureError("mul: scalar series over a different table");
    }
    LSeries r(a.table_, a.trunc_.tightest(c.truncation()), a.valid_from_);
    for (const auto& [k, x] : a.coeffs_) {
        r.add_to(k, x * c);
    }
    return r;
}

LSeries operator*(const LSeries& a, const Rational& c)
{
    LSeries r(a.table_, a.trunc_, a.valid_from_);
    for (const auto& [k, x] : a.coeffs_) {
        r.add_to(k, x * c);
    }
    return r;
}

bool operator==(const LSeries& a, const LSeries& b)
{
    if (!same_table(a.table_, b.table_) || a.valid_from_ != b.valid_from_ || a.coeffs_.size() != b.coeffs_.size()) {
        return false;
    }
    for (const auto& [k, c] : a.coeffs_) {
        auto it = b.coeffs_.find(k);
        if (it == b.coeffs_.end() || !(it->second == c)) {
            return false;
        }
    }
    return true;
}

std::pair<LSeries, LSeries> laurent_split(const LSeries& a)
{
    int plus_valid = (a.valid_from() == LSeries::kExact || a.valid_from() <= 0) ? LSeries::kExact : a.valid_from();
    LSeries plus(a.table(), a.coeff_truncation(), plus_valid);
    LSeries minus(a.table(), a.coeff_truncation(), a.valid_from());
    for (const auto& [k, c] : a.coeffs()) {
        (k >= 0 ? plus : minus).add_to(k, c);
    }
    return {plus, minus};
}

// ---------------------------------------------------------------------------
// Large-z square root and inverse

namespace {

struct Lead {
    int power = 0;
    Monomial mono;
    Rational coeff;
};

Lead find_lead(const LSeries& a, const char* what)
{
    for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) {
        const PSeries& c = it->second;
        std::vector<PSeries::Term> lead;
        for (const auto& t : c.terms()) {
            if (c.truncation().capped_degree(t.first, c.grade(t.first)) == 0) {
                lead.push_back(t);
            }
        }
        if (lead.empty()) {
            continue;
        }
        if (lead.size() != 1) {
            throw BranchError(std::string(what) + ": leading coefficient at z^" + std::to_string(it->first) +
                              " is not a single monomial");
        }
        if (!a.is_exact() && it->first < a.valid_from()) {
            throw BranchError(std::string(what) + ": leading term lies below the known tail");
        }
        return Lead{it->first, lead.front().first, lead.front().second};
    }
    throw BranchError(std::string(what) + ": series has no leading term of zero capped degree");
}

// Generic large-z expansion a = c0 m0 z^k (1 + eps), returning sum_j coef(j) eps^j exact
// for every power >= f_s.
LSeries expand_unit(const LSeries& a, const Lead& lead, int f_s, const char* what,
                    const std::function<Rational(int, const Rational&)>& next_coef)
{
    const VarTablePtr& table = a.table();
    LSeries eps(table, a.coeff_truncation());
    for (const auto& [k, c] : a.coeffs()) {
        eps.add_to(k - lead.power, c.divide_term(lead.mono, lead.coeff));
    }
    eps.add_to(0, -PSeries::constant(table, Rational(1), a.coeff_truncation()));
    if (!a.is_exact()) {
        f_s = std::max(f_s, a.valid_from() - lead.power);
    }

    const TruncationPolicy& pol = eps.coeff_truncation();
    const long budget = pol.budget();
    long rho = 0;
    for (const auto& [e, c] : eps.coeffs()) {
        for (const auto& t : c.terms()) {
            int cost = pol.capped_degree(t.first, c.grade(t.first));
            if (e >= 0 && cost <= 0) {
                throw DivergenceError(std::string(what) + ": expansion does not terminate at the truncation");
            }
            if (e > 0) {
                rho = std::max<long>(rho, (e + cost - 1) / cost);
            }
        }
    }
    if (rho > 0 && !a.is_exact()) {
        throw DivergenceError(std::string(what) + ": growing head requires an exact input");
    }

    // Terms that cannot climb back above f_s in any later power are dropped.
    auto prune = [&](const LSeries& p) {
        LSeries out(table, p.coeff_truncation());
        for (const auto& [e, c] : p.coeffs()) {
            std::vector<PSeries::Term> keep;
            for (const auto& t : c.terms()) {
                long cost = pol.capped_degree(t.first, c.grade(t.first));
                if (e + rho * (budget - cost) >= f_s) {
                    keep.push_back(t);
                }
            }
            if (!keep.empty()) {
                out.add_to(e, PSeries::from_terms(table, std::move(keep), c.truncation()));
            }
        }
        return out;
    };

    LSeries eps_exact = prune(eps.truncated_below(f_s));
    LSeries one = LSeries::monomial(PSeries::constant(table, Rational(1), a.coeff_truncation()), 0);
    LSeries sum = one;
    LSeries power = one;
    Rational coef(1);
    for (int j = 1;; ++j) {
        if (j > 100000) {
            throw ResourceError(std::string(what) + ": expansion did not close");
        }
        power = prune(power * eps_exact);
        if (power.is_zero()) {
            break;
        }
        coef = next_coef(j, coef);
        sum += power * coef;
    }
    return sum.truncated_below(f_s);
}

} // namespace

LSeries ls_sqrt(const LSeries& a, int branch, int floor)
{
    if (branch != 1 && branch != -1) {
        throw BranchError("branch must be +1 or -1");
    }
    if (a.is_zero()) {
        return a;
    }
    Lead lead = find_lead(a, "sqrt");
    auto root = lead.coeff.sqrt();
    if (lead.power % 2 != 0 || !root) {
        throw BranchError("sqrt: leading term is not a perfect square");
    }
    Monomial half;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (lead.mono.e[i] % 2 != 0) {
            throw BranchError("sqrt: leading monomial is not a perfect square");
        }
        half.e[i] = static_cast<Exponent>(lead.mono.e[i] / 2);
    }
    const int h = lead.power / 2;
    const Rational one_half(1, 2);
    LSeries s = expand_unit(a, lead, floor - h, "sqrt", [&](int j, const Rational& prev) {
        return prev * (one_half - Rational(j - 1)) / Rational(j);
    });
    LSeries out = s.transform([&](const PSeries& c) { return c.mul_term(half, *root * Rational(branch)); });
    return out.shifted(h);
}

LSeries ls_invert(const LSeries& a, int floor)
{
    if (a.is_zero()) {
        throw NonUnitError("invert: zero Laurent series");
    }
    Lead lead = find_lead(a, "invert");
    const VarTable& table = *a.table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (lead.mono.e[i] != 0 && !table[i].laurent) {
            throw NonUnitError("invert: leading monomial contains non-invertible variable " + table[i].name);
        }
    }
    LSeries s = expand_unit(a, lead, floor + lead.power, "invert",
                            [](int, const Rational& prev) { return -prev; });
    Monomial inv = Monomial{} / lead.mono;
    Rational inv_c = Rational(1) / lead.coeff;
    LSeries out = s.transform([&](const PSeries& c) { return c.mul_term(inv, inv_c); });
    return out.shifted(-lead.power);
}

} // namespace mmcurve

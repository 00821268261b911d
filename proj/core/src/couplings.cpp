#include <mmcurve/couplings.hpp>

#include <algorithm>
#include <cctype>
#include <set>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/error.hpp>
#include <mmcurve/lagrange.hpp>

namespace mmcurve {

std::string_view frame_prefix(FrameTag tag)
{
    switch (tag) {
    case FrameTag::g:
        return "g";
    case FrameTag::t:
        return "t";
    case FrameTag::T:
        return "T";
    }
    return "g";
}

namespace {

int first_index(FrameTag tag)
{
    return tag == FrameTag::t ? 0 : 1;
}

} // namespace

CouplingFrame::CouplingFrame(FrameTag tag, VarTablePtr table, std::map<int, PSeries> values)
    : tag_(tag), table_(std::move(table)), values_(std::move(values))
{
    for (auto it = values_.begin(); it != values_.end();) {
        if (it->first < first_index(tag_)) {
            throw DomainError("coupling index below the frame's range");
        }
        if (!same_table(it->second.table(), table_)) {
            throw StructureError("coupling value over a different table");
        }
        it = it->second.is_zero() ? values_.erase(it) : std::next(it);
    }
}

CouplingFrame CouplingFrame::make(FrameTag tag, const std::vector<std::pair<int, std::optional<Rational>>>& entries,
                                  const std::vector<Variable>& extra)
{
    std::vector<Variable> vars;
    std::set<int> seen;
    std::vector<std::pair<int, std::optional<Rational>>> sorted = entries;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [n, val] : sorted) {
        if (!seen.insert(n).second) {
            throw ParseError("coupling index " + std::to_string(n) + " given twice");
        }
        if (!val) {
            vars.push_back(coupling_var(std::string(frame_prefix(tag)) + std::to_string(n)));
        }
    }
    VarTablePtr table = extend_table(make_table(std::move(vars)), extra);
    std::map<int, PSeries> values;
    for (const auto& [n, val] : sorted) {
        if (val) {
            values.emplace(n, PSeries::constant(table, *val));
        } else {
            values.emplace(n, PSeries::variable(table, std::string(frame_prefix(tag)) + std::to_string(n)));
        }
    }
    return CouplingFrame(tag, table, std::move(values));
}

CouplingFrame CouplingFrame::symbolic(FrameTag tag, const std::vector<int>& indices, const std::vector<Variable>& extra)
{
    std::vector<std::pair<int, std::optional<Rational>>> entries;
    for (int n : indices) {
        entries.emplace_back(n, std::nullopt);
    }
    return make(tag, entries, extra);
}

CouplingFrame CouplingFrame::parse(std::string_view text, const std::vector<Variable>& extra)
{
    std::vector<std::pair<int, std::optional<Rational>>> entries;
    std::size_t pos = 0;
    while (pos <= text.size() && !text.empty()) {
        std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        auto bad = [&](const std::string& why) {
            return ParseError("malformed coupling literal '" + std::string(tok) + "': " + why);
        };
        if (tok.size() < 2 || tok[0] != 'g') {
            throw bad("expected gK or gK=p/q");
        }
        std::size_t eq = tok.find('=');
        std::string_view idx = tok.substr(1, eq == std::string_view::npos ? std::string_view::npos : eq - 1);
        if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw bad("index must be a positive integer");
        }
        int n = std::stoi(std::string(idx));
        if (n < 1) {
            throw bad("index must be a positive integer");
        }
        if (eq == std::string_view::npos || tok.substr(eq + 1) == "sym") {
            entries.emplace_back(n, std::nullopt);
        } else {
            try {
                entries.emplace_back(n, Rational::parse(tok.substr(eq + 1)));
            } catch (const ParseError&) {
                throw bad("value must be a rational p/q");
            }
        }
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return make(FrameTag::g, entries, extra);
}

std::vector<int> CouplingFrame::active() const
{
    std::vector<int> out;
    for (const auto& [n, v] : values_) {
        out.push_back(n);
    }
    return out;
}

PSeries CouplingFrame::value(int index) const
{
    auto it = values_.find(index);
    return it == values_.end() ? PSeries(table_) : it->second;
}

PSeries CouplingFrame::g(int n) const
{
    if (n < 1) {
        return PSeries(table_);
    }
    switch (tag_) {
    case FrameTag::g:
        return value(n);
    case FrameTag::t:
        return value(n - 1) / factorial(n - 1);
    case FrameTag::T:
        return value(n) * Rational(n);
    }
    return PSeries(table_);
}

PSeries CouplingFrame::t(int n) const
{
    if (n < 0) {
        return PSeries(table_);
    }
    if (tag_ == FrameTag::t) {
        return value(n);
    }
    return g(n + 1) * factorial(n);
}

PSeries CouplingFrame::T(int n) const
{
    if (tag_ == FrameTag::T) {
        return n < 1 ? PSeries(table_) : value(n);
    }
    return n < 1 ? PSeries(table_) : g(n) / Rational(n);
}

PSeries CouplingFrame::T_tilde(int n) const
{
    PSeries r = g(n);
    if (n == 2) {
        r = r - Rational(1);
    }
    return r / Rational(n);
}

int CouplingFrame::max_g_index() const
{
    if (values_.empty()) {
        return 0;
    }
    int top = values_.rbegin()->first;
    return tag_ == FrameTag::t ? top + 1 : top;
}

bool CouplingFrame::has_numeric() const
{
    for (const auto& [n, v] : values_) {
        if (v.is_constant()) {
            return true;
        }
    }
    return false;
}

bool CouplingFrame::is_symbolic(int index) const
{
    auto it = values_.find(index);
    return it != values_.end() && !it->second.is_constant();
}

CouplingFrame CouplingFrame::convert(FrameTag to) const
{
    std::map<int, PSeries> out;
    int top = max_g_index();
    for (int n = 1; n <= top; ++n) {
        PSeries v = to == FrameTag::g ? g(n) : (to == FrameTag::t ? t(n - 1) : T(n));
        int idx = to == FrameTag::t ? n - 1 : n;
        if (!v.is_zero()) {
            out.emplace(idx, v);
        }
    }
    return CouplingFrame(to, table_, std::move(out));
}

CouplingFrame CouplingFrame::rebase(const VarTablePtr& table) const
{
    std::map<int, PSeries> out;
    for (const auto& [n, v] : values_) {
        out.emplace(n, v.rebase(table));
    }
    return CouplingFrame(tag_, table, std::move(out));
}

CouplingFrame CouplingFrame::with_extra(const std::vector<Variable>& extra) const
{
    return rebase(extend_table(table_, extra));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<PSeries> t_values(const CouplingFrame& frame, const TruncationPolicy& pol)
{
    std::vector<PSeries> t;
    int top = frame.max_g_index();
    for (int n = 0; n + 1 <= top; ++n) {
        t.push_back(frame.t(n).truncated(pol));
    }
    return t;
}

} // namespace

PSeries compute_I0(const CouplingFrame& frame, int degree)
{
    if (degree < 0) {
        throw DomainError("negative coupling degree");
    }
    TruncationPolicy pol = grade_policy(degree);
    const VarTablePtr& table = frame.table();
    std::vector<PSeries> t = t_values(frame, pol);
    PSeries zero(table, pol);
    if (t.empty()) {
        return zero;
    }
    // The linear term t_1 I is moved to the left so that numeric g_2 != 1 is allowed.
    PSeries one_minus_t1 = PSeries::constant(table, Rational(1), pol) - (t.size() > 1 ? t[1] : zero);
    PSeries inv;
    try {
        inv = ps_invert(one_minus_t1);
    } catch (const NonUnitError&) {
        throw NonUnitError("g2 = 1 is a critical value; the expansion in the couplings does not exist there");
    }
    PSeries I = zero;
    const int limit = degree + 2;
    for (int iter = 0;; ++iter) {
        PSeries rhs = t[0];
        PSeries power = I;
        for (std::size_t n = 2; n < t.size(); ++n) {
            power = power * I;
            if (!t[n].is_zero()) {
                rhs += t[n] * power / factorial(static_cast<int>(n));
            }
        }
        PSeries next = rhs * inv;
        if (next == I) {
            return next;
        }
        if (iter >= limit) {
            throw DivergenceError("polymer equation has no graded solution for these numeric couplings");
        }
        I = std::move(next);
    }
}

PSeries compute_I0_composition(const CouplingFrame& frame, int degree)
{
    if (frame.has_numeric()) {
        throw PreconditionError("the composition route needs every coupling symbolic");
    }
    TruncationPolicy pol = grade_policy(degree);
    std::vector<PSeries> t = t_values(frame, pol);
    PSeries I(frame.table(), pol);
    if (t.empty() || degree < 1) {
        return I;
    }
    std::vector<PSeries> c = composition_coefficients(t, degree);
    for (int k = 1; k <= degree; ++k) {
        I += c[k];
    }
    return I;
}

PSeries compute_Ik_from_I0(const CouplingFrame& frame, int k, const PSeries& I0)
{
    if (k < 0) {
        throw DomainError("negative I_k index");
    }
    if (k == 0) {
        return I0;
    }
    TruncationPolicy pol = I0.truncation();
    PSeries sum(frame.table(), pol);
    PSeries power = PSeries::constant(frame.table(), Rational(1), pol);
    int top = frame.max_g_index();
    for (int n = 0; n + k + 1 <= top; ++n) {
        if (n > 0) {
            power = power * I0;
        }
        PSeries tk = frame.t(n + k).truncated(pol);
        if (!tk.is_zero()) {
            sum += tk * power / factorial(n);
        }
    }
    return sum;
}

PSeries compute_Ik(const CouplingFrame& frame, int k, int degree)
{
    return compute_Ik_from_I0(frame, k, compute_I0(frame, degree));
}

RenormalizedCouplings renormalize(const CouplingFrame& frame, int degree, int max_k)
{
    RenormalizedCouplings r;
    r.I0 = compute_I0(frame, degree);
    r.computed_to = degree;
    for (int k = 1; k <= max_k; ++k) {
        r.Ik.emplace(k, compute_Ik_from_I0(frame, k, r.I0));
    }
    return r;
}

} // namespace mmcurve

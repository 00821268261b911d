#include <mmcurve/series_io.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include <mmcurve/error.hpp>

namespace mmcurve {

bool graded_lex_less(const VarTable& table, const Monomial& a, const Monomial& b)
{
    int ga = table.grade(a);
    int gb = table.grade(b);
    if (ga != gb) {
        return ga < gb;
    }
    return a < b;
}

std::vector<PSeries::Term> graded_lex_terms(const PSeries& s)
{
    std::vector<PSeries::Term> terms = s.terms();
    const VarTable& table = *s.table();
    std::stable_sort(terms.begin(), terms.end(), [&](const PSeries::Term& x, const PSeries::Term& y) {
        return graded_lex_less(table, x.first, y.first);
    });
    return terms;
}

namespace {

std::string power(const std::string& base, int e)
{
    return e == 1 ? base : base + "^" + std::to_string(e);
}

// Coefficient after moving 2^k from (2N)^k into the rational.
Rational folded_coefficient(const VarTable& table, const Monomial& m, const Rational& c, const RenderOptions& opts)
{
    if (!opts.two_n) {
        return c;
    }
    std::size_t n = table.find("N");
    if (n == VarTable::npos || m.e[n] == 0) {
        return c;
    }
    return c / Rational(2).pow(m.e[n]);
}

} // namespace

std::string render_monomial(const VarTable& table, const Monomial& m, const RenderOptions& opts)
{
    std::string out;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (m.e[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        std::string base = (opts.two_n && table[i].name == "N") ? "(2N)" : table[i].name;
        out += power(base, m.e[i]);
    }
    return out;
}

std::string render_plain(const PSeries& s, const RenderOptions& opts)
{
    if (s.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [m, c0] : graded_lex_terms(s)) {
        Rational c = folded_coefficient(*s.table(), m, c0, opts);
        std::string mono = render_monomial(*s.table(), m, opts);
        bool negative = c.sign() < 0;
        Rational a = c.abs();
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (mono.empty()) {
            out += a.str();
        } else if (a.is_one()) {
            out += mono;
        } else {
            out += a.str() + "*" + mono;
        }
    }
    return out;
}

std::string render_plain(const LSeries& s, std::string_view z, const RenderOptions& opts)
{
    std::ostringstream os;
    for (auto it = s.coeffs().rbegin(); it != s.coeffs().rend(); ++it) {
        os << z << "^" << it->first << ": " << render_plain(it->second, opts) << "\n";
    }
    if (!s.is_exact()) {
        os << "# known down to " << z << "^" << s.valid_from() << "\n";
    }
    return os.str();
}

std::string to_json_string(const PSeries& s, int indent)
{
    using nlohmann::ordered_json;
    const VarTable& table = *s.table();
    const TruncationPolicy& p = s.truncation();
    ordered_json vars = ordered_json::array();
    for (const Variable& v : table.vars()) {
        vars.push_back({{"name", v.name}, {"weight", v.weight}, {"laurent", v.laurent}});
    }
    ordered_json terms = ordered_json::array();
    for (const auto& [m, c] : graded_lex_terms(s)) {
        ordered_json exps = ordered_json::object();
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (m.e[i] != 0) {
                exps[table[i].name] = m.e[i];
            }
        }
        terms.push_back({{"coeff", c.str()}, {"exps", exps}});
    }
    ordered_json trunc = ordered_json::object();
    trunc["max_grade"] = p.grade_capped() ? ordered_json(p.max_grade()) : ordered_json(nullptr);
    ordered_json hi = ordered_json::object();
    ordered_json lo = ordered_json::object();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (p.capped(i)) {
            hi[table[i].name] = p.max_exp(i);
        }
        if (p.min_exp(i) != -TruncationPolicy::kNone) {
            lo[table[i].name] = p.min_exp(i);
        }
    }
    trunc["max_exp"] = hi;
    trunc["min_exp"] = lo;
    ordered_json doc = {{"vars", vars}, {"terms", terms}, {"trunc", trunc}};
    return doc.dump(indent);
}

PSeries from_json_string(std::string_view text)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
        std::vector<Variable> vars;
        for (const auto& v : doc.at("vars")) {
            vars.push_back(Variable{v.at("name").get<std::string>(), v.at("weight").get<int>(),
                                    v.at("laurent").get<bool>()});
        }
        VarTablePtr table = make_table(std::move(vars));
        TruncationPolicy p;
        const json& tr = doc.at("trunc");
        if (!tr.at("max_grade").is_null()) {
            p.set_max_grade(tr.at("max_grade").get<int>());
        }
        for (const auto& [name, k] : tr.at("max_exp").items()) {
            p.set_max_exp(table->index(name), k.get<int>());
        }
        for (const auto& [name, k] : tr.at("min_exp").items()) {
            p.set_min_exp(table->index(name), k.get<int>());
        }
        std::vector<PSeries::Term> terms;
        for (const auto& t : doc.at("terms")) {
            Monomial m;
            for (const auto& [name, k] : t.at("exps").items()) {
                m.e[table->index(name)] = static_cast<Exponent>(k.get<int>());
            }
            terms.emplace_back(m, Rational::parse(t.at("coeff").get<std::string>()));
        }
        return PSeries::from_terms(table, std::move(terms), p);
    } catch (const json::exception& e) {
        throw ParseError(std::string("series JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Expression parser

namespace {

class ExprParser {
public:
    ExprParser(std::string_view text, const VarTablePtr& table, const TruncationPolicy& trunc)
        : text_(text), table_(table), trunc_(trunc)
    {
    }

    PSeries parse()
    {
        PSeries r = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("expression '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool starts_atom()
    {
        char c = peek();
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
    }

    PSeries expr()
    {
        PSeries r = term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                r += term();
            } else if (c == '-') {
                ++pos_;
                r -= term();
            } else {
                return r;
            }
        }
    }

    PSeries term()
    {
        PSeries r = unary();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                r *= unary();
            } else if (c == '/') {
                ++pos_;
                PSeries d = unary();
                if (!d.is_constant() || d.is_zero()) {
                    fail("division only by nonzero constants");
                }
                r /= d.constant_term();
            } else if (starts_atom()) {
                r *= power();
            } else {
                return r;
            }
        }
    }

    PSeries unary()
    {
        if (peek() == '-') {
            ++pos_;
            return -unary();
        }
        if (peek() == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    PSeries power()
    {
        PSeries base = atom();
        if (peek() != '^') {
            return base;
        }
        ++pos_;
        skip_ws();
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer exponent");
        }
        int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (neg) {
            return ps_invert(base).pow(static_cast<unsigned>(e));
        }
        return base.pow(static_cast<unsigned>(e));
    }

    PSeries atom()
    {
        char c = peek();
        if (c == '(') {
            ++pos_;
            PSeries r = expr();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            return PSeries::constant(table_, Rational::parse(text_.substr(start, pos_ - start)), trunc_);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            if (!table_->contains(name)) {
                fail("unknown variable '" + name + "'");
            }
            return PSeries::variable(table_, name, trunc_);
        }
        fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    VarTablePtr table_;
    TruncationPolicy trunc_;
    std::size_t pos_ = 0;
};

} // namespace

PSeries parse_series(std::string_view text, const VarTablePtr& table, const TruncationPolicy& trunc)
{
    return ExprParser(text, table, trunc).parse();
}

} // namespace mmcurve

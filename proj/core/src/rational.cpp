#include <mmcurve/rational.hpp>

#include <cctype>

#include <mmcurve/error.hpp>

namespace mmcurve {

Rational::Rational(long num, long den)
{
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q)
{
    v_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s)
{
    std::string body(s);
    if (!body.empty() && body.front() == '+') {
        body.erase(0, 1);
    }
    return mpz_class(body, 10);
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    mpq_class q(parse_integer(num), d);
    q.canonicalize();
    return Rational(q);
}

Rational Rational::abs() const
{
    Rational r;
    r.v_ = ::abs(v_);
    return r;
}

Rational Rational::pow(int e) const
{
    if (e < 0) {
        if (is_zero()) {
            throw DomainError("negative power of zero");
        }
        Rational inv;
        inv.v_ = 1 / v_;
        return inv.pow(-e);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(mpq_class(n, d));
}

std::optional<Rational> Rational::sqrt() const
{
    if (sign() < 0) {
        return std::nullopt;
    }
    if (!mpz_perfect_square_p(v_.get_num_mpz_t()) || !mpz_perfect_square_p(v_.get_den_mpz_t())) {
        return std::nullopt;
    }
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), v_.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), v_.get_den_mpz_t());
    return Rational(mpq_class(n, d));
}

Rational& Rational::operator+=(const Rational& o)
{
    v_ += o.v_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    v_ -= o.v_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    v_ *= o.v_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) {
        throw DomainError("division by zero");
    }
    v_ /= o.v_;
    return *this;
}

Rational operator-(const Rational& a)
{
    Rational r;
    r.v_ = -a.v_;
    return r;
}

} // namespace mmcurve

#pragma once

#include <compare>
#include <concepts>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mmcurve {

// Exact rational number in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    template <std::integral I>
    Rational(I n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den);
    explicit Rational(const mpz_class& n) : v_(n) {}
    explicit Rational(const mpq_class& q);

    // Accepts "p", "-p", "p/q".
    static Rational parse(std::string_view text);

    const mpq_class& get() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const;
    Rational pow(int e) const;
    // Exact square root if this is the square of a rational.
    std::optional<Rational> sqrt() const;

    std::string str() const { return v_.get_str(); }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a);

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_{0};
};

} // namespace mmcurve

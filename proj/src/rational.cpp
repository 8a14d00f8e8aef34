#include "pridealt/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace pridealt {

namespace {

wide_int gcd128(wide_int a, wide_int b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        wide_int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(wide_int v)
{
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0)
        throw std::domain_error("rational with zero denominator");
    *this = from_wide(n, d);
}

Rational Rational::from_wide(wide_int n, wide_int d)
{
    if (d < 0) {
        n = -n;
        d = -d;
    }
    wide_int g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0)
        d = 1;
    if (!fits64(n) || !fits64(d))
        throw std::overflow_error("rational arithmetic overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rational Rational::operator-() const
{
    return from_wide(-static_cast<wide_int>(num_), den_);
}

Rational& Rational::operator+=(const Rational& o)
{
    wide_int n = static_cast<wide_int>(num_) * o.den_ + static_cast<wide_int>(o.num_) * den_;
    wide_int d = static_cast<wide_int>(den_) * o.den_;
    return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& o)
{
    return *this += -o;
}

Rational& Rational::operator*=(const Rational& o)
{
    // cross-reduce first to keep the 128-bit intermediates small
    wide_int g1 = gcd128(num_, o.den_);
    wide_int g2 = gcd128(o.num_, den_);
    if (g1 == 0)
        g1 = 1;
    if (g2 == 0)
        g2 = 1;
    wide_int n = (num_ / g1) * (o.num_ / g2);
    wide_int d = (den_ / g2) * (o.den_ / g1);
    return *this = from_wide(n, d);
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.num_ == 0)
        throw std::domain_error("rational division by zero");
    Rational inv;
    inv = from_wide(o.den_, o.num_);
    return *this *= inv;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    wide_int l = static_cast<wide_int>(a.num_) * b.den_;
    wide_int r = static_cast<wide_int>(b.num_) * a.den_;
    if (l < r)
        return std::strong_ordering::less;
    if (l > r)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::to_string() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(const std::string& s)
{
    auto parse_int = [](std::string_view v) -> std::optional<std::int64_t> {
        std::int64_t out = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
            return std::nullopt;
        return out;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        auto n = parse_int(s);
        if (!n)
            return std::nullopt;
        return Rational(*n);
    }
    auto n = parse_int(std::string_view(s).substr(0, slash));
    auto d = parse_int(std::string_view(s).substr(slash + 1));
    if (!n || !d || *d == 0)
        return std::nullopt;
    return Rational(*n, *d);
}

} // namespace pridealt

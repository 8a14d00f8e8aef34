#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace pridealt {

__extension__ using wide_int = __int128;

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored reduced with a positive denominator, so structural equality
/// is value equality. Intermediate products are formed in 128 bits; a result
/// that does not fit back into 64 bits throws std::overflow_error.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {} // NOLINT: implicit by design of the arithmetic
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p/q", or "p" for integers.
    std::string to_string() const;

    /// Parses "p", "-p" or "p/q".
    static std::optional<Rational> parse(const std::string& s);

private:
    static Rational from_wide(wide_int n, wide_int d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace pridealt

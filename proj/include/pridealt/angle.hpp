#pragma once

#include "pridealt/ext_nat.hpp"
#include "pridealt/rational.hpp"

#include <compare>
#include <string>

namespace pridealt {

/// An exact rational multiple of pi. All angle and curvature arithmetic in
/// the library goes through this type; nothing is ever rounded.
struct Angle {
    Rational coeff;

    constexpr Angle() = default;
    explicit Angle(Rational c) : coeff(c) {}

    static Angle zero() { return Angle(Rational(0)); }
    static Angle pi() { return Angle(Rational(1)); }
    static Angle pi_times(std::int64_t n, std::int64_t d = 1) { return Angle(Rational(n, d)); }

    /// 2*pi/m, and 0 when m is infinite.
    static Angle two_pi_over(const ExtNat& m);

    Angle operator-() const { return Angle(-coeff); }
    Angle& operator+=(const Angle& o)
    {
        coeff += o.coeff;
        return *this;
    }
    Angle& operator-=(const Angle& o)
    {
        coeff -= o.coeff;
        return *this;
    }
    friend Angle operator+(Angle a, const Angle& b) { return a += b; }
    friend Angle operator-(Angle a, const Angle& b) { return a -= b; }
    friend Angle operator*(std::int64_t k, const Angle& a) { return Angle(a.coeff * Rational(k)); }

    friend bool operator==(const Angle&, const Angle&) = default;
    friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) { return a.coeff <=> b.coeff; }

    /// "p/q pi", "p pi", or "0".
    std::string to_string() const;

    /// Inverse of to_string; also accepts "pi" and "-pi".
    static Angle parse(const std::string& s);
};

} // namespace pridealt

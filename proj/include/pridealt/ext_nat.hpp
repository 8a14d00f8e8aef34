#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace pridealt {

/// Natural number extended by infinity. Used for generator orders, relator
/// periods, kernel lengths m and relator weights r.
class ExtNat {
public:
    constexpr ExtNat() = default;
    constexpr ExtNat(std::uint64_t v) : value_(v), infinite_(false) {} // NOLINT

    static constexpr ExtNat infinity()
    {
        ExtNat e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    /// Only meaningful when finite.
    constexpr std::uint64_t value() const { return value_; }

    friend constexpr bool operator==(const ExtNat&, const ExtNat&) = default;
    friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b)
    {
        if (a.infinite_ || b.infinite_)
            return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
        return a.value_ <=> b.value_;
    }

    friend ExtNat operator*(const ExtNat& a, const ExtNat& b)
    {
        if (a.infinite_ || b.infinite_)
            return infinity();
        return ExtNat(a.value_ * b.value_);
    }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

} // namespace pridealt

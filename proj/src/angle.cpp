#include "pridealt/angle.hpp"

#include "pridealt/error.hpp"

#include <cstdint>

namespace pridealt {

Angle Angle::two_pi_over(const ExtNat& m)
{
    if (m.is_infinite())
        return zero();
    if (m.value() == 0)
        throw std::domain_error("angle 2pi/0");
    return Angle(Rational(2, static_cast<std::int64_t>(m.value())));
}

std::string Angle::to_string() const
{
    if (coeff.is_zero())
        return "0";
    return coeff.to_string() + " pi";
}

Angle Angle::parse(const std::string& s)
{
    if (s == "0")
        return zero();
    if (s == "pi")
        return pi();
    if (s == "-pi")
        return -pi();
    const std::string suffix = " pi";
    if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
        if (auto r = Rational::parse(s.substr(0, s.size() - suffix.size())))
            return Angle(*r);
    }
    throw InputError("malformed angle '" + s + "'");
}

} // namespace pridealt

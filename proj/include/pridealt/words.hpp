#pragma once

#include "pridealt/ext_nat.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pridealt {

/// One syllable gen^exp of a free-product word. exp is never zero.
struct Syllable {
    std::string gen;
    std::int64_t exp = 1;

    friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A word in a free product of cyclic groups, as a sequence of syllables.
///
/// A FreeWord is a plain value; it is in normal form only when produced by
/// normalize() (adjacent syllables have distinct generators and every
/// exponent is the canonical residue for its generator's order).
/// Comparison is structural, so compare normalized words.
struct FreeWord {
    std::vector<Syllable> syllables;

    FreeWord() = default;
    FreeWord(std::vector<Syllable> s) : syllables(std::move(s)) {} // NOLINT

    bool empty() const { return syllables.empty(); }
    std::size_t size() const { return syllables.size(); }

    friend bool operator==(const FreeWord&, const FreeWord&) = default;
};

/// Generator name -> order in {2,3,...} or infinity.
using OrderMap = std::map<std::string, ExtNat, std::less<>>;

/// Canonical residue of exp modulo order, in (-order/2, order/2], ties to the
/// positive side. Identity for infinite order.
std::int64_t reduce_exponent(std::int64_t exp, const ExtNat& order);

/// Merges adjacent equal generators, reduces exponents, and deletes trivial
/// syllables. Throws InputError naming any generator missing from orders.
FreeWord normalize(std::span<const Syllable> raw, const OrderMap& orders);
inline FreeWord normalize(const FreeWord& w, const OrderMap& orders) { return normalize(std::span<const Syllable>(w.syllables), orders); }

/// Normalizes in the free group on the generators appearing in w (every
/// generator of infinite order).
FreeWord free_normalize(const FreeWord& w);

/// Free-product length: syllable count of the normal form.
std::size_t free_length(const FreeWord& w, const OrderMap& orders);

/// A cyclic conjugate of the normal form whose first and last syllables have
/// distinct generators (or that has at most one syllable).
FreeWord cyclic_reduce(const FreeWord& w, const OrderMap& orders);

/// True when w is in normal form and its first and last generators differ
/// (or it has at most one syllable).
bool is_cyclically_reduced(const FreeWord& w, const OrderMap& orders);

FreeWord invert(const FreeWord& w);

/// w repeated n times, not normalized.
FreeWord power(const FreeWord& w, std::uint64_t n);

FreeWord concat(const FreeWord& a, const FreeWord& b);

/// Rotation by k syllables to the left.
FreeWord rotate(const FreeWord& w, std::size_t k);

/// Parses the literal syntax `gen^exp*gen*...`, e.g. `x1^-1*x2^3`.
/// The empty string and "1" denote the empty word.
FreeWord parse_word(std::string_view text);

/// Renders in the literal syntax accepted by parse_word; the empty word is "1".
std::string to_string(const FreeWord& w);

bool is_identifier(std::string_view s);

} // namespace pridealt

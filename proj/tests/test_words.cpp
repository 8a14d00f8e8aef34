#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pridealt/error.hpp"
#include "pridealt/words.hpp"

#include <random>

using namespace pridealt;

namespace {

OrderMap orders_abc()
{
    return {{"a", ExtNat(2)}, {"b", ExtNat(3)}, {"c", ExtNat::infinity()}};
}

// Reference group action for the oracle below: Z/2 * Z/3 * Z elements are
// tracked as a reduced syllable stack, built one letter at a time.
std::vector<Syllable> letter_stack(const FreeWord& w, const OrderMap& om)
{
    std::vector<Syllable> st;
    for (const auto& s : w.syllables) {
        std::int64_t step = s.exp > 0 ? 1 : -1;
        for (std::int64_t k = 0; k < std::abs(s.exp); ++k) {
            if (!st.empty() && st.back().gen == s.gen) {
                st.back().exp += step;
                const ExtNat& o = om.at(s.gen);
                if (o.is_finite())
                    st.back().exp %= static_cast<std::int64_t>(o.value());
                if (st.back().exp == 0)
                    st.pop_back();
            } else {
                st.push_back({s.gen, step});
            }
        }
    }
    // canonical residues
    for (auto& s : st)
        s.exp = reduce_exponent(s.exp, om.at(s.gen));
    return st;
}

FreeWord random_word(std::mt19937_64& rng, std::size_t len)
{
    static const char* gens[] = {"a", "b", "c"};
    std::uniform_int_distribution<int> g(0, 2), e(-4, 4);
    FreeWord w;
    for (std::size_t i = 0; i < len; ++i) {
        int x = 0;
        while (x == 0)
            x = e(rng);
        w.syllables.push_back({gens[g(rng)], x});
    }
    return w;
}

} // namespace

TEST_CASE("reduce_exponent picks the positive tie")
{
    CHECK(reduce_exponent(3, ExtNat(2)) == 1);
    CHECK(reduce_exponent(-1, ExtNat(2)) == 1);
    CHECK(reduce_exponent(2, ExtNat(4)) == 2);
    CHECK(reduce_exponent(-2, ExtNat(4)) == 2);
    CHECK(reduce_exponent(2, ExtNat(3)) == -1);
    CHECK(reduce_exponent(6, ExtNat(3)) == 0);
    CHECK(reduce_exponent(-7, ExtNat::infinity()) == -7);
}

TEST_CASE("normalize merges and cancels")
{
    auto om = orders_abc();
    CHECK(normalize(parse_word("a*a"), om).empty());
    CHECK(to_string(normalize(parse_word("b*b"), om)) == "b^-1");
    CHECK(to_string(normalize(parse_word("c*a*a*c^-1*b"), om)) == "b");
    CHECK(to_string(normalize(parse_word("a^3*c^2*c^-5"), om)) == "a*c^-3");
    CHECK_THROWS_AS(normalize(parse_word("z"), om), InputError);
}

TEST_CASE("normal form agrees with a letter-by-letter oracle")
{
    auto om = orders_abc();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        FreeWord w = random_word(rng, 1 + trial % 12);
        FreeWord n = normalize(w, om);
        CHECK(n.syllables == letter_stack(w, om));
        CHECK(normalize(n, om) == n);
        CHECK(normalize(concat(w, invert(w)), om).empty());
    }
}

TEST_CASE("cyclic_reduce")
{
    auto om = orders_abc();
    CHECK(to_string(cyclic_reduce(parse_word("c*a*b*c^-1"), om)) == "a*b");
    CHECK(to_string(cyclic_reduce(parse_word("b*a*b"), om)) == "a*b^-1");
    CHECK(is_cyclically_reduced(parse_word("a*b*c"), om));
    CHECK_FALSE(is_cyclically_reduced(parse_word("a*b*a"), om));
    CHECK_FALSE(is_cyclically_reduced(parse_word("a^3*b"), om));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        FreeWord w = random_word(rng, 1 + trial % 10);
        FreeWord r = cyclic_reduce(w, om);
        CHECK(is_cyclically_reduced(r, om));
        CHECK(free_length(r, om) <= free_length(w, om));
        // idempotent, and invariant under rotating the normal form
        CHECK(cyclic_reduce(r, om) == r);
        if (r.size() >= 2) {
            FreeWord rr = cyclic_reduce(rotate(r, 1), om);
            CHECK(rr.size() == r.size());
        }
    }
}

TEST_CASE("free_normalize ignores finite orders")
{
    CHECK(to_string(free_normalize(parse_word("a*a*b*b^-1"))) == "a^2");
}

TEST_CASE("parse and print")
{
    CHECK(parse_word("").empty());
    CHECK(parse_word("1").empty());
    CHECK(to_string(FreeWord{}) == "1");
    FreeWord w = parse_word("x1^-1*x2^3*x1");
    REQUIRE(w.size() == 3);
    CHECK(w.syllables[0] == Syllable{"x1", -1});
    CHECK(w.syllables[1] == Syllable{"x2", 3});
    CHECK(parse_word(to_string(w)) == w);
    CHECK(to_string(power(parse_word("a*b"), 3)) == "a*b*a*b*a*b");

    CHECK_THROWS_AS(parse_word("a^"), InputError);
    CHECK_THROWS_AS(parse_word("a**b"), InputError);
    CHECK_THROWS_AS(parse_word("1a"), InputError);
    CHECK_THROWS_AS(parse_word("a^0"), InputError);
    CHECK(is_identifier("x_1"));
    CHECK_FALSE(is_identifier("2x"));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pridealt/angles.hpp"
#include "pridealt/error.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace pridealt;

namespace {

std::string slurp(const std::string& name)
{
    std::ifstream in(std::string(PRIDEALT_TEST_DATA) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::array<Angle, 5>& five_angles()
{
    static const std::array<Angle, 5> a{Angle::zero(), Angle::pi_times(1, 6), Angle::pi_times(1, 4),
                                        Angle::pi_times(1, 3), Angle::pi_times(1, 2)};
    return a;
}

// Integer-only oracle: 1/m1 + 1/m2 + 1/m3 = 1/2 over even m in [4, max_m]
// and m = 0 standing for infinity.
std::set<std::array<std::uint64_t, 3>> pi_triples_oracle(std::uint64_t max_m)
{
    std::vector<std::uint64_t> ms{0};
    for (std::uint64_t m = 4; m <= max_m; m += 2)
        ms.push_back(m);
    std::set<std::array<std::uint64_t, 3>> out;
    for (auto a : ms)
        for (auto b : ms)
            for (auto c : ms) {
                // ordered by angle descending: smaller m first, infinity last
                auto key = [](std::uint64_t m) { return m == 0 ? ~0ULL : m; };
                if (key(a) > key(b) || key(b) > key(c))
                    continue;
                // multiply 1/a + 1/b + 1/c = 1/2 through by 2abc, dropping infinite terms
                std::uint64_t A = a ? a : 1, B = b ? b : 1, C = c ? c : 1;
                std::uint64_t lhs = 2 * ((a ? B * C : 0) + (b ? A * C : 0) + (c ? A * B : 0));
                if (lhs == A * B * C)
                    out.insert({a, b, c});
            }
    return out;
}

Angle angle_of(std::uint64_t m)
{
    return m == 0 ? Angle::zero() : Angle::two_pi_over(ExtNat(m));
}

PrideGraph random_periodic_graph(std::mt19937_64& rng, std::size_t n)
{
    PrideGraph g;
    std::uniform_int_distribution<int> ord(2, 6), per(2, 5), len(1, 2);
    for (std::size_t i = 0; i < n; ++i) {
        int o = ord(rng);
        g.vertices.push_back({std::to_string(i), "g" + std::to_string(i), o == 6 ? ExtNat::infinity() : ExtNat(o)});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Edge e{g.vertices[i].id, g.vertices[j].id, {}, std::nullopt};
            int k = std::uniform_int_distribution<int>(0, 2)(rng);
            for (int r = 0; r < k; ++r) {
                FreeWord base;
                int L = len(rng);
                for (int s = 0; s < L; ++s) {
                    base.syllables.push_back({g.vertices[i].gen, 1});
                    base.syllables.push_back({g.vertices[j].gen, 1});
                }
                e.relators.push_back({base, ExtNat(static_cast<std::uint64_t>(per(rng)))});
            }
            g.edges.push_back(e);
        }
    return g;
}

} // namespace

TEST_CASE("edge_r and gs_bound")
{
    PrideGraph g = parse_pride_graph(slurp("k3_pi.json"));
    OrderMap om = g.orders();
    CHECK(edge_r(*g.find_edge("a", "b"), om) == ExtNat(4));
    CHECK(edge_r(*g.find_edge("b", "c"), om) == ExtNat(6));
    CHECK(edge_r(*g.find_edge("a", "c"), om) == ExtNat(12));
    CHECK(gs_bound(*g.find_edge("a", "b"), om) == Angle::pi_times(1, 2));
    CHECK(gs_bound(*g.find_edge("a", "c"), om) == Angle::pi_times(1, 6));

    Edge empty{"a", "b", {}, std::nullopt};
    CHECK(edge_r(empty, om).is_infinite());
    CHECK(gs_bound(empty, om) == Angle::zero());

    Edge omitted{"a", "b", {{parse_word("a*b"), ExtNat::infinity()}}, std::nullopt};
    CHECK(edge_r(omitted, om).is_infinite());

    // min over relators
    Edge two{"a", "b", {{parse_word("a*b"), ExtNat(5)}, {parse_word("a*b^-1*a*b"), ExtNat(2)}}, std::nullopt};
    CHECK(edge_r(two, om) == ExtNat(8));

    Edge over{"a", "b", {{parse_word("a*b"), ExtNat(2)}}, ExtNat(8)};
    CHECK(edge_m_bound(over, om) == ExtNat(8));
    CHECK(gs_bound(over, om) == Angle::pi_times(1, 4));
    over.override_m = ExtNat(1);
    CHECK_THROWS_AS(gs_bound(over, om), ScopeError);
}

TEST_CASE("pi-sum triangles match the integer oracle")
{
    auto ours = enumerate_pi_triangles(1000);
    REQUIRE(ours.size() == 4);
    std::vector<AngleMultiset> expected{
        {Angle::pi_times(1, 2), Angle::pi_times(1, 2), Angle::zero()},
        {Angle::pi_times(1, 2), Angle::pi_times(1, 3), Angle::pi_times(1, 6)},
        {Angle::pi_times(1, 2), Angle::pi_times(1, 4), Angle::pi_times(1, 4)},
        {Angle::pi_times(1, 3), Angle::pi_times(1, 3), Angle::pi_times(1, 3)},
    };
    CHECK(ours == expected);

    for (std::uint64_t max_m : {4ULL, 6ULL, 8ULL, 12ULL, 30ULL, 200ULL}) {
        auto oracle = pi_triples_oracle(max_m);
        std::set<std::vector<Rational>> a, b;
        for (const auto& t : oracle)
            a.insert({angle_of(t[0]).coeff, angle_of(t[1]).coeff, angle_of(t[2]).coeff});
        for (const auto& t : enumerate_pi_triangles(max_m))
            b.insert({t[0].coeff, t[1].coeff, t[2].coeff});
        CHECK(a == b);
    }
    CHECK_THROWS_AS(enumerate_pi_triangles(3), InputError);
}

TEST_CASE("admissible angles")
{
    CHECK(is_admissible_angle(Angle::zero()));
    CHECK(is_admissible_angle(Angle::pi_times(1, 2)));
    CHECK(is_admissible_angle(Angle::pi_times(1, 5)));
    CHECK_FALSE(is_admissible_angle(Angle::pi_times(2, 3)));
    CHECK_FALSE(is_admissible_angle(Angle::pi_times(2, 5)));
    CHECK_FALSE(is_admissible_angle(Angle::pi_times(-1, 4)));
    CHECK_THROWS_AS(AngleLabeling(3, {Angle::pi(), Angle::zero(), Angle::zero()}), InputError);
    CHECK_THROWS_AS(AngleLabeling(3, {Angle::zero()}), InputError);
}

TEST_CASE("K4 opposite-edge lemma, all 5^6 labelings")
{
    const auto& A = five_angles();
    std::uint64_t pi_count = 0;
    std::uint64_t counterexamples = 0;
    for (std::uint32_t code = 0; code < 15625; ++code) {
        std::vector<Angle> lab(6);
        std::uint32_t c = code;
        for (auto& x : lab) {
            x = A[c % 5];
            c /= 5;
        }
        AngleLabeling l(4, lab);
        auto tri = [&](std::size_t i, std::size_t j, std::size_t k) { return l.at(i, j) + l.at(j, k) + l.at(i, k); };
        bool all_pi = tri(0, 1, 2) == Angle::pi() && tri(0, 1, 3) == Angle::pi() && tri(0, 2, 3) == Angle::pi() &&
                      tri(1, 2, 3) == Angle::pi();
        bool opposite = l.at(0, 1) == l.at(2, 3) && l.at(0, 2) == l.at(1, 3) && l.at(0, 3) == l.at(1, 2);
        K4Structure s = k4_structure(l);
        CHECK(s.all_triangles_pi == all_pi);
        if (all_pi) {
            ++pi_count;
            if (!opposite)
                ++counterexamples;
            CHECK(s.opposite_edges_equal);
            REQUIRE(s.triple.has_value());
            CHECK(*s.triple == sorted_multiset(l.at(0, 1), l.at(0, 2), l.at(0, 3)));
        }
    }
    CHECK(counterexamples == 0);
    // each of the four triples placed on the three opposite pairs: 3 + 6 + 3 + 1
    CHECK(pi_count == 13);
}

TEST_CASE("non-sphericity on the examples")
{
    PrideGraph k3 = parse_pride_graph(slurp("k3_pi.json"));
    auto r = check_nonspherical(k3);
    CHECK(r.verdict);
    REQUIRE(r.cond_ii.size() == 1);
    CHECK(r.cond_ii[0].sum == Angle::pi());

    PrideGraph fig = complete(parse_pride_graph(slurp("square.json")));
    CHECK(check_nonspherical(fig).verdict);
    CHECK_THROWS_AS(check_nonspherical(parse_pride_graph(slurp("square.json"))), InputError);

    // period 1 on a length-2 base gives angle pi
    PrideGraph bad = k3;
    bad.edges[0].relators[0].period = ExtNat(1);
    auto rb = check_nonspherical(bad);
    CHECK_FALSE(rb.verdict);
    CHECK_FALSE(rb.cond_i[0].pass);
    CHECK_THROWS_AS(corollary_criterion(bad), ScopeError);

    PrideGraph over = k3;
    over.edges[0].override_m = ExtNat(4);
    CHECK_THROWS_AS(corollary_criterion(over), ScopeError);
}

TEST_CASE("corollary criterion")
{
    PrideGraph k3 = parse_pride_graph(slurp("k3_pi.json"));
    auto c = corollary_criterion(k3);
    REQUIRE(c.triangles.size() == 1);
    CHECK(c.triangles[0].sum == Rational(1, 2));
    CHECK(c.verdict);
}

TEST_CASE("corollary implies non-spherical on random periodic graphs")
{
    std::mt19937_64 rng(2024);
    int passing = 0;
    for (int trial = 0; trial < 400; ++trial) {
        PrideGraph g = random_periodic_graph(rng, 3 + trial % 3);
        REQUIRE(validate(g).empty());
        auto c = corollary_criterion(g);
        auto n = check_nonspherical(g);
        if (c.verdict) {
            ++passing;
            CHECK(n.verdict);
        }
        // the two notions agree triangle by triangle: sum 1/r <= 1/2 iff sum 2pi/r <= pi
        REQUIRE(c.triangles.size() == n.cond_ii.size());
        for (std::size_t k = 0; k < c.triangles.size(); ++k)
            CHECK(c.triangles[k].pass == n.cond_ii[k].pass);
    }
    CHECK(passing > 0);
}

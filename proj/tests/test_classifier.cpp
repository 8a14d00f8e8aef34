#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pridealt/classifier.hpp"
#include "pridealt/error.hpp"
#include "pridealt/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

using namespace pridealt;

namespace {

PrideGraph load(const std::string& name)
{
    std::ifstream in(std::string(PRIDEALT_TEST_DATA) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_pride_graph(ss.str());
}

bool cites(const Classification& c, const std::string& id)
{
    return std::find(c.citations.begin(), c.citations.end(), id) != c.citations.end();
}

std::vector<std::string> syllable_gens(const FreeWord& w)
{
    std::vector<std::string> out;
    for (const auto& s : w.syllables)
        out.push_back(s.gen);
    return out;
}

// K_n with every edge (g_i g_j)^period and orders 2.
PrideGraph uniform_complete(std::size_t n, std::uint64_t period)
{
    PrideGraph g;
    for (std::size_t i = 0; i < n; ++i)
        g.vertices.push_back({std::to_string(i + 1), "x" + std::to_string(i + 1), ExtNat(2)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.edges.push_back({g.vertices[i].id,
                               g.vertices[j].id,
                               {{FreeWord({{g.vertices[i].gen, 1}, {g.vertices[j].gen, 1}}), ExtNat(period)}},
                               std::nullopt});
    return g;
}

// A triangle-pi labeling check done directly on the assignment, separate from k4_structure.
std::uint64_t count_pi_labelings_brute(std::size_t n)
{
    const std::array<Angle, 5> A{Angle::zero(), Angle::pi_times(1, 6), Angle::pi_times(1, 4), Angle::pi_times(1, 3),
                                 Angle::pi_times(1, 2)};
    const std::size_t edges = n * (n - 1) / 2;
    std::vector<std::size_t> digit(edges, 0);
    std::vector<std::vector<std::size_t>> id(n, std::vector<std::size_t>(n));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            id[i][j] = id[j][i] = k++;
    std::uint64_t count = 0;
    for (;;) {
        bool ok = true;
        for (std::size_t a = 0; ok && a < n; ++a)
            for (std::size_t b = a + 1; ok && b < n; ++b)
                for (std::size_t c = b + 1; ok && c < n; ++c)
                    ok = A[digit[id[a][b]]] + A[digit[id[b][c]]] + A[digit[id[a][c]]] == Angle::pi();
        count += ok;
        std::size_t p = 0;
        while (p < edges && ++digit[p] == 5)
            digit[p++] = 0;
        if (p == edges)
            break;
    }
    return count;
}

} // namespace

TEST_CASE("the square is virtually abelian")
{
    auto c = classify(load("square.json"));
    CHECK(c.verdict == Verdict::VirtuallyAbelian);
    REQUIRE(std::holds_alternative<ExceptionalCert>(c.evidence));
    const auto& cert = std::get<ExceptionalCert>(c.evidence);
    CHECK(cert.relabeling == std::array<std::string, 4>{"1", "2", "3", "4"});
    CHECK(cert.presentation.relators.size() == 8);
    CHECK(cites(c, "exceptional_square_virtually_abelian"));

    // cross-check the matched presentation with coset enumeration
    SquareGens gens;
    std::copy(cert.presentation.generators.begin(), cert.presentation.generators.end(), gens.begin());
    CHECK(cert.presentation == square_presentation(gens));
    CosetTable t = todd_coxeter(cert.presentation, {parse_word(gens[0] + "*" + gens[2]), parse_word(gens[1] + "*" + gens[3])});
    CHECK(t.complete);
    CHECK(t.index == 4);
}

TEST_CASE("square roles")
{
    PrideGraph g = complete(load("square.json"));
    RoleMap r = assign_roles(AngleLabeling::from_graph(g), {"1", "2", "3", "4"});
    CHECK(r.id == std::array<std::string, 4>{"1", "2", "4", "3"});
    CHECK(r.is_exceptional_triple());
    CHECK_THROWS_AS(make_witness(g, r), ScopeError);
}

TEST_CASE("all pi/3 K4 gives the witness")
{
    auto c = classify(load("k4_pi3.json"));
    CHECK(c.verdict == Verdict::FreeSubgroup);
    REQUIRE(std::holds_alternative<WitnessCert>(c.evidence));
    const auto& w = std::get<WitnessCert>(c.evidence);
    CHECK(w.roles.index == std::array<std::size_t, 4>{0, 1, 2, 3});
    CHECK(w.roles.theta == Angle::pi_times(1, 3));
    CHECK(w.t == "x4");
    CHECK(to_string(w.u) == "x1*x2*x3*x4*x1*x2*x3");
    CHECK(cites(c, "four_vertex_witness_free_product"));
}

TEST_CASE("witness follows roles under a shifted labeling")
{
    // edges labelled for X, Y, Z, T = 3, 1, 4, 2
    PrideGraph g;
    for (int i = 1; i <= 4; ++i)
        g.vertices.push_back({std::to_string(i), "x" + std::to_string(i), ExtNat(2)});
    auto edge = [&](int a, int b, std::uint64_t period) {
        std::string ga = "x" + std::to_string(a), gb = "x" + std::to_string(b);
        g.edges.push_back({std::to_string(a), std::to_string(b), {{FreeWord({{ga, 1}, {gb, 1}}), ExtNat(period)}}, std::nullopt});
    };
    edge(3, 4, 2); // XZ
    edge(1, 2, 2); // YT
    edge(1, 3, 3); // XY
    edge(2, 4, 3); // ZT
    edge(1, 4, 6); // YZ
    edge(2, 3, 6); // XT
    auto c = classify(g);
    REQUIRE(c.verdict == Verdict::FreeSubgroup);
    const auto& w = std::get<WitnessCert>(c.evidence);
    // the lexicographically first consistent assignment starts at vertex 1
    CHECK(w.roles.id == std::array<std::string, 4>{"1", "3", "2", "4"});
    CHECK(w.roles.theta == Angle::pi_times(1, 2));
    CHECK(w.roles.alpha == Angle::pi_times(1, 3));
    CHECK(w.roles.beta == Angle::pi_times(1, 6));
    CHECK(syllable_gens(w.u) == std::vector<std::string>{"x1", "x3", "x2", "x4", "x1", "x3", "x2"});
}

TEST_CASE("role invariants over every all-pi K4 labeling")
{
    const std::array<Angle, 5> A{Angle::zero(), Angle::pi_times(1, 6), Angle::pi_times(1, 4), Angle::pi_times(1, 3),
                                 Angle::pi_times(1, 2)};
    int seen = 0;
    for (std::uint32_t code = 0; code < 15625; ++code) {
        std::vector<Angle> lab(6);
        std::uint32_t c = code;
        for (auto& x : lab) {
            x = A[c % 5];
            c /= 5;
        }
        AngleLabeling l(4, lab);
        if (!k4_structure(l).all_triangles_pi)
            continue;
        ++seen;
        RoleMap r = assign_roles(l, {"a", "b", "c", "d"});
        const auto [x, y, z, t] = r.index;
        CHECK(l.at(x, z) == r.theta);
        CHECK(l.at(y, t) == r.theta);
        CHECK(l.at(x, y) == r.alpha);
        CHECK(l.at(z, t) == r.alpha);
        CHECK(l.at(y, z) == r.beta);
        CHECK(l.at(x, t) == r.beta);
        CHECK(r.theta >= r.alpha);
        CHECK(r.alpha >= r.beta);
        CHECK(r.theta + r.alpha + r.beta == Angle::pi());
    }
    CHECK(seen == 13);
}

TEST_CASE("all r = 8 K4 has a triangle below pi")
{
    auto c = classify(load("k4_r8.json"));
    CHECK(c.verdict == Verdict::FreeSubgroup);
    REQUIRE(std::holds_alternative<TriangleLocator>(c.evidence));
    const auto& t = std::get<TriangleLocator>(c.evidence);
    CHECK(t.vertices == std::array<std::string, 3>{"1", "2", "3"});
    CHECK(t.sum == Angle::pi_times(3, 4));
    CHECK(cites(c, "three_vertex_sum_below_pi_free_subgroup"));
    CHECK(cites(c, "subgraph_groups_embed"));
}

TEST_CASE("three vertices at sum pi are inconclusive")
{
    auto c = classify(load("k3_pi.json"));
    CHECK(c.verdict == Verdict::Inconclusive);
    CHECK(cites(c, "three_vertex_sum_pi_open"));
}

TEST_CASE("out of scope and non-spherical inputs")
{
    PrideGraph two;
    two.vertices = {{"1", "a", ExtNat(2)}, {"2", "b", ExtNat(2)}};
    CHECK(classify(two).verdict == Verdict::OutOfScope);

    PrideGraph g = load("k3_pi.json");
    g.edges[0].override_m = ExtNat(1);
    CHECK(classify(g).verdict == Verdict::OutOfScope);

    g = load("k3_pi.json");
    g.edges[0].relators[0].period = ExtNat(1);
    auto c = classify(g);
    CHECK(c.verdict == Verdict::Inconclusive);
    CHECK(std::get<Reason>(c.evidence).details.size() >= 1);
}

TEST_CASE("exceptional matching accepts rotations and inverses")
{
    PrideGraph g = load("square.json");
    g.edges[1].relators[0].base = parse_word("x3*x2");
    g.edges[2].relators[0] = {parse_word("x4*x3*x4*x3"), ExtNat(1)};
    g.edges.push_back({"1", "3", {}, ExtNat::infinity()});
    CHECK(match_exceptional(g).has_value());
    CHECK(classify(g).verdict == Verdict::VirtuallyAbelian);

    // the square drawn as 1-3-2-4-1
    PrideGraph h;
    for (int i = 1; i <= 4; ++i)
        h.vertices.push_back({std::to_string(i), "x" + std::to_string(i), ExtNat(2)});
    for (auto [a, b] : {std::pair{1, 3}, std::pair{3, 2}, std::pair{2, 4}, std::pair{4, 1}}) {
        std::string ga = "x" + std::to_string(a), gb = "x" + std::to_string(b);
        h.edges.push_back({std::to_string(a), std::to_string(b), {{FreeWord({{ga, 1}, {gb, 1}}), ExtNat(2)}}, std::nullopt});
    }
    auto cert = match_exceptional(h);
    REQUIRE(cert.has_value());
    CHECK(cert->relabeling == std::array<std::string, 4>{"1", "3", "2", "4"});
}

TEST_CASE("non-matching (pi/2, pi/2, 0) squares")
{
    // an extra relator on a cycle edge: same angles, different presentation
    PrideGraph g = load("square.json");
    g.edges[0].relators.push_back({parse_word("x1*x2"), ExtNat(3)});
    CHECK_FALSE(match_exceptional(g).has_value());
    CHECK(exceptional_near_miss(g));
    auto c = classify(g);
    CHECK(c.verdict == Verdict::Inconclusive);
    const auto& r = std::get<Reason>(c.evidence);
    CHECK(r.flags == std::vector<std::string>{"nonstandard_exceptional_candidate"});

    // an order-4 vertex on an angle-0 pair
    PrideGraph h = load("square.json");
    h.vertices[0].order = ExtNat(4);
    CHECK_FALSE(match_exceptional(h).has_value());
    auto d = classify(h);
    CHECK(d.verdict == Verdict::FreeSubgroup);
    REQUIRE(std::holds_alternative<FreeProductLocator>(d.evidence));
    CHECK(std::get<FreeProductLocator>(d.evidence).vertices == std::array<std::string, 2>{"1", "3"});
    CHECK(cites(d, "cyclic_free_product_contains_free_subgroup"));
}

TEST_CASE("verdicts are invariant under vertex reordering")
{
    std::mt19937_64 rng(5);
    for (const char* f : {"square.json", "k4_pi3.json", "k4_r8.json", "k3_pi.json"}) {
        PrideGraph g = load(f);
        Verdict v = classify(g).verdict;
        for (int trial = 0; trial < 12; ++trial) {
            PrideGraph h = g;
            std::shuffle(h.vertices.begin(), h.vertices.end(), rng);
            std::shuffle(h.edges.begin(), h.edges.end(), rng);
            CHECK(classify(h).verdict == v);
        }
    }
}

TEST_CASE("five vertices use a four-vertex witness")
{
    auto c = classify(uniform_complete(5, 3));
    CHECK(c.verdict == Verdict::FreeSubgroup);
    REQUIRE(std::holds_alternative<SubgraphLocator>(c.evidence));
    const auto& s = std::get<SubgraphLocator>(c.evidence);
    CHECK(s.vertices == std::array<std::string, 4>{"1", "2", "3", "4"});
    CHECK(std::holds_alternative<WitnessCert>(s.inner));
    CHECK(cites(c, "no_five_vertex_exceptional_labeling"));
}

TEST_CASE("labeling impossibility")
{
    auto r4 = verify_labeling_impossibility(4);
    CHECK(r4.possible);
    REQUIRE(r4.witness.has_value());
    CHECK(k4_structure(*r4.witness).triple == AngleMultiset{Angle::pi_times(1, 2), Angle::pi_times(1, 2), Angle::zero()});
    CHECK(r4.witness->at(0, 2) == Angle::zero());
    CHECK(r4.witness->at(1, 3) == Angle::zero());
    CHECK(r4.labelings_covered == 15625);
    CHECK(r4.pi_labelings == count_pi_labelings_brute(4));

    auto r5 = verify_labeling_impossibility(5);
    CHECK_FALSE(r5.possible);
    CHECK(r5.exceptional_labelings == 0);
    CHECK(r5.labelings_covered == 9765625);
    CHECK(r5.pi_labelings == count_pi_labelings_brute(5));

    auto r6 = verify_labeling_impossibility(6);
    CHECK_FALSE(r6.possible);

    CHECK_THROWS_AS(verify_labeling_impossibility(3), InputError);
}

TEST_CASE("classification JSON shape")
{
    auto j = to_json(classify(load("k4_pi3.json")));
    CHECK(j["verdict"] == "free_subgroup");
    CHECK(j["evidence"]["kind"] == "witness");
    CHECK(j["citations"].is_array());
}

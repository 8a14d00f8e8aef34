#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pridealt/error.hpp"
#include "pridealt/pride_model.hpp"

#include <fstream>
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

bool has_violation(const PrideGraph& g, const std::string& needle)
{
    for (const auto& v : validate(g))
        if (v.message.find(needle) != std::string::npos)
            return true;
    return false;
}

PrideGraph two_vertices()
{
    PrideGraph g;
    g.vertices = {{"1", "a", ExtNat(2)}, {"2", "b", ExtNat(3)}};
    g.edges = {{"1", "2", {{parse_word("a*b"), ExtNat(2)}}, std::nullopt}};
    return g;
}

} // namespace

TEST_CASE("parse the square input")
{
    PrideGraph g = parse_pride_graph(slurp("square.json"));
    CHECK(g.vertices.size() == 4);
    CHECK(g.edges.size() == 4);
    CHECK(g.vertex("3").gen == "x3");
    CHECK(g.find_edge("1", "4") != nullptr);
    CHECK(g.find_edge("1", "3") == nullptr);
    CHECK_FALSE(g.is_complete());
    CHECK(validate(g).empty());

    PrideGraph c = complete(g);
    CHECK(c.is_complete());
    CHECK(c.edges.size() == 6);
    CHECK(c.edges[4].relators.empty());
    CHECK(flatten_presentation(c) == flatten_presentation(g));
}

TEST_CASE("JSON round trip")
{
    for (const char* f : {"square.json", "k3_pi.json", "k4_pi3.json", "k4_r8.json"}) {
        PrideGraph g = parse_pride_graph(slurp(f));
        CHECK(parse_pride_graph(to_json(g).dump()) == g);
    }
}

TEST_CASE("flatten_presentation order")
{
    PrideGraph g = parse_pride_graph(slurp("k3_pi.json"));
    Presentation p = flatten_presentation(g);
    CHECK(p.generators == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(p.relators.size() == 5);
    CHECK(to_string(p.relators[0]) == "a^2");
    CHECK(to_string(p.relators[1]) == "b^3");
    CHECK(to_string(p.relators[2]) == "a*b*a*b");
}

TEST_CASE("schema errors")
{
    CHECK_THROWS_AS(parse_pride_graph("{"), InputError);
    CHECK_THROWS_AS(parse_pride_graph(R"({"vertices": [], "extra": 1})"), InputError);
    CHECK_THROWS_AS(parse_pride_graph(R"({"vertices": [{"id": "1", "gen": "a"}]})"), InputError);
    CHECK_THROWS_AS(parse_pride_graph(R"({"vertices": [{"id": "1", "gen": "a", "order": 1}]})"), InputError);
    CHECK_THROWS_AS(parse_pride_graph(R"({"vertices": [{"id": "1", "gen": "a", "order": "big"}]})"), InputError);
    CHECK_THROWS_AS(parse_pride_graph(R"({"vertices": [{"id": "1", "gen": "a", "order": 2, "colour": 3}]})"),
                    InputError);
    // the message carries a location
    try {
        parse_pride_graph(R"({"vertices": [{"id": "1", "gen": "a", "order": 2}],
                              "edges": [{"ends": ["1", "1"], "relators": [{"word": "a^", "period": 2}]}]})");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("/edges/0/relators/0/word") != std::string::npos);
    }
}

TEST_CASE("validation")
{
    CHECK(validate(two_vertices()).empty());

    auto g = two_vertices();
    g.vertices[1].id = "1";
    CHECK(has_violation(g, "duplicate vertex id"));

    g = two_vertices();
    g.vertices[1].gen = "a";
    CHECK(has_violation(g, "duplicate generator"));

    g = two_vertices();
    g.edges.push_back(g.edges[0]);
    CHECK(has_violation(g, "duplicate edge"));

    g = two_vertices();
    g.edges[0].b = "1";
    CHECK(has_violation(g, "loop"));

    g = two_vertices();
    g.edges[0].relators[0].base = parse_word("a*c");
    CHECK(has_violation(g, "not an endpoint generator"));

    g = two_vertices();
    g.edges[0].relators[0].base = parse_word("a^3");
    CHECK(has_violation(g, "free length < 2"));

    g = two_vertices();
    g.edges[0].relators[0].base = parse_word("a*b*a");
    CHECK(has_violation(g, "cyclically reduced"));

    g = two_vertices();
    g.edges[0].override_m = ExtNat(6);
    CHECK(validate(g).empty());
    g.edges[0].override_m = ExtNat(5);
    CHECK(has_violation(g, "override_m"));
    g.edges[0].override_m = ExtNat(2);
    CHECK(has_violation(g, "override_m"));
    g.edges[0].override_m = ExtNat::infinity();
    CHECK(validate(g).empty());

    g = two_vertices();
    g.edges[0].b = "9";
    CHECK(has_violation(g, "is not a vertex"));
    CHECK_THROWS_AS(require_valid(g), InputError);
}

TEST_CASE("full_subgraph keeps graph order")
{
    PrideGraph g = complete(parse_pride_graph(slurp("k4_pi3.json")));
    std::vector<std::string> ids{"4", "2", "1"};
    PrideGraph s = full_subgraph(g, ids);
    REQUIRE(s.vertices.size() == 3);
    CHECK(s.vertices[0].id == "1");
    CHECK(s.vertices[2].id == "4");
    CHECK(s.edges.size() == 3);
    CHECK(s.is_complete());
}

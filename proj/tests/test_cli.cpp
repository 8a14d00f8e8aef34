#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pridealt/cli.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pridealt;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name)
{
    return std::string(PRIDEALT_TEST_DATA) + "/" + name;
}

std::string temp_file(const std::string& name, const std::string& content)
{
    auto p = std::filesystem::temp_directory_path() / ("pridealt_test_" + name);
    std::ofstream(p) << content;
    return p.string();
}

} // namespace

TEST_CASE("sha256")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("classify envelope")
{
    Result r = call({"classify", data("square.json")});
    REQUIRE(r.code == 0);
    auto j = nlohmann::ordered_json::parse(r.out);
    auto it = j.begin();
    CHECK(it.key() == "tool");
    CHECK((++it).key() == "tool_version");
    CHECK(j["tool_version"] == std::string(tool_version));
    CHECK(j["command"] == "classify");
    CHECK(j["input_digest"].get<std::string>().rfind("sha256:", 0) == 0);
    CHECK(j["verdict"] == "virtually_abelian");
    CHECK(j["evidence"]["kind"] == "exceptional");

    CHECK(call({"classify", data("k4_pi3.json")}).out.find("\"free_subgroup\"") != std::string::npos);
    CHECK(call({"classify", data("k3_pi.json")}).out.find("\"inconclusive\"") != std::string::npos);
    CHECK(call({"--pretty", "classify", data("k4_r8.json")}).out.find("\n  ") != std::string::npos);
}

TEST_CASE("input errors exit 1")
{
    CHECK(call({}).code == 1);
    CHECK(call({"classify"}).code == 1);
    CHECK(call({"classify", "/nonexistent/graph.json"}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    Result bad = call({"classify", temp_file("bad.json", R"({"vertices": [], "weird": 0})")});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("unknown field") != std::string::npos);
    CHECK(call({"impossibility", "--n", "3"}).code == 1);
    CHECK(call({"enumerate-triangles", "--max-m", "2"}).code == 1);
    CHECK(call({"verify-assembly", "--word", "t^3"}).code == 1);
    CHECK(call({"witness", data("square.json")}).code == 1);
}

TEST_CASE("help exits 0")
{
    Result r = call({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("classify") != std::string::npos);
}

TEST_CASE("check-nonspherical reports scope")
{
    Result r = call({"check-nonspherical", data("k3_pi.json")});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["corollary"]["verdict"] == true);
    Result f = call({"check-nonspherical", data("square.json")});
    REQUIRE(f.code == 0);
    CHECK(nlohmann::json::parse(f.out)["nonspherical"]["verdict"] == true);
}

TEST_CASE("witness and angles")
{
    Result w = call({"witness", data("k4_pi3.json")});
    REQUIRE(w.code == 0);
    CHECK(w.out.find("x1*x2*x3*x4*x1*x2*x3") != std::string::npos);
    CHECK(call({"angles", data("k3_pi.json")}).code == 0);
}

TEST_CASE("todd-coxeter")
{
    std::string sq = temp_file("square.json", R"({"generators": ["x1","x2","x3","x4"],
        "relators": ["x1^2","x2^2","x3^2","x4^2","x1*x2*x1*x2","x2*x3*x2*x3","x3*x4*x3*x4","x4*x1*x4*x1"]})");
    Result r = call({"todd-coxeter", sq, "--subgroup", "x1*x3", "--subgroup", "x2*x4"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["table"]["index"] == 4);

    // the same group read from a Pride graph
    Result k = call({"todd-coxeter", data("square.json"), "--subgroup", "x1*x3", "--subgroup", "x2*x4"});
    REQUIRE(k.code == 0);
    CHECK(nlohmann::json::parse(k.out)["table"]["index"] == 4);

    // infinite group, trivial subgroup
    Result o = call({"todd-coxeter", data("square.json"), "--max-cosets", "40"});
    CHECK(o.code == 1);
    CHECK(nlohmann::json::parse(o.out)["table"]["status"] == "overflow");
}

TEST_CASE("fast commands are byte-reproducible")
{
    const std::vector<std::vector<std::string>> cmds{
        {"classify", data("square.json")},
        {"classify", data("k4_pi3.json")},
        {"check-nonspherical", data("k3_pi.json")},
        {"angles", data("k4_r8.json")},
        {"witness", data("k4_pi3.json")},
        {"enumerate-triangles", "--max-m", "200"},
        {"impossibility", "--n", "4"},
        {"verify-square"},
    };
    for (const auto& c : cmds) {
        Result a = call(c), b = call(c);
        INFO(c[0]);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

#include "pridealt/cli.hpp"

#include "pridealt/angles.hpp"
#include "pridealt/classifier.hpp"
#include "pridealt/curvature.hpp"
#include "pridealt/error.hpp"
#include "pridealt/oracle.hpp"
#include "pridealt/pride_model.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

namespace pridealt {

using ojson = nlohmann::ordered_json;

std::string sha256_hex(std::string_view data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; ++i) {
        s.push_back(hex[md[i] >> 4]);
        s.push_back(hex[md[i] & 15]);
    }
    return s;
}

namespace {

std::string read_input(const std::string& path)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

spdlog::level::level_enum log_level()
{
    const char* v = std::getenv("PRIDEALT_LOG");
    if (!v)
        return spdlog::level::err;
    std::string s(v);
    if (s == "debug")
        return spdlog::level::debug;
    if (s == "info")
        return spdlog::level::info;
    return spdlog::level::err;
}

// Header fields first, then the report body.
ojson envelope(const std::string& command, const std::string& digest_source, const ojson& body)
{
    ojson j;
    j["tool"] = "pridealt";
    j["tool_version"] = std::string(tool_version);
    j["command"] = command;
    j["input_digest"] = "sha256:" + sha256_hex(digest_source);
    for (auto it = body.begin(); it != body.end(); ++it)
        j[it.key()] = it.value();
    return j;
}

Presentation presentation_from_json(const nlohmann::json& j)
{
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "generators" && it.key() != "relators")
            throw InputError("/" + it.key() + ": unknown field");
    if (!j.contains("generators") || !j["generators"].is_array())
        throw InputError("/generators: expected an array of generator names");
    Presentation p;
    for (const auto& g : j["generators"]) {
        if (!g.is_string() || !is_identifier(g.get<std::string>()))
            throw InputError("/generators: expected identifiers");
        p.generators.push_back(g.get<std::string>());
    }
    if (j.contains("relators")) {
        if (!j["relators"].is_array())
            throw InputError("/relators: expected an array of words");
        std::size_t k = 0;
        for (const auto& r : j["relators"]) {
            if (!r.is_string())
                throw InputError("/relators/" + std::to_string(k) + ": expected a word string");
            try {
                p.relators.push_back(parse_word(r.get<std::string>()));
            } catch (const InputError& e) {
                throw InputError("/relators/" + std::to_string(k) + ": " + e.what());
            }
            ++k;
        }
    }
    return p;
}

ojson angles_report(const PrideGraph& input)
{
    require_valid(input);
    const PrideGraph g = complete(input);
    const OrderMap orders = g.orders();
    ojson j;
    j["edges"] = ojson::array();
    for (const auto& e : g.edges) {
        ojson x;
        x["edge"] = {e.a, e.b};
        x["r"] = edge_r(e, orders).to_string();
        x["override_m"] = e.override_m ? ojson(e.override_m->to_string()) : ojson(nullptr);
        try {
            x["bound"] = gs_bound(e, orders).to_string();
        } catch (const ScopeError& err) {
            x["bound"] = nullptr;
            x["scope"] = err.what();
        }
        j["edges"].push_back(x);
    }
    if (g.vertices.size() >= 3) {
        try {
            j["nonspherical"] = to_json(check_nonspherical(g));
        } catch (const ScopeError& err) {
            j["nonspherical"] = {{"scope", err.what()}};
        }
        if (g.vertices.size() == 4) {
            try {
                const auto l = AngleLabeling::from_graph(g);
                const auto s = k4_structure(l);
                j["k4"] = {{"all_triangles_pi", s.all_triangles_pi},
                           {"opposite_edges_equal", s.opposite_edges_equal},
                           {"triple", s.triple ? to_json(*s.triple) : ojson(nullptr)}};
            } catch (const ScopeError& err) {
                j["k4"] = {{"scope", err.what()}};
            }
        }
    }
    return j;
}

ojson witness_report(const PrideGraph& input)
{
    require_valid(input);
    const PrideGraph g = complete(input);
    if (g.vertices.size() != 4)
        throw InputError("witness needs a four-vertex graph");
    const NonsphericalReport ns = check_nonspherical(g);
    if (!ns.verdict)
        throw InputError("witness needs a non-spherical graph");
    const AngleLabeling l = AngleLabeling::from_graph(g);
    std::vector<std::string> ids;
    for (const auto& v : g.vertices)
        ids.push_back(v.id);
    const RoleMap roles = assign_roles(l, ids);
    ojson j;
    j["roles"] = to_json(roles);
    j["witness"] = to_json(make_witness(g, roles));
    return j;
}

std::string trace_line(const ChainEnumeration& run, const ChainConfig& c)
{
    std::ostringstream s;
    s << run.triple.to_string() << " f=" << (run.hyp.follower == Role::T ? 't' : 'a') << " q=";
    for (std::size_t i = 0; i < 7; ++i)
        s << (i ? "," : "") << int(c.q[i]);
    s << " s=";
    for (std::size_t k = 0; k < 8; ++k)
        s << (k ? "," : "") << c.shared[k].to_string() << ":" << c.degree[k];
    s << " dS=" << c.dS.to_string();
    return s.str();
}

ojson claim_block(int claim, bool no_c7, bool no_c3, bool trace, spdlog::logger& log, bool& invariant_failed)
{
    ChainConstraints cons;
    cons.c7 = !no_c7;
    cons.c3 = !no_c3;
    const auto t0 = std::chrono::steady_clock::now();
    ClaimReport rep = claim == 1 ? verify_claim1(cons) : verify_claim2(cons);
    log.info("claim {} enumerated in {:.2f}s", claim, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    ojson j = to_json(rep);
    const bool research = no_c7 || no_c3;
    if (!research) {
        // only this claim's rows are kept, so the report serves both slots
        j["case_bounds"] = ojson::array();
        bool ok = true;
        for (const auto& cb : verify_case_bounds(rep, rep))
            if (cb.claim == claim) {
                ok = ok && cb.ok;
                j["case_bounds"].push_back(to_json(cb));
            }
        if (claim == 2) {
            PartialBoundCheck p = verify_case_47_prefix();
            ok = ok && p.ok;
            j["case_47_prefix"] = {{"max_d_D1D2D3", p.max_partial.to_string()}, {"bound", p.bound.to_string()}, {"ok", p.ok}};
            ChainConstraints off;
            off.c7 = false;
            ClaimReport without = verify_claim2(off);
            ojson eff = to_json(without);
            j["c7_effect"] = {{"max_dS_without_c7", eff["max_dS"]},
                              {"violation_two_gon_sets", eff["violation_two_gon_sets"]},
                              {"c7_needed", !without.verdict}};
        }
        j["case_bounds_ok"] = ok;
        invariant_failed = invariant_failed || !rep.verdict || !ok;
    } else if (no_c7 && claim == 2) {
        std::set<std::vector<int>> sets;
        for (const auto& v : rep.violations)
            sets.insert(v.two_gons);
        const std::set<std::vector<int>> expected{{3, 7}, {5, 7}};
        j["expected_violation_sets"] = ojson::array({std::vector<int>{3, 7}, std::vector<int>{5, 7}});
        j["violations_as_expected"] = sets == expected;
    }
    if (trace) {
        ChainConstraints tc = cons;
        j["trace"] = ojson::array();
        const bool at = claim == 2;
        for (const auto& t : admissible_triples())
            for (Role f : {Role::T, Role::A}) {
                ChainEnumeration shell;
                shell.triple = t;
                shell.hyp = Hypothesis{at, f, Role::T};
                enumerate_chain_configs(shell.hyp, t, tc, [&](const ChainConfig& c) { j["trace"].push_back(trace_line(shell, c)); });
            }
    }
    return j;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
    spdlog::logger log("pridealt", sink);
    log.set_level(log_level());
    log.set_pattern("[%l] %v");

    CLI::App app{"Free-subgroup classifier and proof checker for Pride groups"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "Indented JSON output");

    std::string file;
    auto* classify_cmd = app.add_subcommand("classify", "Classify a Pride graph");
    classify_cmd->add_option("file", file, "Pride graph JSON ('-' for stdin)")->required();
    auto* ns_cmd = app.add_subcommand("check-nonspherical", "Angle-bound non-sphericity and the corollary criterion");
    ns_cmd->add_option("file", file, "Pride graph JSON")->required();
    auto* angles_cmd = app.add_subcommand("angles", "Per-edge angle bounds");
    angles_cmd->add_option("file", file, "Pride graph JSON")->required();
    auto* witness_cmd = app.add_subcommand("witness", "Role assignment and witness word for an all-pi K4");
    witness_cmd->add_option("file", file, "Pride graph JSON")->required();

    int claim = 0;
    bool no_c7 = false, no_c3 = false, trace = false;
    auto* claims_cmd = app.add_subcommand("verify-claims", "Exhaustive check of the two chain claims");
    claims_cmd->add_option("--claim", claim, "1 or 2 (default both)")->check(CLI::Range(1, 2));
    claims_cmd->add_flag("--no-c7", no_c7, "Disable the deg >= 5 refinements");
    claims_cmd->add_flag("--no-c3", no_c3, "Allow adjacent exterior 2-gons");
    claims_cmd->add_flag("--trace", trace, "Emit every admissible configuration");

    std::vector<std::string> words;
    auto* assembly_cmd = app.add_subcommand("verify-assembly", "Exterior-sum contradiction schema");
    assembly_cmd->add_option("--word", words, "Cyclic word in t and u (default u^3 and t^2*u^-1)");

    std::uint64_t max_m = 1000;
    auto* tri_cmd = app.add_subcommand("enumerate-triangles", "Angle multisets summing to pi");
    tri_cmd->add_option("--max-m", max_m, "Largest finite m")->check(CLI::Range(std::uint64_t{4}, std::uint64_t{1000000}));

    std::size_t n = 5;
    auto* imp_cmd = app.add_subcommand("impossibility", "Exhaustive K_n labeling search");
    imp_cmd->add_option("--n", n, "Vertex count, 4..7");

    auto* square_cmd = app.add_subcommand("verify-square", "Exceptional group certificate");

    std::vector<std::string> subgroup;
    std::size_t max_cosets = 100000;
    auto* tc_cmd = app.add_subcommand("todd-coxeter", "Coset enumeration");
    tc_cmd->add_option("file", file, "Pride graph or {generators, relators} JSON")->required();
    tc_cmd->add_option("--subgroup", subgroup, "Subgroup generator word (repeatable)");
    tc_cmd->add_option("--max-cosets", max_cosets, "Coset cap");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    const auto emit = [&](const std::string& command, const std::string& digest_source, const ojson& body) {
        out << envelope(command, digest_source, body).dump(pretty ? 2 : -1) << "\n";
    };

    try {
        if (classify_cmd->parsed()) {
            const std::string text = read_input(file);
            Classification c = classify(parse_pride_graph(text));
            emit("classify", text, to_json(c));
            return 0;
        }
        if (ns_cmd->parsed()) {
            const std::string text = read_input(file);
            PrideGraph g = parse_pride_graph(text);
            require_valid(g);
            g = complete(g);
            ojson j;
            j["nonspherical"] = to_json(check_nonspherical(g));
            try {
                j["corollary"] = to_json(corollary_criterion(g));
            } catch (const ScopeError& e) {
                j["corollary"] = {{"scope", e.what()}};
            }
            emit("check-nonspherical", text, j);
            return 0;
        }
        if (angles_cmd->parsed()) {
            const std::string text = read_input(file);
            emit("angles", text, angles_report(parse_pride_graph(text)));
            return 0;
        }
        if (witness_cmd->parsed()) {
            const std::string text = read_input(file);
            emit("witness", text, witness_report(parse_pride_graph(text)));
            return 0;
        }
        if (claims_cmd->parsed()) {
            ojson params{{"claim", claim}, {"no_c7", no_c7}, {"no_c3", no_c3}, {"trace", trace}};
            bool failed = false;
            ojson body;
            if (claim != 0) {
                body = claim_block(claim, no_c7, no_c3, trace, log, failed);
            } else {
                ojson a = claim_block(1, no_c7, no_c3, trace, log, failed);
                ojson b = claim_block(2, no_c7, no_c3, trace, log, failed);
                body["verdict"] = a["verdict"] == "pass" && b["verdict"] == "pass" ? "pass" : "fail";
                body["claims"] = {a, b};
            }
            ojson ordered;
            ordered["verdict"] = body["verdict"];
            if (body.contains("max_dS"))
                ordered["max_dS"] = body["max_dS"];
            for (auto it = body.begin(); it != body.end(); ++it)
                ordered[it.key()] = it.value();
            emit("verify-claims", params.dump(), ordered);
            if (failed) {
                err << "error: claim verification failed\n";
                return 2;
            }
            return 0;
        }
        if (assembly_cmd->parsed()) {
            if (words.empty())
                words = {"u^3", "t^2*u^-1"};
            ojson params{{"words", words}};
            ClaimReport c1 = verify_claim1(), c2 = verify_claim2();
            ojson j;
            j["claim1_max_dS"] = c1.max_dS.to_string();
            j["claim2_max_dS"] = c2.max_dS.to_string();
            j["interior"] = ojson::array();
            for (const auto& t : admissible_triples())
                j["interior"].push_back(to_json(interior_bound_check(t)));
            j["schemas"] = ojson::array();
            bool all = true;
            for (const auto& w : words) {
                AssemblyReport r = verify_assembly(w, c1, c2);
                all = all && r.contradiction;
                j["schemas"].push_back(to_json(r));
            }
            ojson body{{"verdict", all ? "pass" : "fail"}};
            for (auto it = j.begin(); it != j.end(); ++it)
                body[it.key()] = it.value();
            emit("verify-assembly", params.dump(), body);
            return all ? 0 : 2;
        }
        if (tri_cmd->parsed()) {
            ojson params{{"max_m", max_m}};
            ojson list = ojson::array();
            for (const auto& m : enumerate_pi_triangles(max_m))
                list.push_back(to_json(m));
            emit("enumerate-triangles", params.dump(), {{"max_m", max_m}, {"count", list.size()}, {"multisets", list}});
            return 0;
        }
        if (imp_cmd->parsed()) {
            ojson params{{"n", n}};
            ImpossibilityResult r = verify_labeling_impossibility(n);
            emit("impossibility", params.dump(), to_json(r));
            if ((n == 4) != r.possible) {
                err << "error: labeling search contradicts the four-vertex analysis\n";
                return 2;
            }
            return 0;
        }
        if (square_cmd->parsed()) {
            SquareCertificate c = verify_square_group();
            emit("verify-square", "verify-square", to_json(c));
            if (!c.pass) {
                for (const auto& x : c.checks)
                    if (!x.pass)
                        err << "error: failed check: " << x.name << "\n";
                return 2;
            }
            return 0;
        }
        if (tc_cmd->parsed()) {
            const std::string text = read_input(file);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(text);
            } catch (const nlohmann::json::parse_error& e) {
                throw InputError(std::string("malformed JSON: ") + e.what());
            }
            Presentation p;
            if (j.is_object() && j.contains("vertices")) {
                PrideGraph g = pride_graph_from_json(j);
                require_valid(g);
                p = flatten_presentation(g);
            } else if (j.is_object()) {
                p = presentation_from_json(j);
            } else {
                throw InputError("/: expected an object");
            }
            std::vector<FreeWord> subs;
            for (const auto& s : subgroup)
                subs.push_back(parse_word(s));
            if (max_cosets < 1)
                throw InputError("--max-cosets must be at least 1");
            CosetTable t = todd_coxeter(p, subs, max_cosets);
            ojson params{{"input", text}, {"subgroup", subgroup}, {"max_cosets", max_cosets}};
            emit("todd-coxeter", params.dump(), {{"presentation", to_json(p)}, {"subgroup", subgroup}, {"table", to_json(t)}});
            if (!t.complete) {
                err << "error: coset enumeration exceeded --max-cosets " << max_cosets << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const VerificationError& e) {
        err << "internal verification failure: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ScopeError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::overflow_error& e) {
        err << "error: arithmetic overflow: " << e.what() << "\n";
        return 1;
    }
    err << "error: no command\n";
    return 1;
}

} // namespace pridealt

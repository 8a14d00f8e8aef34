#include "pridealt/pride_model.hpp"

#include "pridealt/error.hpp"

#include <algorithm>
#include <set>

namespace pridealt {

std::optional<std::size_t> PrideGraph::vertex_index(std::string_view id) const
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id)
            return i;
    return std::nullopt;
}

const VertexGroup& PrideGraph::vertex(std::string_view id) const
{
    auto i = vertex_index(id);
    if (!i)
        throw InputError("unknown vertex id '" + std::string(id) + "'");
    return vertices[*i];
}

const Edge* PrideGraph::find_edge(std::string_view u, std::string_view v) const
{
    for (const auto& e : edges)
        if (e.joins(u, v))
            return &e;
    return nullptr;
}

bool PrideGraph::is_complete() const
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (!find_edge(vertices[i].id, vertices[j].id))
                return false;
    return true;
}

OrderMap PrideGraph::orders() const
{
    OrderMap m;
    for (const auto& v : vertices)
        m.emplace(v.gen, v.order);
    return m;
}

std::vector<Violation> validate(const PrideGraph& g)
{
    std::vector<Violation> out;
    auto report = [&](std::string loc, std::string msg) { out.push_back({std::move(loc), std::move(msg)}); };

    std::set<std::string, std::less<>> ids;
    std::set<std::string, std::less<>> gens;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        std::string loc = "vertices[" + std::to_string(i) + "]";
        if (v.id.empty())
            report(loc, "empty vertex id");
        else if (!ids.insert(v.id).second)
            report(loc, "duplicate vertex id '" + v.id + "'");
        if (!is_identifier(v.gen))
            report(loc, "generator '" + v.gen + "' is not an identifier");
        else if (!gens.insert(v.gen).second)
            report(loc, "duplicate generator '" + v.gen + "'");
        if (v.order.is_finite() && v.order.value() < 2)
            report(loc, "vertex group order must be >= 2 or inf");
    }

    const OrderMap orders = g.orders();
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        std::string loc = "edges[" + std::to_string(i) + "]";
        bool ends_ok = true;
        for (const auto* end : {&e.a, &e.b}) {
            if (!g.vertex_index(*end)) {
                report(loc, "endpoint '" + *end + "' is not a vertex");
                ends_ok = false;
            }
        }
        if (e.a == e.b) {
            report(loc, "not simplicial: loop at '" + e.a + "'");
            ends_ok = false;
        }
        if (ends_ok) {
            auto key = std::minmax(e.a, e.b);
            if (!seen.insert({key.first, key.second}).second)
                report(loc, "not simplicial: duplicate edge {" + e.a + "," + e.b + "}");
        }
        if (e.override_m) {
            const auto& m = *e.override_m;
            bool ok = m.is_infinite() || m.value() == 1 || (m.value() >= 4 && m.value() % 2 == 0);
            if (!ok)
                report(loc, "override_m must be 1, even >= 4, or inf");
        }
        if (!ends_ok)
            continue;
        const auto& ga = g.vertex(e.a).gen;
        const auto& gb = g.vertex(e.b).gen;
        for (std::size_t r = 0; r < e.relators.size(); ++r) {
            const auto& rel = e.relators[r];
            std::string rloc = loc + ".relators[" + std::to_string(r) + "]";
            bool foreign = false;
            for (const auto& s : rel.base.syllables) {
                if (s.gen != ga && s.gen != gb) {
                    report(rloc, "generator '" + s.gen + "' is not an endpoint generator");
                    foreign = true;
                    break;
                }
            }
            if (rel.period.is_finite() && rel.period.value() < 1)
                report(rloc, "period must be >= 1 or inf");
            if (foreign)
                continue;
            FreeWord n = normalize(rel.base, orders);
            if (n.size() < 2)
                report(rloc, "free length < 2");
            else if (!is_cyclically_reduced(n, orders) || n != rel.base)
                report(rloc, "base is not a cyclically reduced normal form");
        }
    }
    return out;
}

void require_valid(const PrideGraph& g)
{
    auto v = validate(g);
    if (v.empty())
        return;
    std::string msg = "invalid Pride graph:";
    for (const auto& x : v)
        msg += "\n  " + x.location + ": " + x.message;
    throw InputError(msg);
}

PrideGraph complete(const PrideGraph& g)
{
    PrideGraph out = g;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < g.vertices.size(); ++j)
            if (!g.find_edge(g.vertices[i].id, g.vertices[j].id))
                out.edges.push_back(Edge{g.vertices[i].id, g.vertices[j].id, {}, std::nullopt});
    return out;
}

PrideGraph full_subgraph(const PrideGraph& g, std::span<const std::string> ids)
{
    for (const auto& id : ids)
        if (!g.vertex_index(id))
            throw InputError("unknown vertex id '" + id + "'");
    auto keep = [&](const std::string& id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); };
    PrideGraph out;
    for (const auto& v : g.vertices)
        if (keep(v.id))
            out.vertices.push_back(v);
    for (const auto& e : g.edges)
        if (keep(e.a) && keep(e.b))
            out.edges.push_back(e);
    return out;
}

Presentation flatten_presentation(const PrideGraph& g)
{
    Presentation p;
    for (const auto& v : g.vertices) {
        p.generators.push_back(v.gen);
        if (v.order.is_finite())
            p.relators.push_back(FreeWord({{v.gen, static_cast<std::int64_t>(v.order.value())}}));
    }
    for (const auto& e : g.edges)
        for (const auto& r : e.relators)
            if (r.period.is_finite())
                p.relators.push_back(free_normalize(power(r.base, r.period.value())));
    return p;
}

// JSON --------------------------------------------------------------------

namespace {

ExtNat ext_nat_from_json(const nlohmann::json& j, const std::string& loc, std::uint64_t min_value)
{
    if (j.is_string()) {
        if (j.get<std::string>() == "inf")
            return ExtNat::infinity();
        throw InputError(loc + ": expected an integer or \"inf\"");
    }
    if (!j.is_number_integer())
        throw InputError(loc + ": expected an integer or \"inf\"");
    auto v = j.get<std::int64_t>();
    if (v < static_cast<std::int64_t>(min_value))
        throw InputError(loc + ": value " + std::to_string(v) + " below minimum " + std::to_string(min_value));
    return ExtNat(static_cast<std::uint64_t>(v));
}

nlohmann::ordered_json ext_nat_to_json(const ExtNat& e)
{
    if (e.is_infinite())
        return "inf";
    return e.value();
}

void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> allowed, const std::string& loc)
{
    if (!obj.is_object())
        throw InputError(loc + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!ok)
            throw InputError(loc + ": unknown field '" + key + "'");
    }
}

const nlohmann::json& require_field(const nlohmann::json& obj, const char* key, const std::string& loc)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw InputError(loc + ": missing field '" + key + "'");
    return *it;
}

std::string require_string(const nlohmann::json& j, const std::string& loc)
{
    if (!j.is_string())
        throw InputError(loc + ": expected a string");
    return j.get<std::string>();
}

} // namespace

PrideGraph pride_graph_from_json(const nlohmann::json& j)
{
    reject_unknown(j, {"vertices", "edges"}, "/");
    PrideGraph g;
    const auto& vs = require_field(j, "vertices", "/");
    if (!vs.is_array())
        throw InputError("/vertices: expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string loc = "/vertices/" + std::to_string(i);
        reject_unknown(vs[i], {"id", "gen", "order"}, loc);
        VertexGroup v;
        v.id = require_string(require_field(vs[i], "id", loc), loc + "/id");
        v.gen = require_string(require_field(vs[i], "gen", loc), loc + "/gen");
        v.order = ext_nat_from_json(require_field(vs[i], "order", loc), loc + "/order", 2);
        g.vertices.push_back(std::move(v));
    }
    auto es_it = j.find("edges");
    if (es_it == j.end())
        return g;
    if (!es_it->is_array())
        throw InputError("/edges: expected an array");
    for (std::size_t i = 0; i < es_it->size(); ++i) {
        const auto& ej = (*es_it)[i];
        std::string loc = "/edges/" + std::to_string(i);
        reject_unknown(ej, {"ends", "relators", "override_m"}, loc);
        const auto& ends = require_field(ej, "ends", loc);
        if (!ends.is_array() || ends.size() != 2)
            throw InputError(loc + "/ends: expected a pair of vertex ids");
        Edge e;
        e.a = require_string(ends[0], loc + "/ends/0");
        e.b = require_string(ends[1], loc + "/ends/1");
        if (auto rit = ej.find("relators"); rit != ej.end()) {
            if (!rit->is_array())
                throw InputError(loc + "/relators: expected an array");
            for (std::size_t r = 0; r < rit->size(); ++r) {
                std::string rloc = loc + "/relators/" + std::to_string(r);
                const auto& rj = (*rit)[r];
                reject_unknown(rj, {"word", "period"}, rloc);
                EdgeRelator rel;
                try {
                    rel.base = parse_word(require_string(require_field(rj, "word", rloc), rloc + "/word"));
                } catch (const InputError& err) {
                    throw InputError(rloc + "/word: " + err.what());
                }
                if (auto pit = rj.find("period"); pit != rj.end())
                    rel.period = ext_nat_from_json(*pit, rloc + "/period", 1);
                e.relators.push_back(std::move(rel));
            }
        }
        if (auto oit = ej.find("override_m"); oit != ej.end())
            e.override_m = ext_nat_from_json(*oit, loc + "/override_m", 1);
        g.edges.push_back(std::move(e));
    }
    return g;
}

PrideGraph parse_pride_graph(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    PrideGraph g = pride_graph_from_json(j);
    // relator bases are stored in normal form so that validation and
    // structural comparison see a canonical word
    const OrderMap orders = g.orders();
    for (auto& e : g.edges)
        for (auto& r : e.relators) {
            bool known = std::all_of(r.base.syllables.begin(), r.base.syllables.end(),
                [&](const Syllable& s) { return orders.count(s.gen) != 0; });
            if (known)
                r.base = normalize(r.base, orders);
        }
    return g;
}

nlohmann::ordered_json to_json(const PrideGraph& g)
{
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : g.vertices)
        j["vertices"].push_back({{"id", v.id}, {"gen", v.gen}, {"order", ext_nat_to_json(v.order)}});
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) {
        nlohmann::ordered_json ej;
        ej["ends"] = {e.a, e.b};
        ej["relators"] = nlohmann::ordered_json::array();
        for (const auto& r : e.relators)
            ej["relators"].push_back({{"word", to_string(r.base)}, {"period", ext_nat_to_json(r.period)}});
        if (e.override_m)
            ej["override_m"] = ext_nat_to_json(*e.override_m);
        j["edges"].push_back(std::move(ej));
    }
    return j;
}

nlohmann::ordered_json to_json(const Presentation& p)
{
    nlohmann::ordered_json j;
    j["generators"] = p.generators;
    j["relators"] = nlohmann::ordered_json::array();
    for (const auto& r : p.relators)
        j["relators"].push_back(to_string(r));
    return j;
}

} // namespace pridealt

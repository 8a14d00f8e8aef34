#include "pridealt/angles.hpp"

#include "pridealt/error.hpp"

#include <algorithm>
#include <functional>

namespace pridealt {

ExtNat edge_r(const Edge& e, const OrderMap& orders)
{
    ExtNat best = ExtNat::infinity();
    for (const auto& rel : e.relators) {
        ExtNat w = ExtNat(free_length(rel.base, orders)) * rel.period;
        best = std::min(best, w);
    }
    return best;
}

ExtNat edge_m_bound(const Edge& e, const OrderMap& orders)
{
    if (e.override_m)
        return *e.override_m;
    return edge_r(e, orders);
}

Angle gs_bound(const Edge& e, const OrderMap& orders)
{
    if (e.override_m && *e.override_m == ExtNat(1))
        throw ScopeError("edge {" + e.a + "," + e.b + "}: vertex group fails to embed; out of classifier scope");
    return Angle::two_pi_over(edge_m_bound(e, orders));
}

namespace {

void require_complete(const PrideGraph& g)
{
    if (!g.is_complete())
        throw InputError("graph is not complete; call complete() first");
}

const Edge& edge_between(const PrideGraph& g, std::size_t i, std::size_t j)
{
    const Edge* e = g.find_edge(g.vertices[i].id, g.vertices[j].id);
    if (!e)
        throw InputError("graph is not complete; call complete() first");
    return *e;
}

} // namespace

NonsphericalReport check_nonspherical(const PrideGraph& g)
{
    if (g.vertices.size() < 3)
        throw InputError("non-sphericity needs at least three vertices");
    require_complete(g);
    const OrderMap orders = g.orders();
    const std::size_t n = g.vertices.size();
    const Angle half_pi = Angle::pi_times(1, 2);

    NonsphericalReport rep;
    rep.verdict = true;
    std::vector<Angle> bound(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Edge& e = edge_between(g, i, j);
            EdgeCheck c{g.vertices[i].id, g.vertices[j].id, edge_m_bound(e, orders), gs_bound(e, orders), false};
            c.pass = c.bound <= half_pi;
            rep.verdict = rep.verdict && c.pass;
            bound[i * n + j] = bound[j * n + i] = c.bound;
            rep.cond_i.push_back(std::move(c));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                TriangleCheck t;
                t.vertices = {g.vertices[i].id, g.vertices[j].id, g.vertices[k].id};
                t.sum = bound[i * n + j] + bound[j * n + k] + bound[i * n + k];
                t.pass = t.sum <= Angle::pi();
                rep.verdict = rep.verdict && t.pass;
                rep.cond_ii.push_back(std::move(t));
            }
    return rep;
}

CorollaryReport corollary_criterion(const PrideGraph& g)
{
    if (g.vertices.size() < 3)
        throw InputError("corollary criterion needs at least three vertices");
    require_complete(g);
    for (const auto& e : g.edges) {
        if (e.override_m)
            throw ScopeError("edge {" + e.a + "," + e.b + "} carries override_m; corollary criterion needs relator data");
        for (const auto& r : e.relators)
            if (r.period == ExtNat(1))
                throw ScopeError("edge {" + e.a + "," + e.b + "} has a period-1 relator; corollary class needs periods >= 2");
    }
    const OrderMap orders = g.orders();
    const std::size_t n = g.vertices.size();
    std::vector<Rational> inv(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ExtNat r = edge_r(edge_between(g, i, j), orders);
            inv[i * n + j] = inv[j * n + i] = r.is_infinite() ? Rational(0) : Rational(1, static_cast<std::int64_t>(r.value()));
        }
    CorollaryReport rep;
    rep.verdict = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                CorollaryTriangle t;
                t.vertices = {g.vertices[i].id, g.vertices[j].id, g.vertices[k].id};
                t.sum = inv[i * n + j] + inv[j * n + k] + inv[i * n + k];
                t.pass = t.sum <= Rational(1, 2);
                rep.verdict = rep.verdict && t.pass;
                rep.triangles.push_back(std::move(t));
            }
    return rep;
}

AngleMultiset sorted_multiset(Angle a, Angle b, Angle c)
{
    AngleMultiset m{a, b, c};
    std::sort(m.begin(), m.end(), std::greater<>());
    return m;
}

std::vector<AngleMultiset> enumerate_pi_triangles(std::uint64_t max_m)
{
    if (max_m < 4)
        throw InputError("enumerate_pi_triangles needs max_m >= 4");
    // candidate m values in increasing order (angles decreasing), infinity last
    std::vector<ExtNat> ms;
    for (std::uint64_t m = 4; m <= max_m; m += 2)
        ms.emplace_back(m);
    ms.push_back(ExtNat::infinity());

    std::vector<AngleMultiset> out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        Angle a1 = Angle::two_pi_over(ms[i]);
        for (std::size_t j = i; j < ms.size(); ++j) {
            Angle a2 = Angle::two_pi_over(ms[j]);
            Angle rest = Angle::pi() - a1 - a2;
            if (rest > a2 || rest < Angle::zero())
                continue;
            // rest = 2/m3 with m3 even >= 4, m3 <= max_m, and m3 >= m_j; or rest = 0
            if (rest.coeff.is_zero()) {
                out.push_back({a1, a2, rest});
                continue;
            }
            Rational m3 = Rational(2) / rest.coeff;
            if (m3.is_integer() && m3.num() >= 4 && m3.num() % 2 == 0 && static_cast<std::uint64_t>(m3.num()) <= max_m)
                out.push_back({a1, a2, rest});
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_admissible_angle(const Angle& a)
{
    if (a.coeff.is_zero())
        return true;
    if (a.coeff <= Rational(0))
        return false;
    Rational m = Rational(2) / a.coeff;
    return m.is_integer() && m.num() >= 4 && m.num() % 2 == 0;
}

AngleLabeling::AngleLabeling(std::size_t n, std::vector<Angle> angles, bool raw)
    : n_(n), angles_(std::move(angles)), raw_(raw)
{
    if (angles_.size() != edge_count(n))
        throw InputError("labeling of K" + std::to_string(n) + " needs " + std::to_string(edge_count(n)) + " angles");
    if (!raw_)
        for (const auto& a : angles_)
            if (!is_admissible_angle(a))
                throw InputError("angle " + a.to_string() + " is not 0 or 2pi/m with m even >= 4");
}

std::size_t AngleLabeling::pair_index(std::size_t n, std::size_t i, std::size_t j)
{
    if (i > j)
        std::swap(i, j);
    if (i == j || j >= n)
        throw std::out_of_range("bad pair index");
    // row-major upper triangle: (0,1),(0,2),...,(0,n-1),(1,2),...
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

AngleLabeling AngleLabeling::from_graph(const PrideGraph& g)
{
    require_complete(g);
    const OrderMap orders = g.orders();
    const std::size_t n = g.vertices.size();
    std::vector<Angle> a(edge_count(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            a[pair_index(n, i, j)] = gs_bound(edge_between(g, i, j), orders);
    return AngleLabeling(n, std::move(a), true);
}

K4Structure k4_structure(const AngleLabeling& l)
{
    if (l.vertex_count() != 4)
        throw InputError("k4_structure needs a labeling on four vertices");
    K4Structure s;
    s.all_triangles_pi = true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            for (std::size_t k = j + 1; k < 4; ++k)
                if (l.at(i, j) + l.at(j, k) + l.at(i, k) != Angle::pi())
                    s.all_triangles_pi = false;
    s.opposite_edges_equal = l.at(0, 1) == l.at(2, 3) && l.at(0, 2) == l.at(1, 3) && l.at(0, 3) == l.at(1, 2);
    if (s.all_triangles_pi && s.opposite_edges_equal)
        s.triple = sorted_multiset(l.at(0, 1), l.at(0, 2), l.at(0, 3));
    return s;
}

nlohmann::ordered_json to_json(const AngleMultiset& m)
{
    return {m[0].to_string(), m[1].to_string(), m[2].to_string()};
}

nlohmann::ordered_json to_json(const NonsphericalReport& r)
{
    nlohmann::ordered_json j;
    j["cond_i"] = nlohmann::ordered_json::array();
    for (const auto& e : r.cond_i)
        j["cond_i"].push_back({{"edge", {e.a, e.b}}, {"m", e.m.to_string()}, {"bound", e.bound.to_string()}, {"pass", e.pass}});
    j["cond_ii"] = nlohmann::ordered_json::array();
    for (const auto& t : r.cond_ii)
        j["cond_ii"].push_back({{"triangle", t.vertices}, {"sum", t.sum.to_string()}, {"pass", t.pass}});
    j["verdict"] = r.verdict;
    return j;
}

nlohmann::ordered_json to_json(const CorollaryReport& r)
{
    nlohmann::ordered_json j;
    j["triangles"] = nlohmann::ordered_json::array();
    for (const auto& t : r.triangles)
        j["triangles"].push_back({{"triangle", t.vertices}, {"sum_inverse_r", t.sum.to_string()}, {"pass", t.pass}});
    j["verdict"] = r.verdict;
    return j;
}

} // namespace pridealt

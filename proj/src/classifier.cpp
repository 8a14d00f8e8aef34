#include "pridealt/classifier.hpp"

#include "pridealt/error.hpp"

#include <algorithm>
#include <numeric>

namespace pridealt {

namespace cite {
constexpr const char* three_vertex_free = "three_vertex_sum_below_pi_free_subgroup";
constexpr const char* three_vertex_open = "three_vertex_sum_pi_open";
constexpr const char* subgraph_embeds = "subgraph_groups_embed";
constexpr const char* four_vertex_witness = "four_vertex_witness_free_product";
constexpr const char* exceptional_square = "exceptional_square_virtually_abelian";
constexpr const char* no_five_vertex_labeling = "no_five_vertex_exceptional_labeling";
constexpr const char* free_product_cyclic = "cyclic_free_product_contains_free_subgroup";
} // namespace cite

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::FreeSubgroup:
        return "free_subgroup";
    case Verdict::VirtuallyAbelian:
        return "virtually_abelian";
    case Verdict::Inconclusive:
        return "inconclusive";
    case Verdict::OutOfScope:
        return "out_of_scope";
    }
    return "inconclusive";
}

bool RoleMap::is_exceptional_triple() const
{
    return theta == Angle::pi_times(1, 2) && alpha == Angle::pi_times(1, 2) && beta == Angle::zero();
}

RoleMap assign_roles(const AngleLabeling& l, const std::vector<std::string>& ids)
{
    if (l.vertex_count() != 4 || ids.size() != 4)
        throw InputError("assign_roles needs a labeling on four vertices");
    if (!k4_structure(l).all_triangles_pi)
        throw InputError("assign_roles needs every triangle of the K4 to sum to pi");

    std::array<std::size_t, 4> p{0, 1, 2, 3};
    do {
        const auto [x, y, z, t] = p;
        Angle theta = l.at(x, z), alpha = l.at(x, y), beta = l.at(y, z);
        if (l.at(y, t) != theta || l.at(z, t) != alpha || l.at(x, t) != beta)
            continue;
        if (theta < alpha || alpha < beta)
            continue;
        RoleMap r;
        r.index = p;
        for (std::size_t k = 0; k < 4; ++k)
            r.id[k] = ids[p[k]];
        r.theta = theta;
        r.alpha = alpha;
        r.beta = beta;
        return r;
    } while (std::next_permutation(p.begin(), p.end()));
    // unreachable when the opposite-edge lemma holds
    throw VerificationError("no role assignment for an all-pi K4 labeling");
}

WitnessCert make_witness(const PrideGraph& k4, const RoleMap& roles)
{
    if (k4.vertices.size() != 4)
        throw InputError("make_witness needs a four-vertex graph");
    const PrideGraph g = complete(k4);
    const AngleLabeling l = AngleLabeling::from_graph(g);
    const auto [x, y, z, t] = roles.index;
    std::array<std::size_t, 4> sorted = roles.index;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<std::size_t, 4>{0, 1, 2, 3})
        throw InputError("role map is not a bijection onto the vertices");
    for (std::size_t k = 0; k < 4; ++k)
        if (g.vertices[roles.index[k]].id != roles.id[k])
            throw InputError("role map ids do not match vertex indices");
    if (l.at(x, z) != roles.theta || l.at(y, t) != roles.theta || l.at(x, y) != roles.alpha ||
        l.at(z, t) != roles.alpha || l.at(y, z) != roles.beta || l.at(x, t) != roles.beta ||
        roles.theta < roles.alpha || roles.alpha < roles.beta)
        throw InputError("role map is inconsistent with the graph's angle labeling");
    if (roles.is_exceptional_triple())
        throw ScopeError("(pi/2, pi/2, 0) labeling: use the virtually abelian branch (match_exceptional)");

    WitnessCert w;
    w.roles = roles;
    const auto gen = [&](std::size_t i) { return g.vertices[i].gen; };
    w.t = gen(t);
    w.u = FreeWord({{gen(x), 1}, {gen(y), 1}, {gen(z), 1}, {gen(t), 1}, {gen(x), 1}, {gen(y), 1}, {gen(z), 1}});
    w.claim = "<t,u> is a free product; u has infinite order";
    w.verified_by = {"verify-claims --claim 1", "verify-claims --claim 2", "verify-assembly"};
    return w;
}

namespace {

bool diagonal_empty(const Edge& e, const OrderMap& orders)
{
    if (e.override_m)
        return e.override_m->is_infinite();
    return edge_r(e, orders).is_infinite();
}

// Single relator whose full word base^period, reduced with orders 2, is an
// alternating word of length 4 in the two edge generators. With involutions
// every such word is a rotation of (ab)^2 or of its inverse.
bool standard_square_edge(const Edge& e, const std::string& ga, const std::string& gb, const OrderMap& orders)
{
    if (e.override_m || e.relators.size() != 1)
        return false;
    const EdgeRelator& r = e.relators.front();
    if (r.period.is_infinite() || r.period.value() > 4)
        return false;
    FreeWord full = normalize(power(r.base, r.period.value()), orders);
    if (full.size() != 4)
        return false;
    for (std::size_t k = 0; k < 4; ++k) {
        const Syllable& s = full.syllables[k];
        if (s.exp != 1 || (s.gen != ga && s.gen != gb))
            return false;
        if (s.gen == full.syllables[(k + 1) % 4].gen)
            return false;
    }
    return true;
}

// Hamiltonian cycles of K4 through vertex 0, each oriented toward its smaller
// neighbour of 0.
constexpr std::array<std::array<std::size_t, 4>, 3> k4_cycles{{{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}}};

bool all_orders_two(const PrideGraph& g)
{
    return std::all_of(g.vertices.begin(), g.vertices.end(), [](const VertexGroup& v) { return v.order == ExtNat(2); });
}

const Edge& edge_of(const PrideGraph& g, std::size_t i, std::size_t j)
{
    return *g.find_edge(g.vertices[i].id, g.vertices[j].id);
}

} // namespace

std::optional<ExceptionalCert> match_exceptional(const PrideGraph& k4)
{
    if (k4.vertices.size() != 4)
        return std::nullopt;
    const PrideGraph g = complete(k4);
    if (!all_orders_two(g))
        return std::nullopt;
    const OrderMap orders = g.orders();
    for (const auto& c : k4_cycles) {
        bool ok = diagonal_empty(edge_of(g, c[0], c[2]), orders) && diagonal_empty(edge_of(g, c[1], c[3]), orders);
        for (std::size_t k = 0; ok && k < 4; ++k) {
            std::size_t i = c[k], j = c[(k + 1) % 4];
            ok = standard_square_edge(edge_of(g, i, j), g.vertices[i].gen, g.vertices[j].gen, orders);
        }
        if (!ok)
            continue;
        ExceptionalCert cert;
        for (std::size_t k = 0; k < 4; ++k) {
            cert.relabeling[k] = g.vertices[c[k]].id;
            cert.presentation.generators.push_back(g.vertices[c[k]].gen);
        }
        const auto& gens = cert.presentation.generators;
        for (const auto& x : gens)
            cert.presentation.relators.push_back(FreeWord({{x, 2}}));
        for (std::size_t k = 0; k < 4; ++k)
            cert.presentation.relators.push_back(FreeWord({{gens[k], 1}, {gens[(k + 1) % 4], 1}, {gens[k], 1}, {gens[(k + 1) % 4], 1}}));
        return cert;
    }
    return std::nullopt;
}

bool exceptional_near_miss(const PrideGraph& k4)
{
    if (k4.vertices.size() != 4)
        return false;
    const PrideGraph g = complete(k4);
    if (!all_orders_two(g) || match_exceptional(g))
        return false;
    const OrderMap orders = g.orders();
    for (const auto& c : k4_cycles)
        if (diagonal_empty(edge_of(g, c[0], c[2]), orders) && diagonal_empty(edge_of(g, c[1], c[3]), orders))
            return true;
    return false;
}

namespace {

Classification make(Verdict v, Evidence e, std::vector<std::string> citations)
{
    return Classification{v, std::move(e), std::move(citations)};
}

std::vector<std::string> vertex_ids(const PrideGraph& g)
{
    std::vector<std::string> ids;
    for (const auto& v : g.vertices)
        ids.push_back(v.id);
    return ids;
}

// Outcome of the all-pi four-vertex analysis; witness, free product on an
// angle-0 pair, exceptional match, or an unresolved square.
Classification classify_k4_all_pi(const PrideGraph& g)
{
    if (auto cert = match_exceptional(g))
        return make(Verdict::VirtuallyAbelian, *cert, {cite::exceptional_square});
    const AngleLabeling l = AngleLabeling::from_graph(g);
    const RoleMap roles = assign_roles(l, vertex_ids(g));
    if (!roles.is_exceptional_triple())
        return make(Verdict::FreeSubgroup, make_witness(g, roles), {cite::four_vertex_witness});

    // (pi/2, pi/2, 0): the beta pairs {Y,Z} and {X,T} have free-product edge groups
    const auto [x, y, z, t] = roles.index;
    for (auto [i, j] : {std::pair{y, z}, std::pair{x, t}}) {
        if (i > j)
            std::swap(i, j);
        const auto& a = g.vertices[i];
        const auto& b = g.vertices[j];
        if (a.order != ExtNat(2) || b.order != ExtNat(2))
            return make(Verdict::FreeSubgroup, FreeProductLocator{{a.id, b.id}, {a.order, b.order}},
                        {cite::free_product_cyclic, cite::subgraph_embeds});
    }
    Reason r;
    r.text = "(pi/2, pi/2, 0) labeling with all vertex orders 2, but the square does not match the exceptional presentation syntactically";
    if (exceptional_near_miss(g))
        r.flags.push_back("nonstandard_exceptional_candidate");
    return make(Verdict::Inconclusive, r, {});
}

} // namespace

Classification classify(const PrideGraph& input)
{
    require_valid(input);
    const PrideGraph g = complete(input);
    const std::size_t n = g.vertices.size();
    if (n < 3)
        return make(Verdict::OutOfScope, Reason{"fewer than three vertices", {}, {}}, {});

    NonsphericalReport ns;
    try {
        ns = check_nonspherical(g);
    } catch (const ScopeError& e) {
        return make(Verdict::OutOfScope, Reason{e.what(), {}, {}}, {});
    }
    if (!ns.verdict) {
        Reason r{"non-sphericity not certified by the angle bounds", {}, {}};
        for (const auto& e : ns.cond_i)
            if (!e.pass)
                r.details.push_back("edge {" + e.a + "," + e.b + "} bound " + e.bound.to_string() + " > 1/2 pi");
        for (const auto& t : ns.cond_ii)
            if (!t.pass)
                r.details.push_back("triangle {" + t.vertices[0] + "," + t.vertices[1] + "," + t.vertices[2] + "} sum " +
                                    t.sum.to_string() + " > pi");
        return make(Verdict::Inconclusive, r, {});
    }

    for (const auto& t : ns.cond_ii)
        if (t.sum < Angle::pi()) {
            std::vector<std::string> c{cite::three_vertex_free};
            if (n > 3)
                c.push_back(cite::subgraph_embeds);
            return make(Verdict::FreeSubgroup, TriangleLocator{t.vertices, t.sum}, c);
        }

    if (n == 3)
        return make(Verdict::Inconclusive, Reason{"triangle angle sum is exactly pi", {}, {}}, {cite::three_vertex_open});
    if (n == 4)
        return classify_k4_all_pi(g);

    // Every triangle sums to pi; some induced K4 carries a non-exceptional triple.
    const AngleLabeling l = AngleLabeling::from_graph(g);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t d = c + 1; d < n; ++d) {
                    std::array<std::size_t, 4> idx{a, b, c, d};
                    std::vector<Angle> sub;
                    for (std::size_t i = 0; i < 4; ++i)
                        for (std::size_t j = i + 1; j < 4; ++j)
                            sub.push_back(l.at(idx[i], idx[j]));
                    auto s = k4_structure(AngleLabeling(4, sub, true));
                    if (!s.triple || (*s.triple)[2] == Angle::zero())
                        continue;
                    std::array<std::string, 4> ids{g.vertices[a].id, g.vertices[b].id, g.vertices[c].id, g.vertices[d].id};
                    const PrideGraph k4 = full_subgraph(g, std::vector<std::string>(ids.begin(), ids.end()));
                    Classification inner = classify_k4_all_pi(k4);
                    if (inner.verdict != Verdict::FreeSubgroup)
                        throw VerificationError("non-exceptional K4 triple did not yield a witness");
                    return make(Verdict::FreeSubgroup, SubgraphLocator{ids, std::get<WitnessCert>(inner.evidence)},
                                {cite::no_five_vertex_labeling, cite::four_vertex_witness, cite::subgraph_embeds});
                }
    throw VerificationError("all-pi labeling on " + std::to_string(n) + " vertices with every K4 exceptional");
}

ImpossibilityResult verify_labeling_impossibility(std::size_t n)
{
    if (n < 4 || n > 7)
        throw InputError("impossibility enumeration supports 4 <= n <= 7");
    const std::array<Angle, 5> alphabet{Angle::pi_times(1, 2), Angle::pi_times(1, 3), Angle::pi_times(1, 4),
                                        Angle::pi_times(1, 6), Angle::zero()};
    const std::size_t edges = AngleLabeling::edge_count(n);
    ImpossibilityResult res;
    res.n = n;
    res.labelings_covered = 1;
    for (std::size_t e = 0; e < edges; ++e)
        res.labelings_covered *= alphabet.size();

    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            order.emplace_back(i, j);
    std::vector<Angle> cur(edges);
    const auto at = [&](std::size_t i, std::size_t j) -> const Angle& { return cur[AngleLabeling::pair_index(n, i, j)]; };

    const auto every_k4_exceptional = [&] {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                for (std::size_t c = b + 1; c < n; ++c)
                    for (std::size_t d = c + 1; d < n; ++d) {
                        // all-pi K4s have equal opposite edges; exceptional iff exactly one opposite pair is 0
                        int zeros = (at(a, b) == Angle::zero()) + (at(a, c) == Angle::zero()) + (at(a, d) == Angle::zero());
                        if (zeros != 1)
                            return false;
                    }
        return true;
    };

    // Edge (i,j) closes exactly the triangles {k,i,j} with k < i.
    const auto search = [&](auto&& self, std::size_t e) -> void {
        if (e == edges) {
            ++res.pi_labelings;
            if (every_k4_exceptional()) {
                ++res.exceptional_labelings;
                if (!res.witness)
                    res.witness = AngleLabeling(n, cur);
            }
            return;
        }
        const auto [i, j] = order[e];
        for (const auto& a : alphabet) {
            ++res.search_nodes;
            cur[e] = a;
            bool ok = true;
            for (std::size_t k = 0; ok && k < i; ++k)
                ok = at(k, i) + at(k, j) + a == Angle::pi();
            if (ok)
                self(self, e + 1);
        }
    };
    search(search, 0);
    res.possible = res.exceptional_labelings > 0;
    if (n == 4 && res.possible) {
        // prefer the square 0-1-2-3 with diagonals 02 and 13 empty
        const Angle h = Angle::pi_times(1, 2), z = Angle::zero();
        res.witness = AngleLabeling(4, {h, z, h, h, z, h});
    }
    return res;
}

nlohmann::ordered_json to_json(const RoleMap& r)
{
    nlohmann::ordered_json j;
    j["X"] = r.id[0];
    j["Y"] = r.id[1];
    j["Z"] = r.id[2];
    j["T"] = r.id[3];
    j["theta"] = r.theta.to_string();
    j["alpha"] = r.alpha.to_string();
    j["beta"] = r.beta.to_string();
    return j;
}

nlohmann::ordered_json to_json(const WitnessCert& w)
{
    nlohmann::ordered_json j;
    j["kind"] = "witness";
    j["roles"] = to_json(w.roles);
    j["t"] = w.t;
    j["u"] = to_string(w.u);
    j["u_roles"] = {"X", "Y", "Z", "T", "X", "Y", "Z"};
    j["claim"] = w.claim;
    j["verified_by"] = w.verified_by;
    return j;
}

nlohmann::ordered_json to_json(const ExceptionalCert& e)
{
    nlohmann::ordered_json j;
    j["kind"] = "exceptional";
    j["relabeling"] = {{"x1", e.relabeling[0]}, {"x2", e.relabeling[1]}, {"x3", e.relabeling[2]}, {"x4", e.relabeling[3]}};
    j["presentation"] = to_json(e.presentation);
    return j;
}

namespace {

nlohmann::ordered_json evidence_json(const Evidence& ev)
{
    struct Visitor {
        nlohmann::ordered_json operator()(const WitnessCert& w) const { return to_json(w); }
        nlohmann::ordered_json operator()(const ExceptionalCert& e) const { return to_json(e); }
        nlohmann::ordered_json operator()(const TriangleLocator& t) const
        {
            return {{"kind", "triangle"}, {"vertices", t.vertices}, {"sum", t.sum.to_string()}};
        }
        nlohmann::ordered_json operator()(const FreeProductLocator& f) const
        {
            return {{"kind", "free_product"},
                    {"vertices", f.vertices},
                    {"orders", {f.orders[0].to_string(), f.orders[1].to_string()}}};
        }
        nlohmann::ordered_json operator()(const SubgraphLocator& s) const
        {
            nlohmann::ordered_json j{{"kind", "subgraph"}, {"vertices", s.vertices}};
            j["inner"] = std::visit(*this, s.inner);
            return j;
        }
        nlohmann::ordered_json operator()(const Reason& r) const
        {
            nlohmann::ordered_json j{{"kind", "reason"}, {"text", r.text}};
            j["details"] = r.details;
            j["flags"] = r.flags;
            return j;
        }
    };
    return std::visit(Visitor{}, ev);
}

nlohmann::ordered_json labeling_json(const AngleLabeling& l)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    const std::size_t n = l.vertex_count();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            j.push_back({{"edge", {i + 1, k + 1}}, {"angle", l.at(i, k).to_string()}});
    return j;
}

} // namespace

nlohmann::ordered_json to_json(const Classification& c)
{
    nlohmann::ordered_json j;
    j["verdict"] = to_string(c.verdict);
    j["evidence"] = evidence_json(c.evidence);
    j["citations"] = c.citations;
    return j;
}

nlohmann::ordered_json to_json(const ImpossibilityResult& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["possible"] = r.possible;
    j["labelings_covered"] = r.labelings_covered;
    j["search_nodes"] = r.search_nodes;
    j["pi_labelings"] = r.pi_labelings;
    j["exceptional_labelings"] = r.exceptional_labelings;
    j["witness"] = r.witness ? labeling_json(*r.witness) : nlohmann::ordered_json(nullptr);
    return j;
}

} // namespace pridealt

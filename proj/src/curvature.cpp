#include "pridealt/curvature.hpp"

#include "pridealt/error.hpp"
#include "pridealt/words.hpp"

#include <algorithm>
#include <set>

namespace pridealt {

// ---------------------------------------------------------------------------
// Curvature arithmetic

Angle region_curvature(std::size_t q, const std::vector<std::uint32_t>& degrees)
{
    if (q < 2)
        throw InputError("region needs q >= 2");
    if (degrees.size() != q)
        throw InputError("region of degree " + std::to_string(q) + " needs " + std::to_string(q) + " vertex degrees, got " +
                         std::to_string(degrees.size()));
    Angle c = Angle::pi_times(2 - static_cast<std::int64_t>(q));
    for (auto d : degrees) {
        if (d < 3)
            throw InputError("vertex degree " + std::to_string(d) + " < 3");
        c += Angle::pi_times(2, d);
    }
    return c;
}

Angle exterior_d(std::size_t q, const std::vector<std::uint32_t>& nonhub_degrees)
{
    if (q < 2)
        throw InputError("region needs q >= 2");
    if (nonhub_degrees.size() + 1 != q)
        throw InputError("exterior region of degree " + std::to_string(q) + " needs " + std::to_string(q - 1) +
                         " non-hub degrees, got " + std::to_string(nonhub_degrees.size()));
    Angle d = Angle::pi_times(2 - static_cast<std::int64_t>(q));
    for (auto x : nonhub_degrees) {
        if (x < 3)
            throw InputError("vertex degree " + std::to_string(x) + " < 3");
        d += Angle::pi_times(2, x);
    }
    return d;
}

GaussBonnet gauss_bonnet(const DualComplex& c)
{
    std::vector<std::uint32_t> corners(c.degree.size(), 0);
    for (const auto& f : c.faces)
        for (auto v : f) {
            if (v >= c.degree.size())
                throw InputError("face corner refers to unknown vertex " + std::to_string(v));
            ++corners[v];
        }
    for (std::size_t v = 0; v < corners.size(); ++v) {
        if (corners[v] != c.degree[v])
            throw InputError("vertex " + std::to_string(v) + " declares degree " + std::to_string(c.degree[v]) + " but has " +
                             std::to_string(corners[v]) + " corners");
        if (corners[v] < 3)
            throw InputError("vertex " + std::to_string(v) + " has degree < 3");
    }
    GaussBonnet gb;
    for (const auto& f : c.faces) {
        std::vector<std::uint32_t> deg;
        for (auto v : f)
            deg.push_back(c.degree[v]);
        gb.sum += region_curvature(f.size(), deg);
    }
    gb.ok = gb.sum == Angle::pi_times(4);
    return gb;
}

namespace {

// Half-edge sphere map used by the random generator.
struct HalfEdgeMap {
    std::vector<std::size_t> origin, twin, next;
    std::vector<bool> alive;
    std::size_t vertex_count = 0;

    static HalfEdgeMap from_faces(const std::vector<std::vector<std::size_t>>& faces, std::size_t nv)
    {
        HalfEdgeMap m;
        m.vertex_count = nv;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_ends;
        for (const auto& f : faces) {
            std::size_t first = m.origin.size();
            for (std::size_t k = 0; k < f.size(); ++k) {
                std::size_t h = m.origin.size();
                m.origin.push_back(f[k]);
                m.next.push_back(first + (k + 1) % f.size());
                m.twin.push_back(0);
                m.alive.push_back(true);
                by_ends[{f[k], f[(k + 1) % f.size()]}] = h;
            }
        }
        for (std::size_t h = 0; h < m.origin.size(); ++h)
            m.twin[h] = by_ends.at({m.origin[m.next[h]], m.origin[h]});
        return m;
    }

    std::size_t new_pair(std::size_t u, std::size_t v)
    {
        std::size_t a = origin.size();
        origin.push_back(u);
        origin.push_back(v);
        twin.push_back(a + 1);
        twin.push_back(a);
        next.push_back(0);
        next.push_back(0);
        alive.push_back(true);
        alive.push_back(true);
        return a;
    }

    std::vector<std::size_t> face_of(std::size_t h) const
    {
        std::vector<std::size_t> f{h};
        for (std::size_t x = next[h]; x != h; x = next[x])
            f.push_back(x);
        return f;
    }

    std::size_t prev(std::size_t h) const
    {
        std::size_t x = h;
        while (next[x] != h)
            x = next[x];
        return x;
    }

    std::size_t degree(std::size_t v) const
    {
        std::size_t d = 0;
        for (std::size_t h = 0; h < origin.size(); ++h)
            d += alive[h] && origin[h] == v;
        return d;
    }

    std::vector<std::size_t> live() const
    {
        std::vector<std::size_t> out;
        for (std::size_t h = 0; h < origin.size(); ++h)
            if (alive[h])
                out.push_back(h);
        return out;
    }

    void stellar(std::size_t h0)
    {
        const std::vector<std::size_t> f = face_of(h0);
        const std::size_t q = f.size();
        const std::size_t c = vertex_count++;
        std::vector<std::size_t> out(q), in(q);
        for (std::size_t i = 0; i < q; ++i) {
            std::size_t a = new_pair(origin[f[i]], c);
            out[i] = a;
            in[i] = a + 1;
        }
        for (std::size_t i = 0; i < q; ++i) {
            std::size_t j = (i + 1) % q;
            next[f[i]] = out[j];
            next[out[j]] = in[i];
            next[in[i]] = f[i];
        }
    }

    void double_edge(std::size_t h)
    {
        const std::size_t p = prev(h), n = next[h];
        const std::size_t a = new_pair(origin[h], origin[next[h]]);
        const std::size_t b = a + 1;
        next[p] = a;
        next[a] = n == h ? a : n;
        next[h] = b;
        next[b] = h;
    }

    bool try_delete(std::size_t h)
    {
        const std::size_t g = twin[h];
        const auto fh = face_of(h), fg = face_of(g);
        if (std::find(fh.begin(), fh.end(), g) != fh.end())
            return false;
        if (fh.size() + fg.size() - 2 < 2)
            return false;
        const std::size_t u = origin[h], v = origin[g];
        if (degree(u) < 4 || degree(v) < 4)
            return false;
        std::set<std::size_t> vh, vg;
        for (auto x : fh)
            vh.insert(origin[x]);
        for (auto x : fg)
            vg.insert(origin[x]);
        std::vector<std::size_t> common;
        std::set_intersection(vh.begin(), vh.end(), vg.begin(), vg.end(), std::back_inserter(common));
        if (common.size() != 2)
            return false;
        const std::size_t ph = prev(h), pg = prev(g);
        next[ph] = next[g];
        next[pg] = next[h];
        alive[h] = alive[g] = false;
        return true;
    }

    DualComplex to_complex() const
    {
        DualComplex c;
        c.degree.assign(vertex_count, 0);
        std::vector<bool> seen(origin.size(), false);
        for (std::size_t h = 0; h < origin.size(); ++h) {
            if (!alive[h] || seen[h])
                continue;
            std::vector<std::size_t> f;
            for (auto x : face_of(h)) {
                seen[x] = true;
                f.push_back(origin[x]);
            }
            c.faces.push_back(std::move(f));
        }
        for (std::size_t h = 0; h < origin.size(); ++h)
            if (alive[h])
                ++c.degree[origin[h]];
        return c;
    }
};

} // namespace

DualComplex tetrahedron_complex()
{
    return DualComplex{{{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {0, 2, 3}}, {3, 3, 3, 3}};
}

DualComplex cube_complex()
{
    // bottom 0-1-2-3, top 4-5-6-7, faces oriented consistently
    return DualComplex{{{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}},
                       {3, 3, 3, 3, 3, 3, 3, 3}};
}

DualComplex random_spherical_complex(std::mt19937_64& rng, std::size_t steps)
{
    const DualComplex tet = tetrahedron_complex();
    HalfEdgeMap m = HalfEdgeMap::from_faces(tet.faces, 4);
    for (std::size_t s = 0; s < steps; ++s) {
        const auto hs = m.live();
        const std::size_t h = hs[std::uniform_int_distribution<std::size_t>(0, hs.size() - 1)(rng)];
        switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0:
            if (m.face_of(h).size() >= 3)
                m.stellar(h);
            break;
        case 1:
            m.double_edge(h);
            break;
        default:
            m.try_delete(h);
            break;
        }
    }
    return m.to_complex();
}

// ---------------------------------------------------------------------------
// Roles, types, triples

char role_char(Role r)
{
    static constexpr char names[] = {'A', 'Y', 'B', 'T'};
    return names[static_cast<int>(r)];
}

PairType PairType::of(Role a, Role b)
{
    if (a == b)
        throw InputError("pair type needs distinct roles");
    return a < b ? PairType{a, b} : PairType{b, a};
}

bool PairType::adjacent(const PairType& o) const
{
    if (*this == o)
        return false;
    return contains(o.lo) || contains(o.hi);
}

std::string PairType::to_string() const
{
    return {role_char(lo), role_char(hi)};
}

const std::array<PairType, 6>& all_pair_types()
{
    static const std::array<PairType, 6> types{PairType{Role::A, Role::Y}, PairType{Role::A, Role::B},
                                               PairType{Role::A, Role::T}, PairType{Role::Y, Role::B},
                                               PairType{Role::Y, Role::T}, PairType{Role::B, Role::T}};
    return types;
}

Angle AngleTriple::of(const PairType& t) const
{
    const std::string s = t.to_string();
    if (s == "AB" || s == "YT")
        return theta;
    if (s == "AY" || s == "BT")
        return phi;
    return psi;
}

std::string AngleTriple::to_string() const
{
    return "(" + theta.to_string() + ", " + phi.to_string() + ", " + psi.to_string() + ")";
}

const std::vector<AngleTriple>& admissible_triples()
{
    static const std::vector<AngleTriple> t{
        {Angle::pi_times(1, 2), Angle::pi_times(1, 3), Angle::pi_times(1, 6)},
        {Angle::pi_times(1, 2), Angle::pi_times(1, 6), Angle::pi_times(1, 3)},
        {Angle::pi_times(1, 2), Angle::pi_times(1, 4), Angle::pi_times(1, 4)},
        {Angle::pi_times(1, 3), Angle::pi_times(1, 3), Angle::pi_times(1, 3)},
    };
    return t;
}

AngleTriple excluded_triple()
{
    return {Angle::pi_times(1, 2), Angle::pi_times(1, 2), Angle::zero()};
}

std::vector<std::string> constraint_names(const ChainConstraints& c)
{
    std::vector<std::string> out{"C1 degree >= m(type)", "C2 degree >= 4"};
    if (c.c3)
        out.push_back("C3 no adjacent exterior 2-gons");
    out.push_back("C4 shared vertex carries its boundary letter");
    out.push_back("C5 consecutive vertices of a region have adjacent types");
    out.push_back("C6 type of v1 fixed by the hypothesis");
    if (c.c7)
        out.push_back("C7 deg >= 5 in cases {3,7} and {5,7}");
    if (std::any_of(c.min_degree.begin(), c.min_degree.end(), [](auto d) { return d > 0; }))
        out.push_back("extra degree lower bounds");
    return out;
}

std::vector<int> ChainConfig::two_gons() const
{
    std::vector<int> out;
    for (int i = 0; i < 7; ++i)
        if (q[i] == 2)
            out.push_back(i + 1);
    return out;
}

std::vector<PairType> ChainConfig::chain_vertices() const
{
    std::vector<PairType> out{shared[0]};
    for (std::size_t i = 0; i < 7; ++i) {
        if (q[i] == 2 && !detached[i])
            continue;
        if (middle[i])
            out.push_back(*middle[i]);
        out.push_back(shared[i + 1]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chain enumeration

namespace {

std::uint32_t min_type_degree(const AngleTriple& t, const PairType& p)
{
    // angle 2pi/m  =>  m = 2 / coeff
    Rational m = Rational(2) / t.of(p).coeff;
    return std::max<std::uint32_t>(4, static_cast<std::uint32_t>(m.num()));
}

bool usable(const AngleTriple& t, const PairType& p)
{
    return !t.of(p).coeff.is_zero();
}

std::size_t type_index(const PairType& p)
{
    const auto& all = all_pair_types();
    return static_cast<std::size_t>(std::find(all.begin(), all.end(), p) - all.begin());
}

struct Enumerator {
    Hypothesis hyp;
    AngleTriple triple;
    ChainConstraints cons;
    const std::function<void(const ChainConfig&)>& visit;
    ChainEnumeration out;

    std::array<Role, 8> letters{};
    std::array<std::vector<PairType>, 8> cands;
    // best middle vertex for a q = 4 region between two shared types
    std::array<std::array<std::optional<PairType>, 6>, 6> best_middle;

    QPattern q{};
    std::array<bool, 7> detached{};
    std::array<PairType, 8> s{};

    Enumerator(const Hypothesis& h, const AngleTriple& t, const ChainConstraints& c,
               const std::function<void(const ChainConfig&)>& v)
        : hyp(h), triple(t), cons(c), visit(v)
    {
        out.hyp = h;
        out.triple = t;
        letters = {Role::A, Role::Y, Role::B, Role::T, Role::A, Role::Y, Role::B, h.follower};
        for (std::size_t k = 0; k < 8; ++k)
            for (const auto& p : all_pair_types())
                if (p.contains(letters[k]) && usable(t, p))
                    cands[k].push_back(p);
        for (const auto& a : all_pair_types())
            for (const auto& b : all_pair_types()) {
                std::optional<PairType> best;
                for (const auto& m : all_pair_types()) {
                    if (!usable(t, m) || !m.adjacent(a) || !m.adjacent(b))
                        continue;
                    if (!best || min_type_degree(t, m) < min_type_degree(t, *best))
                        best = m;
                }
                best_middle[type_index(a)][type_index(b)] = best;
            }
    }

    bool region_ok(std::size_t i) const // region i+1 between s[i] and s[i+1]
    {
        switch (q[i]) {
        case 2:
            return detached[i] || s[i] == s[i + 1];
        case 3:
            return s[i].adjacent(s[i + 1]);
        default:
            return best_middle[type_index(s[i])][type_index(s[i + 1])].has_value();
        }
    }

    void dfs(std::size_t k)
    {
        if (k == 8) {
            finish();
            return;
        }
        for (const auto& p : cands[k]) {
            s[k] = p;
            if (k == 0 && (p == PairType::of(Role::A, Role::T)) != hyp.v1_is_at)
                continue;
            if (k > 0 && !region_ok(k - 1))
                continue;
            dfs(k + 1);
        }
    }

    void finish()
    {
        ChainConfig c;
        c.q = q;
        c.shared = s;
        c.detached = detached;

        std::array<std::uint32_t, 8> bump = cons.min_degree;
        const auto gons = c.two_gons();
        bool others_three = true;
        for (std::size_t i = 0; i < 7; ++i)
            others_three = others_three && (q[i] == 2 || q[i] == 3);
        if (cons.c7 && hyp.v1_is_at && hyp.follower == Role::A && others_three) {
            if (gons == std::vector<int>{3, 7} && s[4] == PairType::of(Role::A, Role::B) && s[5] == PairType::of(Role::A, Role::Y)) {
                bump[4] = std::max<std::uint32_t>(bump[4], 5);
                c.c7_applied = true;
            }
            if (gons == std::vector<int>{5, 7} && s[2] == PairType::of(Role::B, Role::T) && s[3] == PairType::of(Role::Y, Role::T)) {
                bump[3] = std::max<std::uint32_t>(bump[3], 5);
                c.c7_applied = true;
            }
        }

        // identified 2-gons make s[i] and s[i+1] one vertex
        std::array<std::size_t, 8> cls{};
        for (std::size_t k = 0; k < 8; ++k)
            cls[k] = k;
        for (std::size_t i = 0; i < 7; ++i)
            if (q[i] == 2 && !detached[i])
                cls[i + 1] = cls[i];
        std::array<std::uint32_t, 8> cls_deg{};
        for (std::size_t k = 0; k < 8; ++k)
            cls_deg[cls[k]] = std::max({cls_deg[cls[k]], min_type_degree(triple, s[k]), bump[k]});
        for (std::size_t k = 0; k < 8; ++k)
            c.degree[k] = cls_deg[cls[k]];

        const auto corner = [](std::uint32_t deg) { return Angle::pi_times(2, deg); };
        for (std::size_t i = 0; i < 7; ++i) {
            switch (q[i]) {
            case 2:
                if (detached[i]) {
                    PairType g = PairType::of(letters[i], letters[i + 1]);
                    if (!usable(triple, g))
                        return;
                    c.gon_type[i] = g;
                    c.d[i] = corner(min_type_degree(triple, g));
                } else {
                    c.gon_type[i] = s[i];
                    c.d[i] = corner(c.degree[i]);
                }
                break;
            case 3:
                c.d[i] = Angle::pi_times(-1) + corner(c.degree[i]) + corner(c.degree[i + 1]);
                break;
            default: {
                PairType m = *best_middle[type_index(s[i])][type_index(s[i + 1])];
                c.middle[i] = m;
                c.middle_degree[i] = min_type_degree(triple, m);
                c.d[i] = Angle::pi_times(-2) + corner(c.degree[i]) + corner(c.degree[i + 1]) + corner(c.middle_degree[i]);
            }
            }
            c.dS += c.d[i];
        }

        ++out.count;
        out.c7_applied += c.c7_applied;
        if (visit)
            visit(c);
        if (!out.best || c.dS > out.best->dS)
            out.best = c;
        auto it = out.best_by_q.find(q);
        if (it == out.best_by_q.end())
            out.best_by_q.emplace(q, c);
        else if (c.dS > it->second.dS)
            it->second = c;
    }

    void run()
    {
        std::vector<QPattern> patterns;
        if (cons.only_q) {
            patterns.push_back(*cons.only_q);
        } else {
            QPattern p{};
            for (int code = 0; code < 2187; ++code) {
                int x = code;
                for (int i = 6; i >= 0; --i) {
                    p[i] = static_cast<std::uint8_t>(2 + x % 3);
                    x /= 3;
                }
                patterns.push_back(p);
            }
        }
        for (const auto& p : patterns) {
            q = p;
            bool adjacent_gons = false;
            for (std::size_t i = 0; i + 1 < 7; ++i)
                adjacent_gons = adjacent_gons || (q[i] == 2 && q[i + 1] == 2);
            if (cons.c3 && adjacent_gons)
                continue;
            for (std::size_t i = 0; i < 7; ++i)
                detached[i] = q[i] == 2 && ((i > 0 && q[i - 1] == 2) || (i < 6 && q[i + 1] == 2));
            dfs(0);
        }
    }
};

} // namespace

ChainEnumeration enumerate_chain_configs(const Hypothesis& hyp, const AngleTriple& triple, const ChainConstraints& constraints,
                                         const std::function<void(const ChainConfig&)>& visit)
{
    if (hyp.follower != Role::T && hyp.follower != Role::A)
        throw InputError("follower must be T or A");
    if (hyp.preceding != Role::T && hyp.preceding != Role::B)
        throw InputError("preceding letter must be T or B");
    if (constraints.only_q)
        for (auto x : *constraints.only_q)
            if (x < 2 || x > 4)
                throw InputError("q-pattern entries must be 2, 3 or 4");
    Enumerator e(hyp, triple, constraints, visit);
    e.run();
    return std::move(e.out);
}

// ---------------------------------------------------------------------------
// Claims

namespace {

ClaimReport run_claim(int claim, const ChainConstraints& c)
{
    ClaimReport r;
    r.claim = claim;
    r.threshold = claim == 1 ? Angle::zero() : Angle::pi_times(-1, 3);
    r.constraints = c;
    const bool at = claim == 2;
    for (const auto& t : admissible_triples())
        for (Role f : {Role::T, Role::A})
            r.runs.push_back(enumerate_chain_configs(Hypothesis{at, f, Role::T}, t, c));
    for (Role f : {Role::T, Role::A})
        r.informational.push_back(enumerate_chain_configs(Hypothesis{at, f, Role::T}, excluded_triple(), c));

    bool any = false;
    for (const auto& run : r.runs) {
        if (!run.best)
            continue;
        if (!any || run.best->dS > r.max_dS)
            r.max_dS = run.best->dS;
        any = true;
        for (const auto& [q, cfg] : run.best_by_q)
            if (cfg.dS > r.threshold)
                r.violations.push_back({cfg.two_gons(), run.triple, run.hyp.follower, cfg});
    }
    if (!any)
        throw VerificationError("claim enumeration produced no configurations");
    r.attained = r.max_dS == r.threshold;
    r.verdict = r.max_dS <= r.threshold;
    return r;
}

} // namespace

std::optional<Angle> ClaimReport::pattern_max(const std::vector<int>& two_gons, const AngleTriple& t,
                                              std::optional<Role> follower) const
{
    std::optional<Angle> best;
    for (const auto& run : runs) {
        if (!(run.triple == t) || (follower && run.hyp.follower != *follower))
            continue;
        for (const auto& [q, cfg] : run.best_by_q)
            if (cfg.two_gons() == two_gons && (!best || cfg.dS > *best))
                best = cfg.dS;
    }
    return best;
}

std::vector<PatternViolation> ClaimReport::extremal() const
{
    std::vector<PatternViolation> out;
    for (const auto& run : runs) {
        std::map<std::vector<int>, const ChainConfig*> per_set;
        for (const auto& [q, cfg] : run.best_by_q)
            if (cfg.dS == max_dS && !per_set.count(cfg.two_gons()))
                per_set[cfg.two_gons()] = &cfg;
        for (const auto& [set, cfg] : per_set)
            out.push_back({set, run.triple, run.hyp.follower, *cfg});
    }
    return out;
}

ClaimReport verify_claim1(const ChainConstraints& c)
{
    return run_claim(1, c);
}

ClaimReport verify_claim2(const ChainConstraints& c)
{
    return run_claim(2, c);
}

// ---------------------------------------------------------------------------
// Case table

namespace {

struct CaseSpec {
    int claim;
    std::string name;
    std::string bound_text;
    std::function<bool(const QPattern&)> match;
    std::optional<Role> follower;
    std::function<Angle(const AngleTriple&)> bound; // empty: the case admits no configuration
};

Angle pi(std::int64_t n, std::int64_t d = 1)
{
    return Angle::pi_times(n, d);
}

std::function<bool(const QPattern&)> exact(QPattern p)
{
    return [p](const QPattern& q) { return q == p; };
}

std::size_t gon_count(const QPattern& q)
{
    return static_cast<std::size_t>(std::count(q.begin(), q.end(), 2));
}

bool has_big(const QPattern& q)
{
    return std::find(q.begin(), q.end(), 4) != q.end();
}

std::vector<CaseSpec> case_specs()
{
    using T = AngleTriple;
    std::vector<CaseSpec> v;
    // claim 1
    v.push_back({1, "at most two 2-gons", "pi/2 + pi/3 - 5pi/6 = 0", [](const QPattern& q) { return gon_count(q) <= 2; },
                 std::nullopt, [](const T&) { return pi(0); }});
    v.push_back({1, "three 2-gons, some q >= 4", "2pi/3 + pi/2 + 3(-pi/6) - 2pi/3 = 0",
                 [](const QPattern& q) { return gon_count(q) == 3 && has_big(q); }, std::nullopt, [](const T&) { return pi(0); }});
    v.push_back({1, "{1,4,7}", "2phi + 2psi + 2theta - 2pi", exact({2, 3, 3, 2, 3, 3, 2}), std::nullopt,
                 [](const T& t) { return 2 * t.phi + 2 * t.psi + 2 * t.theta - pi(2); }});
    v.push_back({1, "{1,5,7}", "5phi + 2psi + 4theta - 4pi", exact({2, 3, 3, 3, 2, 3, 2}), std::nullopt,
                 [](const T& t) { return 5 * t.phi + 2 * t.psi + 4 * t.theta - pi(4); }});
    v.push_back({1, "{2,5,7}", "3phi + 3psi + 5theta - 4pi", exact({3, 2, 3, 3, 2, 3, 2}), std::nullopt,
                 [](const T& t) { return 3 * t.phi + 3 * t.psi + 5 * t.theta - pi(4); }});
    v.push_back({1, "{1,3,5,7}", "3phi + pi/2 - 4pi/3 - pi/6",
                 [](const QPattern& q) { return q[0] == 2 && q[2] == 2 && q[4] == 2 && q[6] == 2; }, std::nullopt,
                 [](const T& t) { return 3 * t.phi + pi(1, 2) - pi(4, 3) - pi(1, 6); }});
    // claim 2
    v.push_back({2, "at most one 2-gon", "pi/2 + 6(-pi/6) = -pi/2", [](const QPattern& q) { return gon_count(q) <= 1; },
                 std::nullopt, [](const T&) { return pi(-1, 2); }});
    v.push_back({2, "two 2-gons, some q >= 4", "-pi/2", [](const QPattern& q) { return gon_count(q) == 2 && has_big(q); },
                 std::nullopt, [](const T&) { return pi(-1, 2); }});
    v.push_back({2, "{3,6}", "4psi + 3phi + 5theta - 5pi", exact({3, 3, 2, 3, 3, 2, 3}), std::nullopt,
                 [](const T& t) { return 4 * t.psi + 3 * t.phi + 5 * t.theta - pi(5); }});
    v.push_back({2, "{3,7} followed by t", "(psi + 2phi + 2theta - 2pi) - 3pi/6 + phi", exact({3, 3, 2, 3, 3, 3, 2}), Role::T,
                 [](const T& t) { return (t.psi + 2 * t.phi + 2 * t.theta - pi(2)) - pi(1, 2) + t.phi; }});
    v.push_back({2, "{3,7} followed by a",
                 "max(3psi + 3phi + 6theta - 5pi, (psi + 2phi + 2theta - 2pi) + (2phi + 2(2pi/5) - 2pi) + (-pi/6 + pi/2))",
                 exact({3, 3, 2, 3, 3, 3, 2}), Role::A, [](const T& t) {
                     Angle a = 3 * t.psi + 3 * t.phi + 6 * t.theta - pi(5);
                     Angle b = (t.psi + 2 * t.phi + 2 * t.theta - pi(2)) + (2 * t.phi + pi(4, 5) - pi(2)) + (pi(-1, 6) + pi(1, 2));
                     return std::max(a, b);
                 }});
    v.push_back({2, "{4,7}", "-pi + psi - 2pi/6 + pi/2", exact({3, 3, 3, 2, 3, 3, 2}), std::nullopt,
                 [](const T& t) { return pi(-1) + t.psi - pi(1, 3) + pi(1, 2); }});
    v.push_back({2, "{5,7} followed by t", "no configuration (q5 >= 4)", exact({3, 3, 3, 3, 2, 3, 2}), Role::T, {}});
    v.push_back({2, "{5,7} followed by a", "max(3psi + 3phi + 6theta - 5pi, psi + 5phi + 4theta + 2(2pi/5) - 5pi)",
                 exact({3, 3, 3, 3, 2, 3, 2}), Role::A, [](const T& t) {
                     Angle a = 3 * t.psi + 3 * t.phi + 6 * t.theta - pi(5);
                     Angle b = t.psi + 5 * t.phi + 4 * t.theta + pi(4, 5) - pi(5);
                     return std::max(a, b);
                 }});
    v.push_back({2, "three 2-gons with q2 = q4 = 2", "-pi/2",
                 [](const QPattern& q) { return gon_count(q) == 3 && q[1] == 2 && q[3] == 2; }, std::nullopt,
                 [](const T&) { return pi(-1, 2); }});
    v.push_back({2, "{2,5,7} with q1 >= 4", "3phi + 4psi + 5theta - 5pi", exact({4, 2, 3, 3, 2, 3, 2}), std::nullopt,
                 [](const T& t) { return 3 * t.phi + 4 * t.psi + 5 * t.theta - pi(5); }});
    v.push_back({2, "{3,5,7}", "6phi + psi + 5theta - 5pi", exact({3, 3, 2, 4, 2, 3, 2}), std::nullopt,
                 [](const T& t) { return 6 * t.phi + t.psi + 5 * t.theta - pi(5); }});
    return v;
}

} // namespace

std::vector<CaseBoundCheck> verify_case_bounds(const ClaimReport& claim1, const ClaimReport& claim2)
{
    std::vector<CaseBoundCheck> out;
    for (const auto& spec : case_specs()) {
        const ClaimReport& rep = spec.claim == 1 ? claim1 : claim2;
        CaseBoundCheck chk{spec.claim, spec.name, spec.bound_text, {}, true};
        for (const auto& t : admissible_triples())
            for (Role f : {Role::T, Role::A}) {
                if (spec.follower && *spec.follower != f)
                    continue;
                CaseBoundRow row{t, f, std::nullopt, Angle::zero(), false};
                for (const auto& run : rep.runs) {
                    if (!(run.triple == t) || run.hyp.follower != f)
                        continue;
                    for (const auto& [q, cfg] : run.best_by_q)
                        if (spec.match(q) && (!row.enumerated || cfg.dS > *row.enumerated))
                            row.enumerated = cfg.dS;
                }
                if (spec.bound) {
                    row.bound = spec.bound(t);
                    row.ok = !row.enumerated || *row.enumerated <= row.bound;
                } else {
                    row.ok = !row.enumerated;
                }
                chk.ok = chk.ok && row.ok;
                chk.rows.push_back(row);
            }
        out.push_back(std::move(chk));
    }
    return out;
}

PartialBoundCheck verify_case_47_prefix()
{
    PartialBoundCheck r;
    r.bound = Angle::pi_times(-1);
    bool any = false;
    ChainConstraints c;
    c.only_q = QPattern{3, 3, 3, 2, 3, 3, 2};
    for (const auto& t : admissible_triples())
        for (Role f : {Role::T, Role::A})
            enumerate_chain_configs(Hypothesis{true, f, Role::T}, t, c, [&](const ChainConfig& cfg) {
                Angle p = cfg.d[0] + cfg.d[1] + cfg.d[2];
                if (!any || p > r.max_partial)
                    r.max_partial = p;
                any = true;
            });
    r.ok = any && r.max_partial <= r.bound;
    return r;
}

// ---------------------------------------------------------------------------
// Interior regions

InteriorReport interior_bound_check(const AngleTriple& t)
{
    InteriorReport r;
    r.triple = t;
    r.ok = true;
    const Angle half = Angle::pi_times(1, 2);
    for (const auto& p : all_pair_types()) {
        InteriorLine l{"corner cap: angle(" + p.to_string() + ") = " + t.of(p).to_string() + " <= 1/2 pi", t.of(p),
                       t.of(p) <= half};
        r.ok = r.ok && l.ok;
        r.lines.push_back(l);
    }
    const std::array<std::array<Role, 3>, 4> tri{{{Role::A, Role::Y, Role::B},
                                                  {Role::A, Role::Y, Role::T},
                                                  {Role::A, Role::B, Role::T},
                                                  {Role::Y, Role::B, Role::T}}};
    for (const auto& x : tri) {
        Angle v = Angle::pi_times(-1) + t.of(PairType::of(x[0], x[1])) + t.of(PairType::of(x[1], x[2])) +
                  t.of(PairType::of(x[0], x[2]));
        std::string name{role_char(x[0]), role_char(x[1]), role_char(x[2])};
        InteriorLine l{"q = 3 on " + name + ": c <= -pi + sum of labels = " + v.to_string(), v, v <= Angle::zero()};
        r.ok = r.ok && l.ok;
        r.lines.push_back(l);
    }
    for (std::int64_t q = 4; q <= 8; ++q) {
        Angle v = Angle::pi_times(2 - q) + q * half;
        InteriorLine l{"q = " + std::to_string(q) + ": c <= (2 - q) pi + q pi/2 = " + v.to_string(), v, v <= Angle::zero()};
        r.ok = r.ok && l.ok;
        r.lines.push_back(l);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

Angle run_max(const ClaimReport& r, const AngleTriple& t, Role follower)
{
    for (const auto& run : r.runs)
        if (run.triple == t && run.hyp.follower == follower && run.best)
            return run.best->dS;
    throw VerificationError("claim report lacks a run for " + t.to_string());
}

// -pi + largest corner pair over adjacent types: a q >= 3 exterior region
Angle max_nongon_d(const AngleTriple& t)
{
    std::optional<Angle> best;
    for (const auto& a : all_pair_types())
        for (const auto& b : all_pair_types())
            if (a.adjacent(b)) {
                Angle v = Angle::pi_times(-1) + t.of(a) + t.of(b);
                if (!best || v > *best)
                    best = v;
            }
    return *best;
}

} // namespace

AssemblyReport verify_assembly(const std::string& word, const ClaimReport& claim1, const ClaimReport& claim2)
{
    if (!claim1.verdict || !claim2.verdict)
        throw VerificationError("assembly needs both claims to pass");
    if (claim1.claim != 1 || claim2.claim != 2)
        throw InputError("assembly needs the claim 1 and claim 2 reports");

    FreeWord w = parse_word(word);
    for (const auto& s : w.syllables)
        if (s.gen != "t" && s.gen != "u")
            throw InputError("assembly word may only use t and u, got '" + s.gen + "'");
    OrderMap free{{"t", ExtNat::infinity()}, {"u", ExtNat::infinity()}};
    w = cyclic_reduce(w, free);
    if (std::none_of(w.syllables.begin(), w.syllables.end(), [](const Syllable& s) { return s.gen == "u"; }))
        throw InputError("assembly word must contain u");

    AssemblyReport r;
    r.word = to_string(w);

    // pieces in cyclic order; a t-syllable is a single boundary letter block
    struct Block {
        bool is_t;
        int sign;
    };
    std::vector<Block> blocks;
    for (const auto& s : w.syllables) {
        if (s.gen == "t")
            blocks.push_back({true, s.exp > 0 ? 1 : -1});
        else
            for (std::int64_t k = 0; k < std::abs(s.exp); ++k)
                blocks.push_back({false, s.exp > 0 ? 1 : -1});
    }
    const std::size_t nb = blocks.size();
    for (std::size_t k = 0; k < nb; ++k) {
        if (blocks[k].is_t)
            continue;
        AssemblyPiece p;
        p.sign = blocks[k].sign;
        p.after_t = blocks[(k + nb - 1) % nb].is_t;
        p.follower = blocks[(k + 1) % nb].is_t ? Role::T : Role::A;
        bool first = true;
        for (const auto& t : admissible_triples()) {
            Angle s = std::max(run_max(claim1, t, p.follower), run_max(claim2, t, p.follower));
            Angle b = s;
            if (p.after_t) {
                // Delta_0 not a 2-gon, or a 2-gon forcing v1 of type AT
                Angle non_gon = max_nongon_d(t) + s;
                Angle gon = t.of(PairType::of(Role::A, Role::T)) + run_max(claim2, t, p.follower);
                b = std::max(non_gon, gon);
            }
            if (first || b > p.bound)
                p.bound = b;
            first = false;
        }
        r.pieces.push_back(p);
    }

    bool interior_ok = true;
    for (const auto& t : admissible_triples())
        interior_ok = interior_ok && interior_bound_check(t).ok;

    Angle total;
    for (const auto& p : r.pieces)
        total += p.bound;

    auto& c = r.chain;
    c.push_back("Σ_{D*} c = 4π");
    c.push_back(std::string("Σ int c ≤ 0") + (interior_ok ? "" : " FAILED"));
    c.push_back("Σ ext c = Σ ext d + 2π");
    c.push_back("Σ ext d = 4π − Σ int c − 2π ≥ 2π");
    for (std::size_t k = 0; k < r.pieces.size(); ++k) {
        const auto& p = r.pieces[k];
        std::string label = "piece " + std::to_string(k + 1) + " (u^" + (p.sign > 0 ? "+1" : "-1") + ", " +
                            (p.after_t ? "with Δ0" : "no Δ0") + ", followed by " + (p.follower == Role::T ? "t" : "a") + ")";
        if (p.after_t)
            c.push_back(label + ": d(Δ0 S) ≤ max(d(Δ0)|q0≥3 + d(S), ψ + d(S)|v1∈AT) ≤ " + p.bound.to_string());
        else
            c.push_back(label + ": d(S) ≤ " + p.bound.to_string());
    }
    c.push_back("Σ ext d ≤ " + total.to_string());
    r.contradiction = interior_ok && total <= Angle::zero();
    c.push_back(r.contradiction ? "2π ≤ Σ ext d ≤ " + total.to_string() + ": contradiction"
                                : "no contradiction derived");
    r.excluded.push_back("(1/2 pi, 1/2 pi, 0): excluded by hypothesis, handled by the virtually abelian branch");
    return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::ordered_json triple_json(const AngleTriple& t)
{
    return {{"theta", t.theta.to_string()}, {"phi", t.phi.to_string()}, {"psi", t.psi.to_string()}};
}

std::string role_name(Role r)
{
    return r == Role::T ? "t" : (r == Role::A ? "a" : (r == Role::B ? "b" : "y"));
}

} // namespace

nlohmann::ordered_json to_json(const ChainConfig& c)
{
    nlohmann::ordered_json j;
    j["q"] = nlohmann::ordered_json::array();
    for (auto x : c.q)
        j["q"].push_back(x == 4 ? std::string("4+") : std::to_string(x));
    j["two_gons"] = c.two_gons();
    j["shared"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < 8; ++k)
        j["shared"].push_back({{"type", c.shared[k].to_string()}, {"degree", c.degree[k]}});
    j["middle"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < 7; ++i)
        j["middle"].push_back(c.middle[i] ? nlohmann::ordered_json{{"type", c.middle[i]->to_string()}, {"degree", c.middle_degree[i]}}
                                          : nlohmann::ordered_json(nullptr));
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : c.chain_vertices())
        j["vertices"].push_back(v.to_string());
    j["d"] = nlohmann::ordered_json::array();
    for (const auto& d : c.d)
        j["d"].push_back(d.to_string());
    j["dS"] = c.dS.to_string();
    j["c7_applied"] = c.c7_applied;
    if (std::any_of(c.detached.begin(), c.detached.end(), [](bool b) { return b; }))
        j["detached_two_gons"] = c.detached;
    return j;
}

nlohmann::ordered_json to_json(const ClaimReport& r)
{
    nlohmann::ordered_json j;
    j["claim"] = r.claim;
    j["hypothesis"] = r.claim == 1 ? "v1 not of type AT" : "v1 of type AT";
    j["threshold"] = r.threshold.to_string();
    j["constraints_used"] = constraint_names(r.constraints);
    j["per_triple_max"] = nlohmann::ordered_json::array();
    std::uint64_t total = 0;
    for (const auto& run : r.runs) {
        total += run.count;
        nlohmann::ordered_json e = triple_json(run.triple);
        e["follower"] = role_name(run.hyp.follower);
        e["configs"] = run.count;
        e["c7_applied"] = run.c7_applied;
        e["max_dS"] = run.best ? run.best->dS.to_string() : "none";
        j["per_triple_max"].push_back(e);
    }
    j["configs_examined"] = total;
    j["max_dS"] = r.max_dS.to_string();
    j["attained"] = r.attained;
    j["extremal_configs"] = nlohmann::ordered_json::array();
    for (const auto& x : r.extremal()) {
        nlohmann::ordered_json e = triple_json(x.triple);
        e["follower"] = role_name(x.follower);
        e["config"] = to_json(x.config);
        j["extremal_configs"].push_back(e);
    }
    j["violations"] = nlohmann::ordered_json::array();
    std::set<std::vector<int>> sets;
    for (const auto& v : r.violations) {
        sets.insert(v.two_gons);
        nlohmann::ordered_json e = triple_json(v.triple);
        e["follower"] = role_name(v.follower);
        e["config"] = to_json(v.config);
        j["violations"].push_back(e);
    }
    j["violation_two_gon_sets"] = nlohmann::ordered_json::array();
    for (const auto& s : sets)
        j["violation_two_gon_sets"].push_back(s);
    j["informational"] = nlohmann::ordered_json::array();
    for (const auto& run : r.informational) {
        nlohmann::ordered_json e = triple_json(run.triple);
        e["follower"] = role_name(run.hyp.follower);
        e["configs"] = run.count;
        e["max_dS"] = run.best ? run.best->dS.to_string() : "none";
        j["informational"].push_back(e);
    }
    j["verdict"] = r.verdict ? "pass" : "fail";
    return j;
}

nlohmann::ordered_json to_json(const CaseBoundCheck& c)
{
    nlohmann::ordered_json j;
    j["claim"] = c.claim;
    j["case"] = c.name;
    j["bound"] = c.bound_text;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : c.rows) {
        nlohmann::ordered_json e = triple_json(row.triple);
        e["follower"] = role_name(row.follower);
        e["enumerated_max"] = row.enumerated ? row.enumerated->to_string() : "none";
        e["bound_value"] = row.bound.to_string();
        e["ok"] = row.ok;
        j["rows"].push_back(e);
    }
    j["ok"] = c.ok;
    return j;
}

nlohmann::ordered_json to_json(const InteriorReport& r)
{
    nlohmann::ordered_json j = triple_json(r.triple);
    j["lines"] = nlohmann::ordered_json::array();
    for (const auto& l : r.lines)
        j["lines"].push_back({{"text", l.text}, {"ok", l.ok}});
    j["ok"] = r.ok;
    return j;
}

nlohmann::ordered_json to_json(const AssemblyReport& r)
{
    nlohmann::ordered_json j;
    j["word"] = r.word;
    j["pieces"] = nlohmann::ordered_json::array();
    for (const auto& p : r.pieces)
        j["pieces"].push_back({{"sign", p.sign}, {"after_t", p.after_t}, {"follower", role_name(p.follower)}, {"bound", p.bound.to_string()}});
    j["chain"] = r.chain;
    j["excluded"] = r.excluded;
    j["contradiction"] = r.contradiction;
    return j;
}

} // namespace pridealt

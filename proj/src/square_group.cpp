#include "pridealt/oracle.hpp"

#include "pridealt/error.hpp"

namespace pridealt {

Presentation square_presentation(const SquareGens& g)
{
    Presentation p;
    p.generators.assign(g.begin(), g.end());
    for (const auto& x : g)
        p.relators.push_back(FreeWord({{x, 2}}));
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& a = g[k];
        const auto& b = g[(k + 1) % 4];
        p.relators.push_back(FreeWord({{a, 1}, {b, 1}, {a, 1}, {b, 1}}));
    }
    return p;
}

namespace {

// 0..3 for x1..x4; x1, x3 form the first D_inf factor
std::vector<int> square_letters(const FreeWord& w, const SquareGens& g)
{
    std::vector<int> out;
    for (const auto& s : w.syllables) {
        int k = -1;
        for (int i = 0; i < 4; ++i)
            if (g[i] == s.gen)
                k = i;
        if (k < 0)
            throw InputError("generator '" + s.gen + "' is not in the square group");
        // involutions: only the parity of the exponent matters
        if (s.exp % 2 != 0)
            out.push_back(k);
    }
    return out;
}

FreeWord from_letters(const std::vector<int>& ls, const SquareGens& g)
{
    FreeWord w;
    for (int k : ls)
        w.syllables.push_back({g[k], 1});
    return w;
}

bool first_factor(int k)
{
    return k == 0 || k == 2;
}

} // namespace

FreeWord square_word_reduce(const FreeWord& w, const SquareGens& g)
{
    std::vector<int> p, q;
    for (int k : square_letters(w, g)) {
        auto& block = first_factor(k) ? p : q;
        if (!block.empty() && block.back() == k)
            block.pop_back();
        else
            block.push_back(k);
    }
    p.insert(p.end(), q.begin(), q.end());
    return from_letters(p, g);
}

FreeWord square_word_rewrite(const FreeWord& w, std::mt19937_64& rng, const SquareGens& g)
{
    std::vector<int> ls = square_letters(w, g);
    for (;;) {
        std::vector<std::size_t> redexes;
        for (std::size_t i = 0; i + 1 < ls.size(); ++i)
            if (ls[i] == ls[i + 1] || (!first_factor(ls[i]) && first_factor(ls[i + 1])))
                redexes.push_back(i);
        if (redexes.empty())
            break;
        std::size_t i = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(rng)];
        if (ls[i] == ls[i + 1])
            ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(i), ls.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        else
            std::swap(ls[i], ls[i + 1]);
    }
    return from_letters(ls, g);
}

bool AffineIsometry::is_translation() const
{
    return linear == identity().linear;
}

AffineIsometry AffineIsometry::inverse() const
{
    const auto& [a, b, c, d] = linear;
    Rational det = a * d - b * c;
    if (det.is_zero())
        throw VerificationError("singular linear part");
    AffineIsometry r;
    r.linear = {d / det, -b / det, -c / det, a / det};
    // p = L^-1 (x - t)
    r.translation = {-(r.linear[0] * translation[0] + r.linear[1] * translation[1]),
                     -(r.linear[2] * translation[0] + r.linear[3] * translation[1])};
    return r;
}

std::array<Rational, 2> AffineIsometry::apply(const std::array<Rational, 2>& p) const
{
    return {linear[0] * p[0] + linear[1] * p[1] + translation[0], linear[2] * p[0] + linear[3] * p[1] + translation[1]};
}

AffineIsometry compose(const AffineIsometry& f, const AffineIsometry& g)
{
    AffineIsometry r;
    const auto& L = f.linear;
    const auto& M = g.linear;
    r.linear = {L[0] * M[0] + L[1] * M[2], L[0] * M[1] + L[1] * M[3], L[2] * M[0] + L[3] * M[2], L[2] * M[1] + L[3] * M[3]};
    r.translation = f.apply(g.translation);
    return r;
}

AffineIsometry square_representation(const FreeWord& w, const SquareGens& g)
{
    const std::array<AffineIsometry, 4> gen{
        AffineIsometry{{Rational(-1), Rational(0), Rational(0), Rational(1)}, {Rational(0), Rational(0)}},
        AffineIsometry{{Rational(1), Rational(0), Rational(0), Rational(-1)}, {Rational(0), Rational(0)}},
        AffineIsometry{{Rational(-1), Rational(0), Rational(0), Rational(1)}, {Rational(2), Rational(0)}},
        AffineIsometry{{Rational(1), Rational(0), Rational(0), Rational(-1)}, {Rational(0), Rational(2)}},
    };
    AffineIsometry r = AffineIsometry::identity();
    for (const auto& s : w.syllables) {
        int k = -1;
        for (int i = 0; i < 4; ++i)
            if (g[i] == s.gen)
                k = i;
        if (k < 0)
            throw InputError("generator '" + s.gen + "' is not in the square group");
        const AffineIsometry step = s.exp > 0 ? gen[k] : gen[k].inverse();
        for (std::int64_t e = 0; e < std::abs(s.exp); ++e)
            r = compose(r, step);
    }
    return r;
}

SquareCertificate verify_square_group()
{
    const SquareGens g = default_square_gens();
    const Presentation pres = square_presentation(g);
    const FreeWord x13 = parse_word("x1*x3");
    const FreeWord x24 = parse_word("x2*x4");
    SquareCertificate cert;

    {
        CosetTable t = todd_coxeter(pres, {x13, x24}, 100000);
        SquareCheck c{"index of <x1x3, x2x4> is 4", t.complete && t.index == 4, {}};
        c.witness = {{"status", t.complete ? "complete" : "overflow"}, {"index", t.index}, {"table", to_json(t)["rows"]}};
        cert.checks.push_back(c);
    }
    {
        SquareCheck c{"edge groups <xi, xi+1 | xi^2, xi+1^2, (xi xi+1)^2> have order 4", true, nlohmann::ordered_json::array()};
        for (std::size_t k = 0; k < 4; ++k) {
            const std::string& a = g[k];
            const std::string& b = g[(k + 1) % 4];
            Presentation e{{a, b}, {FreeWord({{a, 2}}), FreeWord({{b, 2}}), FreeWord({{a, 1}, {b, 1}, {a, 1}, {b, 1}})}};
            CosetTable t = todd_coxeter(e, {}, 1000);
            bool order4 = t.complete && t.index == 4;
            // generators survive (order exactly 2), and x_i x_{i+1} is a nontrivial element whose square is trivial
            bool a_nontrivial = order4 && t.act(0, FreeWord({{a, 1}})) != 0;
            bool b_nontrivial = order4 && t.act(0, FreeWord({{b, 1}})) != 0;
            bool ab_nontrivial = order4 && t.act(0, FreeWord({{a, 1}, {b, 1}})) != 0;
            bool ab2_trivial = order4 && t.act(0, FreeWord({{a, 1}, {b, 1}, {a, 1}, {b, 1}})) == 0;
            bool ok = order4 && a_nontrivial && b_nontrivial && ab_nontrivial && ab2_trivial;
            c.pass = c.pass && ok;
            c.witness.push_back({{"edge", {a, b}},
                                 {"order", t.complete ? t.index : 0},
                                 {"generators_nontrivial", a_nontrivial && b_nontrivial},
                                 {"product_nontrivial", ab_nontrivial},
                                 {"product_squared_trivial", ab2_trivial},
                                 {"pass", ok}});
        }
        cert.checks.push_back(c);
    }
    {
        SquareCheck c{"all 8 relators map to the identity isometry", true, nlohmann::ordered_json::array()};
        for (const auto& r : pres.relators) {
            bool id = square_representation(r, g).is_identity();
            c.pass = c.pass && id;
            c.witness.push_back({{"relator", to_string(r)}, {"identity", id}});
        }
        cert.checks.push_back(c);
    }
    {
        AffineIsometry a = square_representation(x13, g);
        AffineIsometry b = square_representation(x24, g);
        bool a_ok = a.is_translation() && a.translation == std::array<Rational, 2>{Rational(-2), Rational(0)};
        bool b_ok = b.is_translation() && b.translation == std::array<Rational, 2>{Rational(0), Rational(-2)};
        Rational det = a.translation[0] * b.translation[1] - a.translation[1] * b.translation[0];
        SquareCheck c{"x1x3 maps to translation (-2, 0), independent of x2x4", a_ok && b_ok && !det.is_zero(), {}};
        c.witness = {{"x1x3", to_json(a)}, {"x2x4", to_json(b)}, {"determinant", det.to_string()}};
        cert.checks.push_back(c);
    }
    {
        FreeWord comm = parse_word("x1*x3*x2*x4*x3*x1*x4*x2");
        FreeWord nf = square_word_reduce(comm, g);
        FreeWord sq = square_word_reduce(parse_word("x1*x3*x1*x3"), g);
        SquareCheck c{"commutator [x1x3, x2x4] reduces to the empty word", nf.empty() && !sq.empty(), {}};
        c.witness = {{"commutator", to_string(comm)}, {"normal_form", to_string(nf)}, {"x1x3x1x3_normal_form", to_string(sq)}};
        cert.checks.push_back(c);
    }
    cert.pass = true;
    for (const auto& c : cert.checks)
        cert.pass = cert.pass && c.pass;
    return cert;
}

nlohmann::ordered_json to_json(const AffineIsometry& a)
{
    nlohmann::ordered_json j;
    j["linear"] = {{a.linear[0].to_string(), a.linear[1].to_string()}, {a.linear[2].to_string(), a.linear[3].to_string()}};
    j["translation"] = {a.translation[0].to_string(), a.translation[1].to_string()};
    return j;
}

nlohmann::ordered_json to_json(const SquareCertificate& c)
{
    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& x : c.checks)
        j["checks"].push_back({{"name", x.name}, {"pass", x.pass}, {"witness", x.witness}});
    j["verdict"] = c.pass ? "pass" : "fail";
    return j;
}

} // namespace pridealt

#include "pridealt/oracle.hpp"

#include "pridealt/error.hpp"

#include <deque>
#include <map>

namespace pridealt {

namespace {

constexpr std::size_t none = static_cast<std::size_t>(-1);

struct Overflow {};

class Enumerator {
public:
    Enumerator(std::size_t ncols, std::size_t cap) : ncols_(ncols), cap_(cap) { new_coset(); }

    std::size_t inv(std::size_t x) const { return x ^ 1U; }

    bool alive(std::size_t c) const { return parent_[c] == c; }
    std::size_t size() const { return table_.size(); }
    std::size_t& at(std::size_t c, std::size_t x) { return table_[c][x]; }

    std::size_t new_coset()
    {
        if (table_.size() >= cap_)
            throw Overflow{};
        table_.emplace_back(ncols_, none);
        parent_.push_back(table_.size() - 1);
        return table_.size() - 1;
    }

    void define(std::size_t c, std::size_t x)
    {
        std::size_t d = new_coset();
        table_[c][x] = d;
        table_[d][inv(x)] = c;
    }

    std::size_t rep(std::size_t k)
    {
        std::size_t r = k;
        while (parent_[r] != r)
            r = parent_[r];
        while (parent_[k] != r) {
            std::size_t n = parent_[k];
            parent_[k] = r;
            k = n;
        }
        return r;
    }

    void merge(std::size_t k, std::size_t l)
    {
        k = rep(k);
        l = rep(l);
        if (k == l)
            return;
        if (k > l)
            std::swap(k, l);
        parent_[l] = k;
        queue_.push_back(l);
    }

    void coincidence(std::size_t a, std::size_t b)
    {
        merge(a, b);
        while (!queue_.empty()) {
            std::size_t e = queue_.front();
            queue_.pop_front();
            for (std::size_t x = 0; x < ncols_; ++x) {
                std::size_t f = table_[e][x];
                if (f == none)
                    continue;
                if (table_[f][inv(x)] == e)
                    table_[f][inv(x)] = none;
                std::size_t e1 = rep(e), f1 = rep(f);
                if (table_[e1][x] != none)
                    merge(f1, table_[e1][x]);
                else if (table_[f1][inv(x)] != none)
                    merge(e1, table_[f1][inv(x)]);
                else {
                    table_[e1][x] = f1;
                    table_[f1][inv(x)] = e1;
                }
            }
        }
    }

    void scan_and_fill(std::size_t c, const std::vector<std::size_t>& w)
    {
        if (w.empty())
            return;
        std::size_t f = c, b = c;
        std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
        for (;;) {
            while (i <= j && table_[f][w[i]] != none)
                f = table_[f][w[i++]];
            if (i > j) {
                if (f != b)
                    coincidence(f, b);
                return;
            }
            while (j >= i && table_[b][inv(w[j])] != none)
                b = table_[b][inv(w[j--])];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                table_[f][w[i]] = b;
                table_[b][inv(w[i])] = f;
                return;
            }
            define(f, w[i]);
        }
    }

    std::vector<std::vector<std::size_t>> compact() const
    {
        std::vector<std::size_t> number(table_.size(), none);
        std::size_t n = 0;
        for (std::size_t c = 0; c < table_.size(); ++c)
            if (parent_[c] == c)
                number[c] = n++;
        std::vector<std::vector<std::size_t>> rows;
        for (std::size_t c = 0; c < table_.size(); ++c) {
            if (parent_[c] != c)
                continue;
            std::vector<std::size_t> row(ncols_);
            for (std::size_t x = 0; x < ncols_; ++x)
                row[x] = table_[c][x] == none ? none : number[table_[c][x]];
            rows.push_back(std::move(row));
        }
        return rows;
    }

private:
    std::size_t ncols_;
    std::size_t cap_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> parent_;
    std::deque<std::size_t> queue_;
};

std::vector<std::size_t> letters(const FreeWord& w, const std::map<std::string, std::size_t, std::less<>>& col)
{
    std::vector<std::size_t> out;
    for (const auto& s : w.syllables) {
        auto it = col.find(s.gen);
        if (it == col.end())
            throw InputError("unknown generator '" + s.gen + "'");
        std::size_t c = 2 * it->second + (s.exp < 0 ? 1 : 0);
        for (std::int64_t k = 0; k < std::abs(s.exp); ++k)
            out.push_back(c);
    }
    return out;
}

std::map<std::string, std::size_t, std::less<>> columns(const std::vector<std::string>& gens)
{
    std::map<std::string, std::size_t, std::less<>> col;
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (!col.emplace(gens[k], k).second)
            throw InputError("duplicate generator '" + gens[k] + "'");
    return col;
}

} // namespace

std::size_t CosetTable::act(std::size_t coset, const FreeWord& w) const
{
    if (!complete)
        throw InputError("coset action needs a complete table");
    for (auto x : letters(w, columns(generators)))
        coset = rows.at(coset).at(x);
    return coset;
}

CosetTable todd_coxeter(const Presentation& pres, const std::vector<FreeWord>& subgroup_gens, std::size_t max_cosets)
{
    if (max_cosets < 1)
        throw InputError("max_cosets must be at least 1");
    const auto col = columns(pres.generators);
    std::vector<std::vector<std::size_t>> rels, subs;
    for (const auto& r : pres.relators)
        rels.push_back(letters(r, col));
    for (const auto& h : subgroup_gens)
        subs.push_back(letters(h, col));

    CosetTable t;
    t.generators = pres.generators;
    t.limit = max_cosets;
    const std::size_t ncols = 2 * pres.generators.size();
    Enumerator e(ncols, max_cosets);
    try {
        for (const auto& h : subs)
            e.scan_and_fill(0, h);
        for (std::size_t c = 0; c < e.size(); ++c) {
            for (const auto& r : rels) {
                if (!e.alive(c))
                    break;
                e.scan_and_fill(c, r);
            }
            for (std::size_t x = 0; x < ncols && e.alive(c); ++x)
                if (e.at(c, x) == none)
                    e.define(c, x);
        }
    } catch (const Overflow&) {
        t.complete = false;
        t.defined = e.size();
        return t;
    }
    t.defined = e.size();
    t.rows = e.compact();
    t.complete = true;
    t.index = t.rows.size();
    for (const auto& row : t.rows)
        for (auto v : row)
            if (v == none)
                throw VerificationError("coset enumeration finished with an undefined entry");
    return t;
}

nlohmann::ordered_json to_json(const CosetTable& t)
{
    nlohmann::ordered_json j;
    j["generators"] = t.generators;
    j["status"] = t.complete ? "complete" : "overflow";
    if (t.complete)
        j["index"] = t.index;
    j["max_cosets"] = t.limit;
    j["cosets_defined"] = t.defined;
    j["columns"] = nlohmann::ordered_json::array();
    for (const auto& g : t.generators) {
        j["columns"].push_back(g);
        j["columns"].push_back(g + "^-1");
    }
    j["rows"] = t.rows;
    return j;
}

} // namespace pridealt

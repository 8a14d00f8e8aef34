#include "pridealt/words.hpp"

#include "pridealt/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>

namespace pridealt {

std::int64_t reduce_exponent(std::int64_t exp, const ExtNat& order)
{
    if (order.is_infinite())
        return exp;
    auto q = static_cast<std::int64_t>(order.value());
    std::int64_t r = ((exp % q) + q) % q;
    if (2 * r > q)
        r -= q;
    return r;
}

namespace {

const ExtNat& order_of(const OrderMap& orders, const std::string& gen)
{
    auto it = orders.find(gen);
    if (it == orders.end())
        throw InputError("unknown generator '" + gen + "'");
    return it->second;
}

} // namespace

FreeWord normalize(std::span<const Syllable> raw, const OrderMap& orders)
{
    std::vector<Syllable> out;
    out.reserve(raw.size());
    for (const auto& s : raw) {
        const ExtNat& q = order_of(orders, s.gen);
        if (!out.empty() && out.back().gen == s.gen) {
            out.back().exp = reduce_exponent(out.back().exp + s.exp, q);
            if (out.back().exp == 0)
                out.pop_back();
            continue;
        }
        auto e = reduce_exponent(s.exp, q);
        if (e != 0)
            out.push_back({s.gen, e});
    }
    return FreeWord(std::move(out));
}

FreeWord free_normalize(const FreeWord& w)
{
    OrderMap free_orders;
    for (const auto& s : w.syllables)
        free_orders.emplace(s.gen, ExtNat::infinity());
    return normalize(w, free_orders);
}

std::size_t free_length(const FreeWord& w, const OrderMap& orders)
{
    return normalize(w, orders).size();
}

FreeWord cyclic_reduce(const FreeWord& w, const OrderMap& orders)
{
    FreeWord n = normalize(w, orders);
    std::deque<Syllable> d(n.syllables.begin(), n.syllables.end());
    while (d.size() >= 2 && d.front().gen == d.back().gen) {
        Syllable merged{d.front().gen, reduce_exponent(d.front().exp + d.back().exp, order_of(orders, d.front().gen))};
        d.pop_front();
        d.pop_back();
        if (merged.exp != 0) {
            // the merged syllable is followed by the old second syllable, which differs
            d.push_back(std::move(merged));
            break;
        }
    }
    return FreeWord(std::vector<Syllable>(d.begin(), d.end()));
}

bool is_cyclically_reduced(const FreeWord& w, const OrderMap& orders)
{
    if (normalize(w, orders) != w)
        return false;
    return w.size() <= 1 || w.syllables.front().gen != w.syllables.back().gen;
}

FreeWord invert(const FreeWord& w)
{
    std::vector<Syllable> out(w.syllables.rbegin(), w.syllables.rend());
    for (auto& s : out)
        s.exp = -s.exp;
    return FreeWord(std::move(out));
}

FreeWord power(const FreeWord& w, std::uint64_t n)
{
    std::vector<Syllable> out;
    out.reserve(w.size() * n);
    for (std::uint64_t i = 0; i < n; ++i)
        out.insert(out.end(), w.syllables.begin(), w.syllables.end());
    return FreeWord(std::move(out));
}

FreeWord concat(const FreeWord& a, const FreeWord& b)
{
    std::vector<Syllable> out = a.syllables;
    out.insert(out.end(), b.syllables.begin(), b.syllables.end());
    return FreeWord(std::move(out));
}

FreeWord rotate(const FreeWord& w, std::size_t k)
{
    if (w.empty())
        return w;
    std::vector<Syllable> out = w.syllables;
    std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
    return FreeWord(std::move(out));
}

bool is_identifier(std::string_view s)
{
    if (s.empty())
        return false;
    auto c0 = static_cast<unsigned char>(s.front());
    if (!(std::isalpha(c0) || c0 == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char ch) {
        auto c = static_cast<unsigned char>(ch);
        return std::isalnum(c) || c == '_';
    });
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

FreeWord parse_word(std::string_view text)
{
    text = trim(text);
    if (text.empty() || text == "1")
        return {};
    std::vector<Syllable> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto star = text.find('*', pos);
        auto token = trim(text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos));
        auto caret = token.find('^');
        auto gen = trim(token.substr(0, caret));
        if (!is_identifier(gen))
            throw InputError("malformed word literal '" + std::string(text) + "': bad generator '" + std::string(gen) + "'");
        std::int64_t exp = 1;
        if (caret != std::string_view::npos) {
            auto e = trim(token.substr(caret + 1));
            auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exp);
            if (e.empty() || ec != std::errc() || ptr != e.data() + e.size())
                throw InputError("malformed word literal '" + std::string(text) + "': bad exponent '" + std::string(e) + "'");
            if (exp == 0)
                throw InputError("malformed word literal '" + std::string(text) + "': zero exponent");
        }
        out.push_back({std::string(gen), exp});
        if (star == std::string_view::npos)
            break;
        pos = star + 1;
    }
    return FreeWord(std::move(out));
}

std::string to_string(const FreeWord& w)
{
    if (w.empty())
        return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += '*';
        out += w.syllables[i].gen;
        if (w.syllables[i].exp != 1)
            out += "^" + std::to_string(w.syllables[i].exp);
    }
    return out;
}

} // namespace pridealt

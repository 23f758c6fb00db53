#pragma once

#include <numeric>
#include <vector>

#include "nilchar/class_function.hpp"

namespace nilchar {

/// G/(G,G) written as a direct sum of cyclic groups <b_1> + ... + <b_s> with
/// orders o_1 >= ... >= o_s.
struct Abelianization
{
    Subgroup group;
    Subgroup derived;
    std::vector<std::uint32_t> coset_of;         // element position in G -> coset
    std::vector<Code> coset_rep;                 // smallest element of each coset
    std::vector<Code> generators;                // b_i, as elements of G
    std::vector<std::uint64_t> orders;           // o_i
    std::vector<std::vector<unsigned>> coords;   // coset -> (a_1, ..., a_s)

    std::size_t size() const { return coset_rep.size(); }
    std::uint64_t exponent() const { return orders.empty() ? 1 : orders.front(); }
    std::uint32_t coset(Code g) const { return coset_of[group.position(g)]; }
};

inline Abelianization abelianize(const Subgroup& g)
{
    Abelianization ab{g, commutator_subgroup(g, g), {}, {}, {}, {}, {}};
    const auto& grp = g.group();
    const auto p = grp.field().characteristic();

    constexpr std::uint32_t unset = static_cast<std::uint32_t>(-1);
    ab.coset_of.assign(g.size(), unset);
    for (std::size_t pos = 0; pos < g.size(); ++pos) {
        if (ab.coset_of[pos] != unset)
            continue;
        const auto idx = static_cast<std::uint32_t>(ab.coset_rep.size());
        const Code x = g.elements()[pos];
        ab.coset_rep.push_back(x);
        for (Code d : ab.derived.elements())
            ab.coset_of[g.position(grp.mul(x, d))] = idx;
    }
    const std::size_t n = ab.coset_rep.size();

    auto qmul = [&](std::uint32_t a, std::uint32_t b) {
        return ab.coset_of[g.position(grp.mul(ab.coset_rep[a], ab.coset_rep[b]))];
    };
    auto qpow = [&](std::uint32_t a, std::uint64_t e) {
        std::uint32_t r = 0, base = a;
        while (e) {
            if (e & 1)
                r = qmul(r, base);
            base = qmul(base, base);
            e >>= 1;
        }
        return r;
    };

    // S = <b_1, ..., b_s> with known coordinates
    std::vector<bool> in_s(n, false);
    std::vector<std::vector<unsigned>> coords(n);
    std::vector<std::uint32_t> gens; // as cosets
    in_s[0] = true;
    std::size_t s_size = 1;
    while (s_size < n) {
        std::uint32_t best = 0;
        std::uint64_t best_order = 0;
        for (std::uint32_t a = 0; a < n; ++a) {
            if (in_s[a])
                continue;
            std::uint64_t o = 1;
            for (std::uint32_t y = a; !in_s[y]; y = qpow(y, p))
                o *= p;
            if (o > best_order) {
                best_order = o;
                best = a;
            }
        }
        // adjust so that the new generator meets S trivially
        const auto& t = coords[qpow(best, best_order)];
        std::uint32_t x = best;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] % best_order != 0)
                throw VerificationFailed("abelian decomposition", "coordinate not divisible by the new order");
            const auto shift = (ab.orders[i] - t[i] / best_order) % ab.orders[i];
            x = qmul(x, qpow(gens[i], shift));
        }
        if (qpow(x, best_order) != 0)
            throw VerificationFailed("abelian decomposition", "adjusted generator has wrong order");
        const auto old_members = [&] {
            std::vector<std::uint32_t> m;
            for (std::uint32_t a = 0; a < n; ++a)
                if (in_s[a])
                    m.push_back(a);
            return m;
        }();
        const std::size_t s = gens.size();
        std::uint32_t step = 0; // x^j
        for (std::uint64_t j = 0; j < best_order; ++j) {
            for (auto a : old_members) {
                const auto y = qmul(a, step);
                if (j > 0) {
                    in_s[y] = true;
                    coords[y] = coords[a];
                }
                coords[y].resize(s + 1, 0);
                coords[y][s] = static_cast<unsigned>(j);
            }
            step = qmul(step, x);
        }
        gens.push_back(x);
        ab.orders.push_back(best_order);
        s_size *= best_order;
    }
    for (auto& c : coords)
        c.resize(gens.size(), 0);
    ab.coords = std::move(coords);
    for (auto c : gens)
        ab.generators.push_back(ab.coset_rep[c]);
    return ab;
}

/// The character b_i -> zeta_{o_i}^{k_i}.
inline LinearCharacter linear_character(const Abelianization& ab, const std::vector<unsigned>& k)
{
    const auto n = ab.exponent();
    std::vector<unsigned> e(ab.group.size());
    for (std::size_t pos = 0; pos < e.size(); ++pos) {
        const auto& a = ab.coords[ab.coset_of[pos]];
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            sum += static_cast<std::uint64_t>(a[i]) * k[i] * (n / ab.orders[i]);
        e[pos] = static_cast<unsigned>(sum % n);
    }
    return LinearCharacter(ab.group, n, std::move(e));
}

/// All |G/(G,G)| degree-one characters, indexed lexicographically by k.
inline std::vector<LinearCharacter> linear_characters(const Abelianization& ab)
{
    std::vector<LinearCharacter> out;
    std::uint64_t total = 1;
    for (auto o : ab.orders)
        total *= o;
    std::vector<unsigned> k(ab.orders.size());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        auto r = idx;
        for (std::size_t i = k.size(); i-- > 0;) {
            k[i] = static_cast<unsigned>(r % ab.orders[i]);
            r /= ab.orders[i];
        }
        out.push_back(linear_character(ab, k));
    }
    return out;
}

inline std::vector<LinearCharacter> linear_characters(const Subgroup& g)
{
    return linear_characters(abelianize(g));
}

} // namespace nilchar

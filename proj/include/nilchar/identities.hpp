#pragma once

// Commutator identities in groups 1+J: exact symbolic checks in free
// nilpotent algebras over Z and Z[lambda], the commutator pairing into
// (1+A^m)/(1+A, 1+A^m) checked by enumeration, and a finite-field explorer
// for (1+J, 1+J) meet (1+J^k) against (1+J, 1+J^{k-1}).

#include <cstdint>
#include <map>
#include <optional>
#include <algorithm>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilchar/catalog.hpp"
#include "nilchar/class_function.hpp"
#include "nilchar/rings.hpp"
#include "nilchar/unit_group.hpp"

namespace nilchar {

/// F_R(n, X) with elements stored sparsely as word -> coefficient.
template <class Ring>
class WordAlgebra
{
public:
    using Scalar = typename Ring::value_type;
    using Word = std::vector<std::uint8_t>;
    using Element = std::map<Word, Scalar>;

    WordAlgebra(Ring ring, std::vector<std::string> generators, int nilpotence_class, std::size_t cap = 400)
        : ring_(std::move(ring)), gens_(std::move(generators)), n_(nilpotence_class)
    {
        if (gens_.empty())
            throw InvalidArgument("free nilpotent algebra needs at least one generator");
        if (n_ < 2)
            throw InvalidArgument("nilpotence class must be at least 2");
        const auto d = free_nilpotent_dimension(gens_.size(), n_);
        if (d > cap)
            throw CapExceeded("free nilpotent algebra of dimension " + std::to_string(d) + " exceeds cap " +
                              std::to_string(cap));
    }

    const Ring& ring() const { return ring_; }
    int nilpotence_class() const { return n_; }
    std::size_t dimension() const { return free_nilpotent_dimension(gens_.size(), n_); }
    const std::vector<std::string>& generators() const { return gens_; }

    Element zero() const { return {}; }
    Element word(const Word& w, Scalar c) const
    {
        Element e;
        if (!ring_.is_zero(c) && !w.empty() && static_cast<int>(w.size()) < n_)
            e.emplace(w, std::move(c));
        return e;
    }
    Element word(const Word& w) const { return word(w, ring_.one()); }
    Element generator(std::size_t i) const { return word({static_cast<std::uint8_t>(i)}); }

    Element add(Element x, const Element& y) const
    {
        for (const auto& [w, c] : y) {
            auto it = x.find(w);
            if (it == x.end()) {
                x.emplace(w, c);
                continue;
            }
            it->second = ring_.add(it->second, c);
            if (ring_.is_zero(it->second))
                x.erase(it);
        }
        return x;
    }
    Element neg(Element x) const
    {
        for (auto& [w, c] : x)
            c = ring_.neg(c);
        return x;
    }
    Element sub(const Element& x, const Element& y) const { return add(x, neg(y)); }
    Element scale(const Scalar& s, const Element& x) const
    {
        Element out;
        for (const auto& [w, c] : x) {
            auto v = ring_.mul(s, c);
            if (!ring_.is_zero(v))
                out.emplace(w, std::move(v));
        }
        return out;
    }
    Element mul(const Element& x, const Element& y) const
    {
        Element out;
        for (const auto& [u, a] : x)
            for (const auto& [v, b] : y) {
                if (static_cast<int>(u.size() + v.size()) >= n_)
                    continue;
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                out = add(std::move(out), Element{{w, ring_.mul(a, b)}});
            }
        return out;
    }
    Element bracket(const Element& x, const Element& y) const { return sub(mul(x, y), mul(y, x)); }

    // the group law on 1 + J, written on the x of 1 + x
    Element unit_mul(const Element& x, const Element& y) const { return add(add(x, y), mul(x, y)); }
    Element unit_inv(const Element& x) const
    {
        const auto minus = neg(x);
        auto term = minus, sum = minus;
        for (int i = 2; i < n_ && !term.empty(); ++i) {
            term = mul(term, minus);
            sum = add(std::move(sum), term);
        }
        return sum;
    }
    /// beta(1+x, 1+y) = (1+x)(1+y)(1+x)^{-1}(1+y)^{-1}
    Element unit_comm(const Element& x, const Element& y) const
    {
        return unit_mul(unit_mul(unit_mul(x, y), unit_inv(x)), unit_inv(y));
    }

    /// Length of the shortest word present; n for zero.
    int lowest_degree(const Element& x) const
    {
        int d = n_;
        for (const auto& [w, c] : x)
            d = std::min(d, static_cast<int>(w.size()));
        return d;
    }
    bool in_power(const Element& x, int k) const { return lowest_degree(x) >= k; }

    /// Terms with words shorter than k.
    Element below(const Element& x, int k) const
    {
        Element out;
        for (const auto& [w, c] : x)
            if (static_cast<int>(w.size()) < k)
                out.emplace(w, c);
        return out;
    }

    std::string word_name(const Word& w) const
    {
        std::string s;
        for (auto g : w)
            s += gens_[g];
        return s;
    }

    std::string format(const Element& x) const
    {
        if (x.empty())
            return "0";
        std::string out;
        for (const auto& [w, c] : x) {
            if (!out.empty())
                out += " + ";
            out += "(" + ring_.format(c) + ")" + word_name(w);
        }
        return out;
    }

    nlohmann::json to_json(const Element& x) const
    {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [w, c] : x)
            j[word_name(w)] = ring_.format(c);
        return j;
    }

private:
    Ring ring_;
    std::vector<std::string> gens_;
    int n_;
};

struct IdentityCheck
{
    std::string name;
    nlohmann::json params;
    bool passed = false;
    bool skipped = false;
    std::string reason;              // why skipped
    std::size_t cases = 0;
    nlohmann::json residual = nullptr; // first nonzero residual

    nlohmann::json to_json() const
    {
        nlohmann::json j{{"check", name}, {"params", params}, {"cases", cases}};
        j["status"] = skipped ? "skipped" : passed ? "pass" : "fail";
        if (skipped)
            j["reason"] = reason;
        if (!residual.is_null())
            j["residual"] = residual;
        return j;
    }
};

namespace detail {

inline std::vector<std::string> generator_names(std::size_t count, const std::string& stem = "x")
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(stem + std::to_string(i + 1));
    return out;
}

/// All words of a given length over `gens` letters.
inline std::vector<std::vector<std::uint8_t>> all_words(std::size_t gens, std::size_t length)
{
    std::vector<std::vector<std::uint8_t>> out{{}};
    for (std::size_t l = 0; l < length; ++l) {
        std::vector<std::vector<std::uint8_t>> next;
        for (const auto& w : out)
            for (std::size_t g = 0; g < gens; ++g) {
                auto v = w;
                v.push_back(static_cast<std::uint8_t>(g));
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

inline IdentityCheck skipped(std::string name, nlohmann::json params, const std::string& why)
{
    IdentityCheck r{std::move(name), std::move(params)};
    r.skipped = true;
    r.reason = why;
    return r;
}

} // namespace detail

/// beta(1+x, 1+y) = 1 + [x, y] in N = J/J^{m+1}, for every generator x and
/// every word y of length m-1.
inline IdentityCheck lemma_auxiliary_check(std::size_t gens, int n, int m, std::size_t cap = 400)
{
    const nlohmann::json params{{"generators", gens}, {"n", n}, {"m", m}};
    if (m < 2 || gens < 1 || n < 2)
        throw InvalidArgument("lemma check needs m >= 2, n >= 2 and at least one generator");
    const int c = std::min(n, m + 1);
    std::optional<WordAlgebra<IntegerRing>> alg;
    try {
        alg.emplace(IntegerRing{}, detail::generator_names(gens), c, cap);
    } catch (const CapExceeded& e) {
        return detail::skipped("lemma", params, e.what());
    }
    IdentityCheck r{"lemma", params};
    r.passed = true;
    for (std::size_t x = 0; x < gens; ++x)
        for (const auto& w : detail::all_words(gens, static_cast<std::size_t>(m - 1))) {
            const auto xe = alg->generator(x);
            const auto ye = alg->word(w);
            const auto residual = alg->sub(alg->unit_comm(xe, ye), alg->bracket(xe, ye));
            ++r.cases;
            if (!residual.empty() && r.passed) {
                r.passed = false;
                r.residual = {{"x", alg->generators()[x]}, {"y", alg->word_name(w)}, {"value", alg->to_json(residual)}};
            }
        }
    return r;
}

/// beta(1+x1+x2, 1+y) beta(1+x1, 1+y)^{-1} beta(1+x2, 1+y)^{-1}
template <class Ring>
typename WordAlgebra<Ring>::Element additivity_defect(const WordAlgebra<Ring>& a,
                                                      const typename WordAlgebra<Ring>::Element& x1,
                                                      const typename WordAlgebra<Ring>::Element& x2,
                                                      const typename WordAlgebra<Ring>::Element& y)
{
    const auto whole = a.unit_comm(a.add(x1, x2), y);
    return a.unit_mul(a.unit_mul(whole, a.unit_inv(a.unit_comm(x1, y))), a.unit_inv(a.unit_comm(x2, y)));
}

/// beta(1+lambda x, 1+y) beta(1+x, 1+lambda y)^{-1}
template <class Ring>
typename WordAlgebra<Ring>::Element scaling_defect(const WordAlgebra<Ring>& a,
                                                   const typename WordAlgebra<Ring>::Scalar& lambda,
                                                   const typename WordAlgebra<Ring>::Element& x,
                                                   const typename WordAlgebra<Ring>::Element& y)
{
    return a.unit_mul(a.unit_comm(a.scale(lambda, x), y), a.unit_inv(a.unit_comm(x, a.scale(lambda, y))));
}

namespace detail {

// generators x1, x2, a1, ..., a_{m-1}; y = a1 a2 ... a_{m-1}
inline std::vector<std::string> defect_generators(std::size_t xs, int m)
{
    std::vector<std::string> g;
    for (std::size_t i = 0; i < xs; ++i)
        g.push_back(xs == 1 ? "x" : "x" + std::to_string(i + 1));
    for (int i = 1; i < m; ++i)
        g.push_back("a" + std::to_string(i));
    return g;
}

template <class Ring>
IdentityCheck grade_check(std::string name, nlohmann::json params, const WordAlgebra<Ring>& a,
                          const typename WordAlgebra<Ring>::Element& defect, int m)
{
    IdentityCheck r{std::move(name), std::move(params)};
    r.cases = 1;
    r.passed = a.in_power(defect, m + 1);
    r.params["lowest_degree"] = a.lowest_degree(defect);
    if (!r.passed)
        r.residual = a.to_json(a.below(defect, m + 1));
    return r;
}

} // namespace detail

/// The additivity defect lies in 1+J^{m+1}. Works in J of class n (default
/// m+2, falling back to m+1 when m+2 exceeds the dimension cap).
inline IdentityCheck additivity_defect_check(int m, std::size_t cap = 400, int n = 0)
{
    if (m < 2)
        throw InvalidArgument("defect checks need m >= 2");
    const auto gens = detail::defect_generators(2, m);
    std::optional<WordAlgebra<IntegerRing>> alg;
    for (int c : n ? std::vector<int>{n} : std::vector<int>{m + 2, m + 1}) {
        try {
            alg.emplace(IntegerRing{}, gens, c, cap);
            break;
        } catch (const CapExceeded&) {
        }
    }
    nlohmann::json params{{"m", m}, {"generators", gens.size()}, {"cap", cap}};
    if (!alg)
        return detail::skipped("additivity", params,
                               "dimension " + std::to_string(free_nilpotent_dimension(gens.size(), m + 1)) +
                                   " exceeds cap " + std::to_string(cap));
    params["n"] = alg->nilpotence_class();
    params["dim"] = alg->dimension();
    typename WordAlgebra<IntegerRing>::Word yw;
    for (int i = 1; i < m; ++i)
        yw.push_back(static_cast<std::uint8_t>(1 + i));
    const auto d = additivity_defect(*alg, alg->generator(0), alg->generator(1), alg->word(yw));
    return detail::grade_check("additivity", params, *alg, d, m);
}

/// The scaling defect over Z[lambda] lies in 1+J^{m+1}.
inline IdentityCheck scaling_defect_check(int m, std::size_t cap = 400, int n = 0)
{
    if (m < 2)
        throw InvalidArgument("defect checks need m >= 2");
    const auto gens = detail::defect_generators(1, m);
    std::optional<WordAlgebra<PolynomialRing>> alg;
    for (int c : n ? std::vector<int>{n} : std::vector<int>{m + 2, m + 1}) {
        try {
            alg.emplace(PolynomialRing{}, gens, c, cap);
            break;
        } catch (const CapExceeded&) {
        }
    }
    nlohmann::json params{{"m", m}, {"generators", gens.size()}, {"cap", cap}};
    if (!alg)
        return detail::skipped("scaling", params,
                               "dimension " + std::to_string(free_nilpotent_dimension(gens.size(), m + 1)) +
                                   " exceeds cap " + std::to_string(cap));
    params["n"] = alg->nilpotence_class();
    params["dim"] = alg->dimension();
    typename WordAlgebra<PolynomialRing>::Word yw;
    for (int i = 1; i < m; ++i)
        yw.push_back(static_cast<std::uint8_t>(i));
    const auto d = scaling_defect(*alg, alg->ring().lambda(), alg->generator(0), alg->word(yw));
    return detail::grade_check("scaling", params, *alg, d, m);
}

// ---------------------------------------------------------------------------
// The pairing into Q = (1+A^m)/(1+A, 1+A^m), by enumeration

struct PairingQuotient
{
    Subgroup am;                       // 1+A^m
    Subgroup k;                        // (1+A, 1+A^m)
    std::vector<std::uint32_t> coset_of; // position in am -> coset
    std::vector<Code> coset_rep;

    std::size_t order() const { return coset_rep.size(); }
    std::uint32_t coset(Code c) const
    {
        const auto p = am.position(c);
        if (p == Subgroup::npos)
            throw VerificationFailed("pairing quotient", "element outside 1+A^m");
        return coset_of[p];
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
    {
        return coset(am.group().mul(coset_rep[a], coset_rep[b]));
    }
};

inline PairingQuotient pairing_quotient(const UnitGroupPtr& g, int m, std::uint64_t cap = UnitGroup::kDefaultCap)
{
    auto am = power_subgroup(g, m);
    auto k = normal_commutator_subgroup(Subgroup::whole(g), am, cap);
    PairingQuotient q{am, k, {}, {}};
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    q.coset_of.assign(am.size(), unset);
    for (std::size_t pos = 0; pos < am.size(); ++pos) {
        if (q.coset_of[pos] != unset)
            continue;
        const auto idx = static_cast<std::uint32_t>(q.coset_rep.size());
        const Code x = am.elements()[pos];
        q.coset_rep.push_back(x);
        for (Code y : q.k.elements())
            q.coset_of[am.position(g->mul(x, y))] = idx;
    }
    return q;
}

struct FinitePairingReport
{
    int m = 2;
    std::size_t q_order = 0;
    bool factors = true;
    bool exhaustive = true; // factoring checked on every pair
    bool additive_left = true, additive_right = true, balanced = true;
    std::uint64_t points = 0;
    bool ok() const { return factors && additive_left && additive_right && balanced; }

    nlohmann::json to_json() const
    {
        return {{"m", m},          {"Q_order", q_order},       {"factors", factors}, {"exhaustive", exhaustive},
                {"additive_left", additive_left}, {"additive_right", additive_right},
                {"balanced", balanced}, {"points", points},     {"status", ok() ? "pass" : "fail"}};
    }
};

namespace detail {

inline FqVector point(const FiniteField& f, std::size_t k, std::uint64_t idx)
{
    FqVector v(k);
    for (std::size_t i = k; i-- > 0;) {
        v[i] = f.element(static_cast<std::uint32_t>(idx % f.order()));
        idx /= f.order();
    }
    return v;
}

inline std::uint64_t point_index(const FiniteField& f, const FqVector& v)
{
    std::uint64_t idx = 0;
    for (const auto& x : v)
        idx = idx * f.order() + x.code;
    return idx;
}

constexpr std::uint64_t kPairingExhaustiveLimit = std::uint64_t{1} << 22;

inline std::uint64_t power_of(std::uint64_t b, std::size_t e)
{
    std::uint64_t r = 1;
    while (e--)
        r *= b;
    return r;
}

/// Table of C on (A/A^2) x (A^{m-1}/A^m), with the lifts used.
struct PairingTable
{
    QuotientSpace xs, ys;
    std::uint64_t nx = 1, ny = 1;
    std::vector<FqVector> xlift, ylift;
};

inline PairingTable pairing_table(const UnitGroup& g, int m)
{
    const auto& a = g.algebra();
    const auto& f = g.field();
    PairingTable t{QuotientSpace(Subspace::full(f, a.dim()), power_ideal(a, 2)),
                   QuotientSpace(power_ideal(a, m - 1), power_ideal(a, m))};
    t.nx = power_of(f.order(), t.xs.dim());
    t.ny = power_of(f.order(), t.ys.dim());
    for (std::uint64_t i = 0; i < t.nx; ++i)
        t.xlift.push_back(t.xs.lift(point(f, t.xs.dim(), i)));
    for (std::uint64_t j = 0; j < t.ny; ++j)
        t.ylift.push_back(t.ys.lift(point(f, t.ys.dim(), j)));
    return t;
}

} // namespace detail

/// (a) C(g, h) depends only on g mod 1+A^2 and h mod 1+A^m, over all g and
/// all h in 1+A^{m-1}; (b) the three bilinearity statements in Q.
inline FinitePairingReport finite_pairing_check(const UnitGroupPtr& g, int m,
                                                std::uint64_t cap = UnitGroup::kDefaultCap)
{
    if (m < 2)
        throw InvalidArgument("the pairing needs m >= 2");
    const auto& f = g->field();
    const auto q = pairing_quotient(g, m, cap);
    const auto t = detail::pairing_table(*g, m);
    FinitePairingReport r;
    r.m = m;
    r.q_order = q.order();

    auto c = [&](Code x, Code y) { return q.coset(g->comm(x, y)); };
    std::vector<std::uint32_t> table(t.nx * t.ny);
    std::vector<Code> xc, yc;
    for (const auto& v : t.xlift)
        xc.push_back(g->encode(v));
    for (const auto& v : t.ylift)
        yc.push_back(g->encode(v));
    for (std::uint64_t i = 0; i < t.nx; ++i)
        for (std::uint64_t j = 0; j < t.ny; ++j)
            table[i * t.ny + j] = c(xc[i], yc[j]);

    // every pair when that is affordable, else lifts times generators of the kernels
    const auto hs = power_subgroup(g, m - 1);
    std::vector<Code> gs, ys;
    r.exhaustive = g->order() * hs.size() <= detail::kPairingExhaustiveLimit;
    if (r.exhaustive) {
        for (Code x = 0; x < g->order(); ++x)
            gs.push_back(x);
        ys = hs.elements();
    } else {
        const auto k2 = power_subgroup(g, 2), km = power_subgroup(g, m);
        for (Code x : xc) {
            gs.push_back(x);
            for (Code k : k2.generators())
                gs.push_back(g->mul(x, k));
        }
        for (Code y : yc) {
            ys.push_back(y);
            for (Code k : km.generators())
                ys.push_back(g->mul(y, k));
        }
    }
    for (Code x : gs) {
        if (!r.factors)
            break;
        const auto i = detail::point_index(f, t.xs.project(g->decode(x)));
        for (Code y : ys) {
            const auto j = detail::point_index(f, t.ys.project(g->decode(y)));
            ++r.points;
            if (c(x, y) != table[i * t.ny + j]) {
                r.factors = false;
                break;
            }
        }
    }

    auto at = [&](std::uint64_t i, std::uint64_t j) { return table[i * t.ny + j]; };
    auto add_idx = [&](std::size_t k, std::uint64_t a, std::uint64_t b) {
        auto u = detail::point(f, k, a), v = detail::point(f, k, b);
        for (std::size_t s = 0; s < k; ++s)
            u[s] = f.add(u[s], v[s]);
        return detail::point_index(f, u);
    };
    auto scale_idx = [&](std::size_t k, FieldElement lam, std::uint64_t a) {
        auto u = detail::point(f, k, a);
        for (auto& e : u)
            e = f.mul(lam, e);
        return detail::point_index(f, u);
    };
    const auto kx = t.xs.dim(), ky = t.ys.dim();
    for (std::uint64_t y = 0; y < t.ny; ++y)
        for (std::uint64_t x1 = 0; x1 < t.nx; ++x1)
            for (std::uint64_t x2 = 0; x2 < t.nx; ++x2) {
                ++r.points;
                if (at(add_idx(kx, x1, x2), y) != q.mul(at(x1, y), at(x2, y)))
                    r.additive_left = false;
            }
    for (std::uint64_t x = 0; x < t.nx; ++x)
        for (std::uint64_t y1 = 0; y1 < t.ny; ++y1)
            for (std::uint64_t y2 = 0; y2 < t.ny; ++y2) {
                ++r.points;
                if (at(x, add_idx(ky, y1, y2)) != q.mul(at(x, y1), at(x, y2)))
                    r.additive_right = false;
            }
    for (std::uint32_t l = 0; l < f.order(); ++l)
        for (std::uint64_t x = 0; x < t.nx; ++x)
            for (std::uint64_t y = 0; y < t.ny; ++y) {
                ++r.points;
                if (at(scale_idx(kx, f.element(l), x), y) != at(x, scale_idx(ky, f.element(l), y)))
                    r.balanced = false;
            }
    return r;
}

struct CharacterPairingReport
{
    bool invariant = false; // zeta trivial on (1+A, 1+A^m)
    bool bilinear = false;  // zeta o C satisfies the three statements
};

/// The same statements for C_zeta = zeta o C with zeta a character of 1+A^m.
inline CharacterPairingReport character_pairing_check(const UnitGroupPtr& g, int m, const LinearCharacter& zeta)
{
    const auto& f = g->field();
    const auto q = pairing_quotient(g, m);
    CharacterPairingReport r;
    r.invariant = std::all_of(q.k.elements().begin(), q.k.elements().end(),
                              [&](Code c) { return zeta.exponent(c) == 0; });
    // invariance by its definition, against every conjugating element
    bool by_conjugation = true;
    for (Code x = 0; x < g->order() && by_conjugation; ++x)
        for (Code h : zeta.domain().generators())
            if (zeta.exponent(g->conj(x, h)) != zeta.exponent(h)) {
                by_conjugation = false;
                break;
            }
    if (by_conjugation != r.invariant)
        throw VerificationFailed("character pairing", "two invariance tests disagree");
    if (!r.invariant)
        return r;

    const auto t = detail::pairing_table(*g, m);
    const auto n = zeta.order();
    auto val = [&](std::uint64_t i, std::uint64_t j) {
        return zeta.exponent(g->encode(unit_comm(g->algebra(), t.xlift[i], t.ylift[j])));
    };
    const auto kx = t.xs.dim(), ky = t.ys.dim();
    r.bilinear = true;
    for (std::uint64_t x1 = 0; x1 < t.nx; ++x1)
        for (std::uint64_t x2 = 0; x2 < t.nx; ++x2)
            for (std::uint64_t y = 0; y < t.ny; ++y) {
                auto u = detail::point(f, kx, x1), v = detail::point(f, kx, x2);
                for (std::size_t s = 0; s < kx; ++s)
                    u[s] = f.add(u[s], v[s]);
                if (val(detail::point_index(f, u), y) != (val(x1, y) + val(x2, y)) % n)
                    r.bilinear = false;
            }
    for (std::uint64_t x = 0; x < t.nx; ++x)
        for (std::uint64_t y1 = 0; y1 < t.ny; ++y1)
            for (std::uint64_t y2 = 0; y2 < t.ny; ++y2) {
                auto u = detail::point(f, ky, y1), v = detail::point(f, ky, y2);
                for (std::size_t s = 0; s < ky; ++s)
                    u[s] = f.add(u[s], v[s]);
                if (val(x, detail::point_index(f, u)) != (val(x, y1) + val(x, y2)) % n)
                    r.bilinear = false;
            }
    for (std::uint32_t l = 0; l < f.order(); ++l)
        for (std::uint64_t x = 0; x < t.nx; ++x)
            for (std::uint64_t y = 0; y < t.ny; ++y) {
                auto u = detail::point(f, kx, x), v = detail::point(f, ky, y);
                for (auto& e : u)
                    e = f.mul(f.element(l), e);
                const auto lx = detail::point_index(f, u);
                for (auto& e : v)
                    e = f.mul(f.element(l), e);
                const auto ly = detail::point_index(f, v);
                if (val(lx, y) != val(x, ly))
                    r.bilinear = false;
            }
    return r;
}

// ---------------------------------------------------------------------------
// (1+J, 1+J) meet (1+J^k) against (1+J, 1+J^{k-1}) over a finite field

struct HalasiReport
{
    unsigned q = 2;
    std::size_t generators = 1;
    int n = 2, k = 2;
    std::size_t lhs_order = 0, rhs_order = 0;
    bool contains = false; // lhs contains rhs; always expected
    bool equal = false;    // informational

    nlohmann::json to_json() const
    {
        return {{"q", q},
                {"generators", generators},
                {"n", n},
                {"k", k},
                {"lhs_order", lhs_order},
                {"rhs_order", rhs_order},
                {"contains", contains},
                {"equal", equal}};
    }
};

inline HalasiReport halasi_explore(unsigned q, std::size_t generators, int n, int k,
                                   std::uint64_t cap = UnitGroup::kDefaultCap)
{
    if (k < 2 || k > n)
        throw InvalidArgument("halasi_explore needs 2 <= k <= n");
    auto g = make_unit_group(free_algebra(q, static_cast<unsigned>(generators), n), cap);
    const auto whole = Subgroup::whole(g);
    const auto derived = normal_commutator_subgroup(whole, whole, cap);
    const auto lhs = intersect(derived, power_subgroup(g, k));
    const auto rhs = normal_commutator_subgroup(whole, power_subgroup(g, k - 1), cap);
    HalasiReport r{q, generators, n, k, lhs.size(), rhs.size()};
    r.contains = lhs.contains(rhs);
    r.equal = r.contains && lhs.size() == rhs.size();
    return r;
}

} // namespace nilchar

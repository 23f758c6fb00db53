#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nilchar/error.hpp"
#include "nilchar/finite_field.hpp"
#include "nilchar/rings.hpp"

namespace nilchar {

/// e_i * e_j contributes c * e_k.
template <class Scalar>
struct StructureConstant
{
    std::size_t i = 0, j = 0, k = 0;
    Scalar c{};
};

/// A finite-rank associative algebra over `Ring`, given by sparse structure
/// constants in a fixed basis. Instances are immutable; the public factory
/// verifies associativity and nilpotence before returning.
template <class Ring>
class Algebra
{
public:
    using Scalar = typename Ring::value_type;
    using Vector = std::vector<Scalar>;
    using Constant = StructureConstant<Scalar>;

    /// Validating constructor: rejects non-associative and non-nilpotent tables.
    static Algebra from_structure_constants(Ring ring, std::size_t dim, std::vector<Constant> sc,
                                            std::vector<std::string> labels = {})
    {
        Algebra a(std::move(ring), dim, std::move(sc), std::move(labels));
        a.check_associative();
        a.class_ = a.compute_class();
        return a;
    }

    /// For tables that are associative and nilpotent of known class by construction.
    static Algebra trusted(Ring ring, std::size_t dim, std::vector<Constant> sc, int nilpotence_class,
                           std::vector<std::string> labels = {})
    {
        Algebra a(std::move(ring), dim, std::move(sc), std::move(labels));
        a.class_ = nilpotence_class;
        return a;
    }

    const Ring& ring() const { return ring_; }
    std::size_t dim() const { return dim_; }
    /// Smallest n with A^n = 0.
    int nilpotence_class() const { return class_; }
    const std::vector<Constant>& structure_constants() const { return sc_; }
    const std::vector<std::string>& labels() const { return labels_; }

    Vector zero() const { return Vector(dim_, ring_.zero()); }
    Vector basis(std::size_t i) const
    {
        Vector v = zero();
        v.at(i) = ring_.one();
        return v;
    }

    bool is_zero(const Vector& x) const
    {
        return std::all_of(x.begin(), x.end(), [&](const Scalar& s) { return ring_.is_zero(s); });
    }
    bool equal(const Vector& x, const Vector& y) const
    {
        for (std::size_t i = 0; i < dim_; ++i)
            if (!ring_.equal(x[i], y[i]))
                return false;
        return true;
    }

    Vector add(Vector x, const Vector& y) const
    {
        for (std::size_t i = 0; i < dim_; ++i)
            x[i] = ring_.add(x[i], y[i]);
        return x;
    }
    Vector sub(Vector x, const Vector& y) const
    {
        for (std::size_t i = 0; i < dim_; ++i)
            x[i] = ring_.sub(x[i], y[i]);
        return x;
    }
    Vector neg(Vector x) const
    {
        for (auto& s : x)
            s = ring_.neg(s);
        return x;
    }
    Vector scale(const Scalar& s, Vector x) const
    {
        for (auto& t : x)
            t = ring_.mul(s, t);
        return x;
    }

    Vector mul(const Vector& x, const Vector& y) const
    {
        Vector out = zero();
        for (std::size_t i = 0; i < dim_; ++i) {
            if (ring_.is_zero(x[i]))
                continue;
            for (const auto& t : by_left_[i]) {
                if (ring_.is_zero(y[t.j]))
                    continue;
                out[t.k] = ring_.add(out[t.k], ring_.mul(ring_.mul(x[i], y[t.j]), t.c));
            }
        }
        return out;
    }

    /// [x, y] = xy - yx
    Vector bracket(const Vector& x, const Vector& y) const { return sub(mul(x, y), mul(y, x)); }

    /// Throws NotAssociative with the first failing basis triple.
    void check_associative() const
    {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                const Vector ij = mul(basis(i), basis(j));
                for (std::size_t k = 0; k < dim_; ++k) {
                    const Vector jk = mul(basis(j), basis(k));
                    if (!equal(mul(ij, basis(k)), mul(basis(i), jk)))
                        throw NotAssociative("(e" + std::to_string(i) + " e" + std::to_string(j) + ") e" +
                                             std::to_string(k) + " != e" + std::to_string(i) + " (e" +
                                             std::to_string(j) + " e" + std::to_string(k) + ")");
                }
            }
    }

private:
    struct Term
    {
        std::size_t j, k;
        Scalar c;
    };

    Algebra(Ring ring, std::size_t dim, std::vector<Constant> sc, std::vector<std::string> labels)
        : ring_(std::move(ring)), dim_(dim), labels_(std::move(labels))
    {
        if (labels_.empty())
            for (std::size_t i = 0; i < dim_; ++i)
                labels_.push_back("e" + std::to_string(i));
        if (labels_.size() != dim_)
            throw InvalidArgument("label count does not match dimension");
        // merge duplicates, drop zeros, sort by (i, j, k)
        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> merged;
        for (auto& c : sc) {
            if (c.i >= dim_ || c.j >= dim_ || c.k >= dim_)
                throw InvalidArgument("structure constant index out of range");
            auto key = std::make_tuple(c.i, c.j, c.k);
            auto it = merged.find(key);
            if (it == merged.end())
                merged.emplace(key, c.c);
            else
                it->second = ring_.add(it->second, c.c);
        }
        by_left_.resize(dim_);
        for (auto& [key, c] : merged) {
            if (ring_.is_zero(c))
                continue;
            auto [i, j, k] = key;
            sc_.push_back({i, j, k, c});
            by_left_[i].push_back({j, k, c});
        }
    }

    /// Fraction-free row echelon over the (domain) coefficient ring; returns
    /// a maximal independent subset of the span over the fraction field.
    std::vector<Vector> echelon(std::vector<Vector> rows) const
    {
        std::vector<Vector> out;
        std::size_t col = 0;
        while (!rows.empty() && col < dim_) {
            auto piv = std::find_if(rows.begin(), rows.end(),
                                    [&](const Vector& r) { return !ring_.is_zero(r[col]); });
            if (piv == rows.end()) {
                ++col;
                continue;
            }
            Vector p = *piv;
            rows.erase(piv);
            std::vector<Vector> next;
            for (auto& r : rows) {
                if (!ring_.is_zero(r[col]))
                    for (std::size_t c = 0; c < dim_; ++c)
                        r[c] = ring_.sub(ring_.mul(p[col], r[c]), ring_.mul(r[col], p[c]));
                if (!is_zero(r))
                    next.push_back(std::move(r));
            }
            rows = std::move(next);
            out.push_back(std::move(p));
            ++col;
        }
        return out;
    }

    int compute_class() const
    {
        std::vector<Vector> power;
        for (std::size_t i = 0; i < dim_; ++i)
            power.push_back(basis(i));
        power = echelon(std::move(power));
        int m = 1;
        while (!power.empty()) {
            std::vector<Vector> next;
            for (const auto& v : power)
                for (std::size_t j = 0; j < dim_; ++j) {
                    Vector w = mul(v, basis(j));
                    if (!is_zero(w))
                        next.push_back(std::move(w));
                }
            next = echelon(std::move(next));
            if (next.size() == power.size())
                throw NotNilpotent("A^" + std::to_string(m) + " = A^" + std::to_string(m + 1) +
                                   " has rank " + std::to_string(next.size()));
            power = std::move(next);
            ++m;
        }
        return m;
    }

    Ring ring_;
    std::size_t dim_ = 0;
    std::vector<Constant> sc_;
    std::vector<std::vector<Term>> by_left_;
    std::vector<std::string> labels_;
    int class_ = 1;
};

using FqAlgebra = Algebra<FiniteField>;
using FqVector = FqAlgebra::Vector;

// ---------------------------------------------------------------------------
// The group law on 1 + A, written on the x of 1 + x. Valid over any ring.

/// (1+x)(1+y) = 1 + (x + y + xy)
template <class Ring>
typename Algebra<Ring>::Vector unit_mul(const Algebra<Ring>& a, const typename Algebra<Ring>::Vector& x,
                                        const typename Algebra<Ring>::Vector& y)
{
    return a.add(a.add(x, y), a.mul(x, y));
}

/// (1+x)^{-1} = 1 + sum_{i=1}^{class-1} (-x)^i
template <class Ring>
typename Algebra<Ring>::Vector unit_inv(const Algebra<Ring>& a, const typename Algebra<Ring>::Vector& x)
{
    const auto minus_x = a.neg(x);
    auto term = minus_x;
    auto sum = minus_x;
    for (int i = 2; i < a.nilpotence_class(); ++i) {
        term = a.mul(term, minus_x);
        if (a.is_zero(term))
            break;
        sum = a.add(sum, term);
    }
    return sum;
}

/// g h g^{-1} h^{-1} for g = 1+x, h = 1+y.
template <class Ring>
typename Algebra<Ring>::Vector unit_comm(const Algebra<Ring>& a, const typename Algebra<Ring>::Vector& x,
                                         const typename Algebra<Ring>::Vector& y)
{
    return unit_mul(a, unit_mul(a, unit_mul(a, x, y), unit_inv(a, x)), unit_inv(a, y));
}

// ---------------------------------------------------------------------------
// Constructions

/// Strictly upper-triangular n x n matrices. Basis e_{ij} (i < j) ordered by
/// (j - i, i), so e_12, e_23, ..., e_13, ... and the last vector is e_1n.
inline FqAlgebra strictly_upper_triangular(const FiniteField& f, std::size_t n)
{
    if (n < 2)
        throw InvalidArgument("matrix size must be at least 2");
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t gap = 1; gap < n; ++gap)
        for (std::size_t i = 0; i + gap < n; ++i)
            idx.emplace_back(i, i + gap);
    auto find = [&](std::size_t i, std::size_t j) {
        return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), std::make_pair(i, j)) - idx.begin());
    };
    std::vector<FqAlgebra::Constant> sc;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        labels.push_back("e" + std::to_string(idx[a].first + 1) + std::to_string(idx[a].second + 1));
        for (std::size_t b = 0; b < idx.size(); ++b)
            if (idx[a].second == idx[b].first)
                sc.push_back({a, b, find(idx[a].first, idx[b].second), f.one()});
    }
    return FqAlgebra::trusted(f, idx.size(), std::move(sc), static_cast<int>(n), std::move(labels));
}

/// F_R(n, X) = T_{>=1} / T_{>=n}: words of length 1..n-1 over the generators
/// in length-then-lexicographic order, product = concatenation.
template <class Ring>
struct FreeNilpotent
{
    Algebra<Ring> algebra;
    std::vector<std::string> generators;
    std::vector<std::vector<std::size_t>> words; // basis index -> generator indices

    std::size_t index_of(const std::vector<std::size_t>& w) const
    {
        auto it = std::lower_bound(words.begin(), words.end(), w, word_less);
        if (it == words.end() || *it != w)
            throw InvalidArgument("word not in basis");
        return static_cast<std::size_t>(it - words.begin());
    }

    typename Algebra<Ring>::Vector generator(std::size_t g) const { return algebra.basis(g); }

    std::size_t word_length(std::size_t basis_index) const { return words.at(basis_index).size(); }

    static bool word_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

inline std::size_t free_nilpotent_dimension(std::size_t generators, int nilpotence_class)
{
    std::size_t total = 0, level = 1;
    for (int len = 1; len < nilpotence_class; ++len) {
        level *= generators;
        total += level;
    }
    return total;
}

template <class Ring>
FreeNilpotent<Ring> free_nilpotent(Ring ring, std::vector<std::string> generators, int nilpotence_class,
                                   std::size_t cap = 400)
{
    if (generators.empty())
        throw InvalidArgument("free nilpotent algebra needs at least one generator");
    if (nilpotence_class < 2)
        throw InvalidArgument("nilpotence class must be at least 2");
    const std::size_t g = generators.size();
    const std::size_t dim = free_nilpotent_dimension(g, nilpotence_class);
    if (dim > cap)
        throw CapExceeded("free nilpotent algebra of dimension " + std::to_string(dim) + " exceeds cap " +
                          std::to_string(cap));

    std::vector<std::vector<std::size_t>> words;
    std::vector<std::vector<std::size_t>> level{{}};
    for (int len = 1; len < nilpotence_class; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& w : level)
            for (std::size_t x = 0; x < g; ++x) {
                auto v = w;
                v.push_back(x);
                next.push_back(std::move(v));
            }
        std::sort(next.begin(), next.end());
        words.insert(words.end(), next.begin(), next.end());
        level = std::move(next);
    }

    FreeNilpotent<Ring> out{Algebra<Ring>::trusted(ring, 0, {}, 1), generators, words};
    std::vector<typename Algebra<Ring>::Constant> sc;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < words.size(); ++a) {
        std::string label;
        for (auto x : words[a])
            label += generators[x];
        labels.push_back(label);
        for (std::size_t b = 0; b < words.size(); ++b) {
            if (words[a].size() + words[b].size() >= static_cast<std::size_t>(nilpotence_class))
                continue;
            auto w = words[a];
            w.insert(w.end(), words[b].begin(), words[b].end());
            sc.push_back({a, b, out.index_of(w), ring.one()});
        }
    }
    out.algebra = Algebra<Ring>::trusted(ring, dim, std::move(sc), nilpotence_class, std::move(labels));
    return out;
}

} // namespace nilchar

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "nilchar/algebra.hpp"

namespace nilchar {

/// A subspace of F_q^d in reduced row echelon form. The echelon basis is
/// canonical, so equality of subspaces is equality of bases.
class Subspace
{
public:
    Subspace(FiniteField field, std::size_t ambient_dim) : field_(std::move(field)), n_(ambient_dim) {}

    static Subspace span(const FiniteField& f, std::size_t n, const std::vector<FqVector>& vectors)
    {
        Subspace s(f, n);
        for (const auto& v : vectors)
            s.insert(v);
        return s;
    }

    static Subspace full(const FiniteField& f, std::size_t n)
    {
        Subspace s(f, n);
        for (std::size_t i = 0; i < n; ++i) {
            FqVector e(n, f.zero());
            e[i] = f.one();
            s.insert(e);
        }
        return s;
    }

    const FiniteField& field() const { return field_; }
    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<FqVector>& basis() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// v minus its component along the echelon rows; zero iff v is in the span.
    FqVector reduce(FqVector v) const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const auto c = v[pivots_[r]];
            if (field_.is_zero(c))
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!field_.is_zero(rows_[r][j]))
                    v[j] = field_.sub(v[j], field_.mul(c, rows_[r][j]));
        }
        return v;
    }

    bool contains(const FqVector& v) const
    {
        const auto r = reduce(v);
        return std::all_of(r.begin(), r.end(), [&](FieldElement x) { return field_.is_zero(x); });
    }

    bool contains(const Subspace& other) const
    {
        return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const FqVector& v) { return contains(v); });
    }

    /// Adds v to the span, keeping the basis reduced. Returns false if v was already in it.
    bool insert(const FqVector& v)
    {
        FqVector r = reduce(v);
        std::size_t p = 0;
        while (p < n_ && field_.is_zero(r[p]))
            ++p;
        if (p == n_)
            return false;
        const auto inv = field_.inv(r[p]);
        for (auto& x : r)
            x = field_.mul(inv, x);
        for (auto& row : rows_) {
            const auto c = row[p];
            if (field_.is_zero(c))
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                row[j] = field_.sub(row[j], field_.mul(c, r[j]));
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(r));
        return true;
    }

    /// Coordinates of a member of the subspace in the echelon basis.
    FqVector coordinates(const FqVector& v) const
    {
        FqVector c(rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r)
            c[r] = v[pivots_[r]];
        return c;
    }

    FqVector combination(const FqVector& coords) const
    {
        FqVector v(n_, field_.zero());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (field_.is_zero(coords[r]))
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                v[j] = field_.add(v[j], field_.mul(coords[r], rows_[r][j]));
        }
        return v;
    }

    Subspace sum(const Subspace& other) const
    {
        Subspace s = *this;
        for (const auto& v : other.rows_)
            s.insert(v);
        return s;
    }

    /// Number of elements q^dim.
    std::uint64_t cardinality() const
    {
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < dim(); ++i)
            n *= field_.order();
        return n;
    }

    /// All members, in the order of their coordinate codes.
    std::vector<FqVector> elements() const
    {
        std::vector<FqVector> out;
        const auto total = cardinality();
        out.reserve(total);
        FqVector coords(dim(), field_.zero());
        for (std::uint64_t code = 0; code < total; ++code) {
            auto c = code;
            for (std::size_t r = dim(); r-- > 0;) {
                coords[r] = field_.element(static_cast<std::uint32_t>(c % field_.order()));
                c /= field_.order();
            }
            out.push_back(combination(coords));
        }
        return out;
    }

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.n_ == b.n_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
    }

private:
    FiniteField field_;
    std::size_t n_;
    std::vector<FqVector> rows_;
    std::vector<std::size_t> pivots_;
};

/// V / W for W contained in V: a canonical complement basis and the
/// coordinate map. Complement rows are reduced modulo W and echelonised.
class QuotientSpace
{
public:
    QuotientSpace(const Subspace& v, const Subspace& w) : w_(w), complement_(v.field(), v.ambient_dim())
    {
        if (!v.contains(w))
            throw InvalidArgument("quotient by a subspace that is not contained");
        for (const auto& row : v.basis())
            complement_.insert(w_.reduce(row));
    }

    std::size_t dim() const { return complement_.dim(); }
    const Subspace& kernel() const { return w_; }
    const Subspace& complement() const { return complement_; }

    /// Coordinates of the class of v (v must lie in V).
    FqVector project(const FqVector& v) const { return complement_.coordinates(w_.reduce(v)); }

    /// The complement representative of a class.
    FqVector lift(const FqVector& coords) const { return complement_.combination(coords); }

private:
    Subspace w_;
    Subspace complement_;
};

// ---------------------------------------------------------------------------
// Subspace constructions inside an algebra over F_q

/// A^m: span of all m-fold products of basis elements.
inline Subspace power_ideal(const FqAlgebra& a, int m)
{
    if (m < 1)
        throw InvalidArgument("power index must be at least 1");
    Subspace cur = Subspace::full(a.ring(), a.dim());
    for (int level = 1; level < m && cur.dim() > 0; ++level) {
        Subspace next(a.ring(), a.dim());
        for (const auto& v : cur.basis())
            for (std::size_t j = 0; j < a.dim(); ++j)
                next.insert(a.mul(v, a.basis(j)));
        cur = std::move(next);
    }
    return cur;
}

/// Smallest subspace containing `s` and closed under multiplication.
inline Subspace subalgebra_closure(const FqAlgebra& a, const std::vector<FqVector>& s)
{
    Subspace cur = Subspace::span(a.ring(), a.dim(), s);
    for (bool grew = true; grew;) {
        grew = false;
        const auto rows = cur.basis();
        for (const auto& x : rows)
            for (const auto& y : rows)
                grew |= cur.insert(a.mul(x, y));
    }
    return cur;
}

/// Smallest two-sided ideal containing `s`.
inline Subspace ideal_closure(const FqAlgebra& a, const std::vector<FqVector>& s)
{
    Subspace cur = Subspace::span(a.ring(), a.dim(), s);
    for (bool grew = true; grew;) {
        grew = false;
        const auto rows = cur.basis();
        for (const auto& x : rows)
            for (std::size_t j = 0; j < a.dim(); ++j) {
                grew |= cur.insert(a.mul(x, a.basis(j)));
                grew |= cur.insert(a.mul(a.basis(j), x));
            }
    }
    return cur;
}

inline bool is_subalgebra(const FqAlgebra& a, const Subspace& s)
{
    for (const auto& x : s.basis())
        for (const auto& y : s.basis())
            if (!s.contains(a.mul(x, y)))
                return false;
    return true;
}

inline bool is_two_sided_ideal(const FqAlgebra& a, const Subspace& s)
{
    for (const auto& x : s.basis())
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (!s.contains(a.mul(x, a.basis(j))) || !s.contains(a.mul(a.basis(j), x)))
                return false;
    return true;
}

/// Linear map given by the images of the standard basis vectors (rows).
class LinearMap
{
public:
    LinearMap(FiniteField f, std::size_t source_dim, std::size_t target_dim, std::vector<FqVector> images)
        : f_(std::move(f)), src_(source_dim), dst_(target_dim), images_(std::move(images))
    {
    }

    std::size_t source_dim() const { return src_; }
    std::size_t target_dim() const { return dst_; }
    const std::vector<FqVector>& images() const { return images_; }

    FqVector operator()(const FqVector& x) const
    {
        FqVector y(dst_, f_.zero());
        for (std::size_t i = 0; i < src_; ++i) {
            if (f_.is_zero(x[i]))
                continue;
            for (std::size_t j = 0; j < dst_; ++j)
                y[j] = f_.add(y[j], f_.mul(x[i], images_[i][j]));
        }
        return y;
    }

    /// this after inner
    LinearMap compose(const LinearMap& inner) const
    {
        std::vector<FqVector> imgs;
        for (const auto& v : inner.images_)
            imgs.push_back((*this)(v));
        return LinearMap(f_, inner.src_, dst_, std::move(imgs));
    }

    static LinearMap identity(const FiniteField& f, std::size_t n)
    {
        std::vector<FqVector> imgs;
        for (std::size_t i = 0; i < n; ++i) {
            FqVector e(n, f.zero());
            e[i] = f.one();
            imgs.push_back(std::move(e));
        }
        return LinearMap(f, n, n, std::move(imgs));
    }

private:
    FiniteField f_;
    std::size_t src_, dst_;
    std::vector<FqVector> images_;
};

/// A/I with structure constants on the complement basis of I, and the projection.
struct QuotientAlgebra
{
    FqAlgebra algebra;
    LinearMap projection;
};

inline QuotientAlgebra quotient_algebra(const FqAlgebra& a, const Subspace& ideal)
{
    if (!is_two_sided_ideal(a, ideal))
        throw NotAnIdeal("subspace of dimension " + std::to_string(ideal.dim()) + " is not a two-sided ideal");
    const auto& f = a.ring();
    QuotientSpace qs(Subspace::full(f, a.dim()), ideal);
    const auto& reps = qs.complement().basis();
    std::vector<FqAlgebra::Constant> sc;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        labels.push_back(a.labels()[qs.complement().pivots()[i]]);
        for (std::size_t j = 0; j < reps.size(); ++j) {
            const auto prod = qs.project(a.mul(reps[i], reps[j]));
            for (std::size_t k = 0; k < prod.size(); ++k)
                if (!f.is_zero(prod[k]))
                    sc.push_back({i, j, k, prod[k]});
        }
    }
    std::vector<FqVector> imgs;
    for (std::size_t i = 0; i < a.dim(); ++i)
        imgs.push_back(qs.project(a.basis(i)));
    auto quotient = FqAlgebra::from_structure_constants(f, qs.dim(), std::move(sc), std::move(labels));
    return {std::move(quotient), LinearMap(f, a.dim(), qs.dim(), std::move(imgs))};
}

/// A subalgebra B of A as an algebra in its own right (basis = echelon rows of
/// B), with the inclusion B -> A.
struct EmbeddedSubalgebra
{
    FqAlgebra algebra;
    LinearMap inclusion;
};

inline EmbeddedSubalgebra subalgebra_as_algebra(const FqAlgebra& a, const Subspace& b)
{
    if (!is_subalgebra(a, b))
        throw InvalidArgument("subspace is not closed under multiplication");
    const auto& f = a.ring();
    const auto& rows = b.basis();
    std::vector<FqAlgebra::Constant> sc;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::string label;
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (f.is_zero(rows[i][j]))
                continue;
            if (!label.empty())
                label += "+";
            if (rows[i][j] != f.one())
                label += f.format(rows[i][j]) + "*";
            label += a.labels()[j];
        }
        labels.push_back(label);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            const auto coords = b.coordinates(a.mul(rows[i], rows[j]));
            for (std::size_t k = 0; k < coords.size(); ++k)
                if (!f.is_zero(coords[k]))
                    sc.push_back({i, j, k, coords[k]});
        }
    }
    auto sub = FqAlgebra::from_structure_constants(f, rows.size(), std::move(sc), std::move(labels));
    return {std::move(sub), LinearMap(f, rows.size(), a.dim(), rows)};
}

} // namespace nilchar

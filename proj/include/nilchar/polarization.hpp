#pragma once

#ifdef NILCHAR_NO_GUTKIN
#error "polarization.hpp is excluded from this build"
#endif

// Polarizations of linear functionals: an associative subalgebra B with
// f([B, B]) = 0 of the largest possible dimension dim A - rank(B_f)/2.

#include <functional>
#include <optional>
#include <vector>

#include "nilchar/subspace.hpp"

namespace nilchar {

class SearchExhausted : public Error
{
public:
    explicit SearchExhausted(const std::string& what) : Error("SearchExhausted", what) {}
};

namespace detail {

/// Solutions c of sum_k c_k m[k][l] = 0 for every column l.
inline std::vector<FqVector> left_kernel(const FiniteField& f, const std::vector<FqVector>& m, std::size_t cols)
{
    const std::size_t n = m.size();
    // transpose: equations are the columns
    std::vector<FqVector> eq(cols, FqVector(n, f.zero()));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < cols; ++l)
            eq[l][k] = m[k][l];
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < eq.size(); ++c) {
        std::size_t piv = r;
        while (piv < eq.size() && f.is_zero(eq[piv][c]))
            ++piv;
        if (piv == eq.size())
            continue;
        std::swap(eq[piv], eq[r]);
        const auto iv = f.inv(eq[r][c]);
        for (auto& x : eq[r])
            x = f.mul(x, iv);
        for (std::size_t i = 0; i < eq.size(); ++i) {
            if (i == r || f.is_zero(eq[i][c]))
                continue;
            const auto t = eq[i][c];
            for (std::size_t j = 0; j < n; ++j)
                eq[i][j] = f.sub(eq[i][j], f.mul(t, eq[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<FqVector> out;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col])
            continue;
        FqVector v(n, f.zero());
        v[free_col] = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = f.neg(eq[i][free_col]);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

/// f(x) = sum_i f_i x_i
inline FieldElement apply_functional(const FiniteField& fld, const FqVector& f, const FqVector& x)
{
    auto s = fld.zero();
    for (std::size_t i = 0; i < f.size(); ++i)
        s = fld.add(s, fld.mul(f[i], x[i]));
    return s;
}

/// Gram matrix of B_f(x, y) = f(xy - yx) on the given vectors.
inline std::vector<FqVector> bracket_form(const FqAlgebra& a, const FqVector& f, const std::vector<FqVector>& vs)
{
    std::vector<FqVector> m(vs.size(), FqVector(vs.size(), a.ring().zero()));
    for (std::size_t k = 0; k < vs.size(); ++k)
        for (std::size_t l = 0; l < vs.size(); ++l)
            m[k][l] = apply_functional(a.ring(), f, a.bracket(vs[k], vs[l]));
    return m;
}

inline std::size_t bracket_form_rank(const FqAlgebra& a, const FqVector& f)
{
    std::vector<FqVector> basis;
    for (std::size_t i = 0; i < a.dim(); ++i)
        basis.push_back(a.basis(i));
    return Subspace::span(a.ring(), a.dim(), bracket_form(a, f, basis)).dim();
}

inline bool is_isotropic(const FqAlgebra& a, const FqVector& f, const Subspace& b)
{
    for (const auto& x : b.basis())
        for (const auto& y : b.basis())
            if (!a.ring().is_zero(apply_functional(a.ring(), f, a.bracket(x, y))))
                return false;
    return true;
}

/// Calls fn on every k-dimensional subspace of F_q^n (reduced echelon forms,
/// pivot sets in lexicographic order); stops early when fn returns true.
inline bool for_each_subspace(const FiniteField& f, std::size_t n, std::size_t k,
                              const std::function<bool(const Subspace&)>& fn)
{
    std::vector<std::size_t> piv(k);
    std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t idx, std::size_t start) -> bool {
        if (idx == k) {
            // free entries: row r, columns c > piv[r] that are not pivots
            std::vector<std::pair<std::size_t, std::size_t>> slots;
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = piv[r] + 1; c < n; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end())
                        slots.emplace_back(r, c);
            std::vector<std::uint32_t> val(slots.size(), 0);
            while (true) {
                std::vector<FqVector> rows(k, FqVector(n, f.zero()));
                for (std::size_t r = 0; r < k; ++r)
                    rows[r][piv[r]] = f.one();
                for (std::size_t s = 0; s < slots.size(); ++s)
                    rows[slots[s].first][slots[s].second] = f.element(val[s]);
                if (fn(Subspace::span(f, n, rows)))
                    return true;
                std::size_t s = slots.size();
                while (s > 0 && val[s - 1] + 1 == f.order())
                    val[--s] = 0;
                if (s == 0)
                    return false;
                ++val[s - 1];
            }
        }
        for (std::size_t c = start; c + (k - idx) <= n; ++c) {
            piv[idx] = c;
            if (choose(idx + 1, c + 1))
                return true;
        }
        return false;
    };
    return choose(0, 0);
}

struct Polarization
{
    Subspace b;
    std::size_t form_rank = 0;
    bool by_flag = true; // false when the exhaustive search was needed
};

/// Basis of A ordered so that every initial segment is an ideal: A^{n-1},
/// then a complement of A^{n-1} in A^{n-2}, and so on up to A.
inline std::vector<FqVector> ideal_flag_basis(const FqAlgebra& a)
{
    std::vector<Subspace> powers;
    for (int m = 1; m <= a.nilpotence_class(); ++m)
        powers.push_back(power_ideal(a, m));
    std::vector<FqVector> out;
    for (std::size_t j = powers.size() - 1; j-- > 0;) {
        QuotientSpace qs(powers[j], powers[j + 1]);
        for (const auto& r : qs.complement().basis())
            out.push_back(r);
    }
    return out;
}

namespace detail {
constexpr std::size_t kPolarizationSearchDim = 6;
}

/// First isotropic subalgebra of dimension `target` in subspace enumeration order.
inline Subspace search_polarization(const FqAlgebra& a, const FqVector& f, std::size_t target)
{
    if (a.dim() > detail::kPolarizationSearchDim)
        throw SearchExhausted("dim A = " + std::to_string(a.dim()) + " is beyond the exhaustive search");
    std::optional<Subspace> found;
    for_each_subspace(a.ring(), a.dim(), target, [&](const Subspace& s) {
        if (is_subalgebra(a, s) && is_isotropic(a, f, s)) {
            found = s;
            return true;
        }
        return false;
    });
    if (!found)
        throw SearchExhausted("no isotropic subalgebra of dimension " + std::to_string(target));
    return std::move(*found);
}

/// Sum over the flag g_1 < g_2 < ... of the radicals of B_f on g_i; falls
/// back to searching all subspaces of the target dimension when that sum is
/// not an isotropic subalgebra of the right size.
inline Polarization find_polarization(const FqAlgebra& a, const FqVector& f)
{
    if (f.size() != a.dim())
        throw InvalidArgument("functional has the wrong length");
    const auto& fld = a.ring();
    const auto rank = bracket_form_rank(a, f);
    const auto target = a.dim() - rank / 2;

    const auto flag = ideal_flag_basis(a);
    Subspace b(fld, a.dim());
    for (std::size_t i = 1; i <= flag.size(); ++i) {
        const std::vector<FqVector> gi(flag.begin(), flag.begin() + static_cast<std::ptrdiff_t>(i));
        for (const auto& c : detail::left_kernel(fld, bracket_form(a, f, gi), i)) {
            FqVector x(a.dim(), fld.zero());
            for (std::size_t k = 0; k < i; ++k)
                for (std::size_t j = 0; j < a.dim(); ++j)
                    x[j] = fld.add(x[j], fld.mul(c[k], gi[k][j]));
            b.insert(x);
        }
    }
    if (b.dim() == target && is_subalgebra(a, b) && is_isotropic(a, f, b))
        return {std::move(b), rank, true};

    return {search_polarization(a, f, target), rank, false};
}

} // namespace nilchar

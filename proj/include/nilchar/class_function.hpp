#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "nilchar/cyclotomic.hpp"
#include "nilchar/unit_group.hpp"

namespace nilchar {

/// A complex class function on a subgroup H of some 1+A: one exact value per
/// conjugacy class of H, in the canonical class order.
class ClassFunction
{
public:
    ClassFunction(ClassStructurePtr classes, std::vector<Cyclotomic> values)
        : classes_(std::move(classes)), values_(std::move(values))
    {
        if (values_.size() != classes_->count())
            throw InvalidArgument("class function needs one value per class");
    }

    static ClassFunction constant(ClassStructurePtr classes, const Cyclotomic& v)
    {
        const auto k = classes->count();
        return ClassFunction(std::move(classes), std::vector<Cyclotomic>(k, v));
    }
    static ClassFunction trivial(ClassStructurePtr classes) { return constant(std::move(classes), Cyclotomic(1)); }

    /// |H| at the identity, 0 elsewhere.
    static ClassFunction regular(ClassStructurePtr classes)
    {
        std::vector<Cyclotomic> v(classes->count(), Cyclotomic(0));
        v[0] = Cyclotomic(static_cast<std::int64_t>(classes->order()));
        return ClassFunction(std::move(classes), std::move(v));
    }

    const ClassStructurePtr& classes() const { return classes_; }
    const Subgroup& group() const { return classes_->group(); }
    const std::vector<Cyclotomic>& values() const { return values_; }
    const Cyclotomic& operator[](std::size_t cls) const { return values_[cls]; }
    const Cyclotomic& at(Code g) const { return values_[classes_->class_of(g)]; }
    const Cyclotomic& degree() const { return values_[0]; }

    /// The degree as an integer; throws if the identity value is not one.
    std::uint64_t integer_degree() const
    {
        const auto& d = values_[0];
        if (!d.is_rational() || d.rational_part().denominator() != 1 || d.rational_part().numerator() < 0)
            throw InvalidArgument("class function degree is not a natural number");
        return static_cast<std::uint64_t>(d.rational_part().numerator());
    }

    ClassFunction conj() const
    {
        ClassFunction r = *this;
        for (auto& v : r.values_)
            v = v.conj();
        return r;
    }

    friend ClassFunction operator+(ClassFunction a, const ClassFunction& b)
    {
        a.check_same(b);
        for (std::size_t i = 0; i < a.values_.size(); ++i)
            a.values_[i] += b.values_[i];
        return a;
    }
    friend ClassFunction operator-(ClassFunction a, const ClassFunction& b)
    {
        a.check_same(b);
        for (std::size_t i = 0; i < a.values_.size(); ++i)
            a.values_[i] -= b.values_[i];
        return a;
    }
    /// Pointwise product.
    friend ClassFunction operator*(ClassFunction a, const ClassFunction& b)
    {
        a.check_same(b);
        for (std::size_t i = 0; i < a.values_.size(); ++i)
            a.values_[i] *= b.values_[i];
        return a;
    }
    friend ClassFunction operator*(ClassFunction a, const Cyclotomic& s)
    {
        for (auto& v : a.values_)
            v *= s;
        return a;
    }

    friend bool operator==(const ClassFunction& a, const ClassFunction& b)
    {
        return a.classes_->group() == b.classes_->group() && a.values_ == b.values_;
    }

    std::string to_string() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < values_.size(); ++i)
            out += (i ? ", " : "") + values_[i].to_string();
        return out + "]";
    }

private:
    void check_same(const ClassFunction& o) const
    {
        if (!(classes_->group() == o.classes_->group()))
            throw InvalidArgument("class functions on different groups");
    }

    ClassStructurePtr classes_;
    std::vector<Cyclotomic> values_;
};

/// <phi, psi> = |H|^{-1} sum_C |C| phi(C) conj(psi(C))
inline Cyclotomic inner_product(const ClassFunction& phi, const ClassFunction& psi)
{
    if (!(phi.group() == psi.group()))
        throw InvalidArgument("inner product of class functions on different groups");
    const auto& cs = *phi.classes();
    Cyclotomic sum;
    for (std::size_t c = 0; c < cs.count(); ++c) {
        if (phi[c].is_zero() || psi[c].is_zero())
            continue;
        sum += phi[c] * psi[c].conj() * Rational(static_cast<std::int64_t>(cs.class_size(c)));
    }
    return sum / Rational(static_cast<std::int64_t>(cs.order()));
}

/// The inner product as a rational; throws if it is not rational.
inline Rational rational_inner_product(const ClassFunction& phi, const ClassFunction& psi)
{
    const auto v = inner_product(phi, psi);
    if (!v.is_rational())
        throw VerificationFailed("inner product", "irrational value " + v.to_string());
    return v.rational_part();
}

inline void require_subgroup(const Subgroup& h, const Subgroup& g)
{
    if (h.ambient() != g.ambient() || !g.contains(h))
        throw NotASubgroup("H is not a subgroup of G");
}

/// Ind_H^G rho(g) = |C_G(g)| / |H| * sum over h in (class of g) meet H of rho(h).
inline ClassFunction induce(const ClassFunction& rho, const ClassStructurePtr& g)
{
    const auto& h = rho.group();
    require_subgroup(h, g->group());
    std::vector<Cyclotomic> values(g->count());
    for (std::size_t c = 0; c < g->count(); ++c) {
        Cyclotomic sum;
        bool any = false;
        for (Code x : (*g)[c].members)
            if (h.contains(x)) {
                sum += rho.at(x);
                any = true;
            }
        if (!any)
            continue;
        // |C_G(g)| / |H| = |G| / (|class| |H|)
        values[c] = sum * Rational(static_cast<std::int64_t>(g->order()),
                                   static_cast<std::int64_t>(g->class_size(c) * h.size()));
    }
    return ClassFunction(g, std::move(values));
}

inline ClassFunction restrict_to(const ClassFunction& chi, const ClassStructurePtr& h)
{
    require_subgroup(h->group(), chi.group());
    std::vector<Cyclotomic> values;
    values.reserve(h->count());
    for (const auto& cls : h->classes())
        values.push_back(chi.at(cls.representative));
    return ClassFunction(h, std::move(values));
}

namespace detail {

/// k with v = zeta_n^k, or nothing.
inline std::optional<unsigned> root_exponent(const Cyclotomic& v, std::uint64_t n)
{
    auto k = v.root_of_unity_exponent(static_cast<int>(n));
    if (!k)
        return std::nullopt;
    return static_cast<unsigned>(*k);
}

} // namespace detail

/// A homomorphism from a subgroup S into the roots of unity, stored as
/// exponents of zeta_N per element of S (in the subgroup's element order).
class LinearCharacter
{
public:
    LinearCharacter(Subgroup domain, std::uint64_t order, std::vector<unsigned> exponents)
        : domain_(std::move(domain)), order_(order), exp_(std::move(exponents))
    {
        if (exp_.size() != domain_.size())
            throw InvalidArgument("linear character needs one exponent per element");
    }

    const Subgroup& domain() const { return domain_; }
    std::uint64_t order() const { return order_; }
    unsigned exponent(Code g) const
    {
        const auto p = domain_.position(g);
        if (p == Subgroup::npos)
            throw NotASubgroup("element outside the domain of a linear character");
        return exp_[p];
    }
    const std::vector<unsigned>& exponents() const { return exp_; }
    Cyclotomic operator()(Code g) const
    {
        return Cyclotomic::root_of_unity(static_cast<int>(order_), exponent(g));
    }

    bool is_trivial() const
    {
        return std::all_of(exp_.begin(), exp_.end(), [](unsigned e) { return e == 0; });
    }

    /// The same character with values written over zeta_M, N | M.
    LinearCharacter with_order(std::uint64_t m) const
    {
        if (m % order_ != 0)
            throw InvalidArgument("character order does not divide target");
        auto e = exp_;
        for (auto& x : e)
            x = static_cast<unsigned>(x * (m / order_));
        return LinearCharacter(domain_, m, std::move(e));
    }

    ClassFunction as_class_function(const ClassStructurePtr& classes) const
    {
        if (!(classes->group() == domain_))
            throw InvalidArgument("class structure is for a different group");
        std::vector<Cyclotomic> v;
        for (const auto& cls : classes->classes())
            v.push_back((*this)(cls.representative));
        return ClassFunction(classes, std::move(v));
    }

    /// Value of g -> chi(x g x^{-1}) for x in the ambient group normalising S.
    LinearCharacter conjugate(Code x) const
    {
        const auto& g = domain_.group();
        std::vector<unsigned> e(exp_.size());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = exponent(g.conj(x, domain_.elements()[i]));
        return LinearCharacter(domain_, order_, std::move(e));
    }

    friend bool operator==(const LinearCharacter& a, const LinearCharacter& b)
    {
        if (!(a.domain_ == b.domain_))
            return false;
        const auto m = std::lcm(a.order_, b.order_);
        for (std::size_t i = 0; i < a.exp_.size(); ++i)
            if (a.exp_[i] * (m / a.order_) != b.exp_[i] * (m / b.order_))
                return false;
        return true;
    }

    /// Lexicographic on the exponent vector over a common order.
    friend bool operator<(const LinearCharacter& a, const LinearCharacter& b)
    {
        const auto m = std::lcm(a.order_, b.order_);
        for (std::size_t i = 0; i < a.exp_.size(); ++i) {
            const auto x = a.exp_[i] * (m / a.order_), y = b.exp_[i] * (m / b.order_);
            if (x != y)
                return x < y;
        }
        return false;
    }

private:
    Subgroup domain_;
    std::uint64_t order_;
    std::vector<unsigned> exp_;
};

/// If chi(s) = chi(1) zeta(s) on all of S, returns zeta.
inline std::optional<LinearCharacter> scalar_on(const ClassFunction& chi, const Subgroup& s)
{
    require_subgroup(s, chi.group());
    const auto& d = chi.degree();
    if (d.is_zero())
        throw InvalidArgument("scalar_on needs a nonzero degree");
    const auto n = chi.classes()->exponent();
    const Rational inv_d = Rational(1) / d.rational_part();
    std::vector<unsigned> e;
    e.reserve(s.size());
    for (Code x : s.elements()) {
        const auto k = detail::root_exponent(chi.at(x) * inv_d, n);
        if (!k)
            return std::nullopt;
        e.push_back(*k);
    }
    return LinearCharacter(s, n, std::move(e));
}

struct MackeyResult
{
    bool by_inner_product = false;
    bool by_conjugates = false;
    std::optional<Code> fixing_element; // some g outside H with rho^g = rho
};

/// Both forms of Mackey's criterion for a normal subgroup H of G:
/// <Ind rho, Ind rho> = 1, and rho^g != rho for every g outside H.
inline MackeyResult mackey_check(const ClassFunction& rho, const ClassStructurePtr& g)
{
    const auto& h = rho.group();
    require_subgroup(h, g->group());
    if (!h.is_normal_in(g->group()))
        throw NotNormal("H is not normal in G");
    if (rational_inner_product(rho, rho) != Rational(1))
        throw InvalidArgument("rho is not irreducible");

    MackeyResult r;
    const auto ind = induce(rho, g);
    r.by_inner_product = rational_inner_product(ind, ind) == Rational(1);

    r.by_conjugates = true;
    const auto& grp = h.group();
    const auto& hc = *rho.classes();
    std::vector<bool> covered(g->group().size(), false);
    for (std::size_t pos = 0; pos < g->group().size(); ++pos) {
        const Code x = g->group().elements()[pos];
        if (covered[pos] || h.contains(x))
            continue;
        for (Code y : h.elements())
            covered[g->group().position(grp.mul(x, y))] = true;
        // rho^x(h) = rho(x^{-1} h x)
        const Code xi = grp.inv(x);
        bool same = true;
        for (std::size_t c = 0; c < hc.count() && same; ++c)
            same = rho.at(grp.conj(xi, hc[c].representative)) == rho[c];
        if (same) {
            r.by_conjugates = false;
            r.fixing_element = x;
            break;
        }
    }
    return r;
}

inline bool mackey_irreducible(const ClassFunction& rho, const ClassStructurePtr& g)
{
    const auto r = mackey_check(rho, g);
    if (r.by_inner_product != r.by_conjugates)
        throw VerificationFailed("Mackey criteria disagree",
                                 "inner product says " + std::string(r.by_inner_product ? "irreducible" : "reducible"));
    return r.by_inner_product;
}

} // namespace nilchar

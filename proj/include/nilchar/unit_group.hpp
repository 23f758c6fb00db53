#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilchar/subspace.hpp"

namespace nilchar {

/// Index of an element 1+x of a finite group 1+A: the coordinates of x read as
/// a base-q number, first coordinate most significant. Sorting codes sorts
/// elements lexicographically by coordinates.
using Code = std::uint32_t;

/// The finite p-group 1+A for a nilpotent algebra A over F_q.
class UnitGroup
{
public:
    static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 20;

    explicit UnitGroup(FqAlgebra algebra, std::uint64_t cap = kDefaultCap) : a_(std::move(algebra))
    {
        order_ = 1;
        for (std::size_t i = 0; i < a_.dim(); ++i) {
            order_ *= a_.ring().order();
            if (order_ > cap)
                throw CapExceeded("|1+A| = " + std::to_string(a_.ring().order()) + "^" + std::to_string(a_.dim()) +
                                  " exceeds cap " + std::to_string(cap));
        }
    }

    const FqAlgebra& algebra() const { return a_; }
    const FiniteField& field() const { return a_.ring(); }
    std::uint64_t order() const { return order_; }
    std::size_t dim() const { return a_.dim(); }
    static constexpr Code identity() { return 0; }

    Code encode(const FqVector& x) const
    {
        Code c = 0;
        const auto q = field().order();
        for (const auto& e : x)
            c = c * q + e.code;
        return c;
    }

    FqVector decode(Code c) const
    {
        FqVector x(a_.dim());
        const auto q = field().order();
        for (std::size_t i = a_.dim(); i-- > 0;) {
            x[i] = FieldElement{c % q};
            c /= q;
        }
        return x;
    }

    Code mul(Code g, Code h) const { return encode(unit_mul(a_, decode(g), decode(h))); }
    Code inv(Code g) const { return encode(unit_inv(a_, decode(g))); }
    /// g h g^{-1} h^{-1}
    Code comm(Code g, Code h) const { return encode(unit_comm(a_, decode(g), decode(h))); }
    /// g h g^{-1}
    Code conj(Code g, Code h) const
    {
        const auto x = decode(g);
        return encode(unit_mul(a_, unit_mul(a_, x, decode(h)), unit_inv(a_, x)));
    }

    Code power(Code g, std::uint64_t e) const
    {
        Code r = identity();
        Code b = g;
        while (e) {
            if (e & 1)
                r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// Orders are powers of p.
    std::uint64_t element_order(Code g) const
    {
        std::uint64_t n = 1;
        Code cur = g;
        const auto p = field().characteristic();
        while (cur != identity()) {
            cur = power(cur, p);
            n *= p;
        }
        return n;
    }

private:
    FqAlgebra a_;
    std::uint64_t order_ = 1;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroup>;

inline UnitGroupPtr make_unit_group(FqAlgebra a, std::uint64_t cap = UnitGroup::kDefaultCap)
{
    return std::make_shared<const UnitGroup>(std::move(a), cap);
}

/// A subgroup of some 1+A as a sorted set of element codes, with a
/// generating set.
class Subgroup
{
public:
    static Subgroup whole(UnitGroupPtr g)
    {
        Subgroup s;
        s.ambient_ = g;
        s.whole_ = true;
        s.elements_.resize(g->order());
        for (std::size_t i = 0; i < s.elements_.size(); ++i)
            s.elements_[i] = static_cast<Code>(i);
        s.generators_ = filtration_generators(*g, Subspace::full(g->field(), g->dim()));
        return s;
    }

    /// 1+V for a subalgebra V.
    static Subgroup from_subspace(UnitGroupPtr g, const Subspace& v)
    {
        if (!is_subalgebra(g->algebra(), v))
            throw NotASubgroup("1+V needs V closed under multiplication");
        if (v.dim() == g->dim())
            return whole(g);
        Subgroup s;
        s.ambient_ = g;
        for (const auto& x : v.elements())
            s.elements_.push_back(g->encode(x));
        std::sort(s.elements_.begin(), s.elements_.end());
        s.generators_ = filtration_generators(*g, v);
        return s;
    }

    /// An already-closed element set; generators are picked greedily.
    static Subgroup from_elements(UnitGroupPtr g, std::vector<Code> elements);

    const UnitGroupPtr& ambient() const { return ambient_; }
    const UnitGroup& group() const { return *ambient_; }
    std::size_t size() const { return elements_.size(); }
    bool is_whole() const { return whole_; }
    const std::vector<Code>& elements() const { return elements_; }
    const std::vector<Code>& generators() const { return generators_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t position(Code c) const
    {
        if (whole_)
            return c < elements_.size() ? c : npos;
        auto it = std::lower_bound(elements_.begin(), elements_.end(), c);
        return (it != elements_.end() && *it == c) ? static_cast<std::size_t>(it - elements_.begin()) : npos;
    }
    bool contains(Code c) const { return position(c) != npos; }

    bool contains(const Subgroup& other) const
    {
        return std::all_of(other.elements_.begin(), other.elements_.end(), [&](Code c) { return contains(c); });
    }

    /// Normal in its ambient group (checked against the ambient generators).
    bool is_normal_in(const Subgroup& g) const
    {
        for (Code x : g.generators())
            for (Code h : generators_)
                if (!contains(ambient_->conj(x, h)))
                    return false;
        return true;
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b)
    {
        return a.ambient_ == b.ambient_ && a.elements_ == b.elements_;
    }

private:
    friend Subgroup subgroup_closure(const UnitGroupPtr&, const std::vector<Code>&, std::uint64_t);

    /// 1 + lambda b for b running over complements of V^{k+1} in V^k and lambda
    /// over an F_p-basis of F_q. These generate 1+V.
    static std::vector<Code> filtration_generators(const UnitGroup& g, const Subspace& v)
    {
        const auto& a = g.algebra();
        const auto& f = g.field();
        std::vector<Code> gens;
        Subspace cur = v;
        while (cur.dim() > 0) {
            Subspace next(f, a.dim());
            for (const auto& x : cur.basis())
                for (const auto& y : v.basis())
                    next.insert(a.mul(x, y));
            QuotientSpace qs(cur, next);
            for (const auto& b : qs.complement().basis()) {
                FieldElement lambda = f.one();
                for (unsigned i = 0; i < f.degree(); ++i) {
                    gens.push_back(g.encode(a.scale(lambda, b)));
                    lambda = f.mul(lambda, f.primitive_element());
                }
            }
            cur = std::move(next);
        }
        // the scalars a^i above are an F_p-basis only when a generates F_q over F_p,
        // which the primitive element does
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        return gens;
    }

    UnitGroupPtr ambient_;
    std::vector<Code> elements_;
    std::vector<Code> generators_;
    bool whole_ = false;
};

namespace detail {

/// Membership bitmap over all codes of the ambient group.
class CodeSet
{
public:
    explicit CodeSet(std::uint64_t universe) : bits_(universe, false) {}
    bool contains(Code c) const { return bits_[c]; }
    bool insert(Code c)
    {
        if (bits_[c])
            return false;
        bits_[c] = true;
        list_.push_back(c);
        return true;
    }
    const std::vector<Code>& members() const { return list_; }
    std::size_t size() const { return list_.size(); }

private:
    std::vector<bool> bits_;
    std::vector<Code> list_;
};

/// Extends the group `set` (closed under the gens so far) by a new generator.
inline void extend_closure(const UnitGroup& g, CodeSet& set, const std::vector<Code>& gens, std::uint64_t cap)
{
    std::deque<Code> queue(set.members().begin(), set.members().end());
    while (!queue.empty()) {
        const Code x = queue.front();
        queue.pop_front();
        for (Code s : gens) {
            const Code y = g.mul(x, s);
            if (set.insert(y)) {
                if (set.size() > cap)
                    throw CapExceeded("subgroup closure exceeds cap " + std::to_string(cap));
                queue.push_back(y);
            }
        }
    }
}

} // namespace detail

/// Subgroup generated by `gens`: breadth-first closure under right
/// multiplication by the generators (inverses are positive powers in a
/// finite group). Redundant generators are dropped.
inline Subgroup subgroup_closure(const UnitGroupPtr& g, const std::vector<Code>& gens,
                                 std::uint64_t cap = UnitGroup::kDefaultCap)
{
    detail::CodeSet set(g->order());
    set.insert(UnitGroup::identity());
    std::vector<Code> kept;
    for (Code s : gens) {
        if (set.contains(s))
            continue;
        kept.push_back(s);
        detail::extend_closure(*g, set, kept, cap);
    }
    Subgroup out;
    out.ambient_ = g;
    out.elements_ = set.members();
    std::sort(out.elements_.begin(), out.elements_.end());
    out.whole_ = out.elements_.size() == g->order();
    out.generators_ = std::move(kept);
    return out;
}

inline Subgroup Subgroup::from_elements(UnitGroupPtr g, std::vector<Code> elements)
{
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    Subgroup s = subgroup_closure(g, elements);
    if (s.elements_ != elements)
        throw NotASubgroup("element set is not closed under multiplication");
    return s;
}

/// (S1, S2): generated by all g h g^{-1} h^{-1}, g in S1, h in S2.
inline Subgroup commutator_subgroup(const Subgroup& s1, const Subgroup& s2,
                                    std::uint64_t cap = UnitGroup::kDefaultCap)
{
    if (s1.ambient() != s2.ambient())
        throw InvalidArgument("commutator of subgroups of different groups");
    const auto& g = *s1.ambient();
    detail::CodeSet comms(g.order());
    for (Code x : s1.elements())
        for (Code y : s2.elements())
            comms.insert(g.comm(x, y));
    auto gens = comms.members();
    std::sort(gens.begin(), gens.end());
    return subgroup_closure(s1.ambient(), gens, cap);
}

/// Smallest normal subgroup of the ambient group containing `gens`.
inline Subgroup normal_closure(const UnitGroupPtr& g, std::vector<Code> gens,
                               std::uint64_t cap = UnitGroup::kDefaultCap)
{
    const auto whole = Subgroup::whole(g);
    auto n = subgroup_closure(g, gens, cap);
    for (;;) {
        std::vector<Code> fresh;
        for (Code x : whole.generators())
            for (Code h : n.generators()) {
                const Code c = g->conj(x, h);
                if (!n.contains(c))
                    fresh.push_back(c);
            }
        if (fresh.empty())
            return n;
        gens = n.generators();
        gens.insert(gens.end(), fresh.begin(), fresh.end());
        n = subgroup_closure(g, gens, cap);
    }
}

/// (S1, S2) for S1, S2 normal: the normal closure of the commutators of
/// generators. Avoids the |S1| |S2| sweep of commutator_subgroup.
inline Subgroup normal_commutator_subgroup(const Subgroup& s1, const Subgroup& s2,
                                           std::uint64_t cap = UnitGroup::kDefaultCap)
{
    if (s1.ambient() != s2.ambient())
        throw InvalidArgument("commutator of subgroups of different groups");
    const auto whole = Subgroup::whole(s1.ambient());
    if (!s1.is_normal_in(whole) || !s2.is_normal_in(whole))
        throw NotNormal("normal_commutator_subgroup needs normal subgroups");
    std::vector<Code> gens;
    for (Code x : s1.generators())
        for (Code y : s2.generators())
            gens.push_back(s1.group().comm(x, y));
    return normal_closure(s1.ambient(), std::move(gens), cap);
}

inline Subgroup intersect(const Subgroup& a, const Subgroup& b)
{
    std::vector<Code> both;
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                          std::back_inserter(both));
    return subgroup_closure(a.ambient(), both);
}

/// All elements of 1+A in canonical order.
inline std::vector<FqVector> enumerate_group(const UnitGroup& g)
{
    std::vector<FqVector> out;
    out.reserve(g.order());
    for (std::uint64_t c = 0; c < g.order(); ++c)
        out.push_back(g.decode(static_cast<Code>(c)));
    return out;
}

// ---------------------------------------------------------------------------
// Conjugacy classes

struct ConjugacyClass
{
    Code representative; // smallest member
    std::vector<Code> members;
};

/// Conjugacy classes of a subgroup H (under conjugation by H), ordered by
/// (size, smallest member). Class 0 is always {1}.
class ClassStructure
{
public:
    explicit ClassStructure(Subgroup h) : h_(std::move(h))
    {
        const auto& g = h_.group();
        std::vector<int> seen(h_.size(), -1);
        std::vector<ConjugacyClass> classes;
        for (std::size_t pos = 0; pos < h_.size(); ++pos) {
            if (seen[pos] >= 0)
                continue;
            const Code start = h_.elements()[pos];
            ConjugacyClass cls{start, {start}};
            seen[pos] = 1;
            for (std::size_t i = 0; i < cls.members.size(); ++i)
                for (Code s : h_.generators()) {
                    const Code y = g.conj(s, cls.members[i]);
                    const auto p = h_.position(y);
                    if (p == Subgroup::npos)
                        throw NotASubgroup("conjugate left the subgroup");
                    if (seen[p] < 0) {
                        seen[p] = 1;
                        cls.members.push_back(y);
                    }
                }
            std::sort(cls.members.begin(), cls.members.end());
            cls.representative = cls.members.front();
            classes.push_back(std::move(cls));
        }
        std::sort(classes.begin(), classes.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
            if (a.members.size() != b.members.size())
                return a.members.size() < b.members.size();
            return a.representative < b.representative;
        });
        classes_ = std::move(classes);
        class_of_.assign(h_.size(), 0);
        for (std::size_t c = 0; c < classes_.size(); ++c)
            for (Code m : classes_[c].members)
                class_of_[h_.position(m)] = static_cast<int>(c);
        for (const auto& cls : classes_)
            exponent_ = std::max(exponent_, g.element_order(cls.representative));
    }

    const Subgroup& group() const { return h_; }
    std::size_t order() const { return h_.size(); }
    std::size_t count() const { return classes_.size(); }
    const std::vector<ConjugacyClass>& classes() const { return classes_; }
    const ConjugacyClass& operator[](std::size_t i) const { return classes_[i]; }
    std::size_t class_size(std::size_t i) const { return classes_[i].members.size(); }
    /// Largest element order (a power of p).
    std::uint64_t exponent() const { return exponent_; }

    std::size_t class_of(Code c) const
    {
        const auto p = h_.position(c);
        if (p == Subgroup::npos)
            throw NotASubgroup("element is not in the group");
        return static_cast<std::size_t>(class_of_[p]);
    }

    /// Class of g^e for g in class i.
    std::size_t power_class(std::size_t i, std::uint64_t e) const
    {
        return class_of(h_.group().power(classes_[i].representative, e));
    }

private:
    Subgroup h_;
    std::vector<ConjugacyClass> classes_;
    std::vector<int> class_of_;
    std::uint64_t exponent_ = 1;
};

using ClassStructurePtr = std::shared_ptr<const ClassStructure>;

inline ClassStructurePtr conjugacy_classes(const Subgroup& h)
{
    return std::make_shared<const ClassStructure>(h);
}

// ---------------------------------------------------------------------------
// Quotients and the commutator containment theorem

/// (1+A)/(1+I) realised as 1+(A/I), with the projection on codes.
struct QuotientGroup
{
    UnitGroupPtr group;
    LinearMap projection;
    UnitGroupPtr source;

    Code project(Code c) const { return group->encode(projection(source->decode(c))); }
};

inline QuotientGroup quotient_group(const UnitGroupPtr& g, const Subspace& ideal)
{
    auto q = quotient_algebra(g->algebra(), ideal);
    return {make_unit_group(std::move(q.algebra)), std::move(q.projection), g};
}

inline Subgroup power_subgroup(const UnitGroupPtr& g, int m)
{
    return Subgroup::from_subspace(g, power_ideal(g->algebra(), m));
}

struct CommutatorTheoremResult
{
    int m = 0, n = 0;
    std::size_t lhs_order = 0, rhs_order = 0;
    bool holds = false;
    std::optional<Code> witness; // an element of the left side missing on the right
};

/// Tests (1+A^m, 1+A^n) inside (1+A, 1+A^{m+n-1}) by explicit closure.
inline CommutatorTheoremResult check_commutator_theorem(const UnitGroupPtr& g, int m, int n,
                                                        std::uint64_t cap = UnitGroup::kDefaultCap)
{
    if (m < 1 || n < 1)
        throw InvalidArgument("commutator theorem needs m, n >= 1");
    const auto lhs = commutator_subgroup(power_subgroup(g, m), power_subgroup(g, n), cap);
    const auto rhs = commutator_subgroup(Subgroup::whole(g), power_subgroup(g, m + n - 1), cap);
    CommutatorTheoremResult r{m, n, lhs.size(), rhs.size(), true, std::nullopt};
    for (Code c : lhs.elements())
        if (!rhs.contains(c)) {
            r.holds = false;
            r.witness = c;
            break;
        }
    return r;
}

} // namespace nilchar

#pragma once

#ifdef NILCHAR_NO_GUTKIN
#error "gutkin.hpp is excluded from this build"
#endif

// Monomial decomposition of the irreducible characters of 1+A: each chi is
// written as Ind_{1+B}^{1+A} alpha with B a subalgebra and alpha linear, by
// peeling off one codimension-1 ideal at a time.

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilchar/chars.hpp"
#include "nilchar/exactfield.hpp"
#include "nilchar/io.hpp"

namespace nilchar {

class GutkinDisabled : public UsageError
{
public:
    explicit GutkinDisabled(const std::string& what) : UsageError("GutkinDisabled", what) {}
};

namespace detail {
inline std::atomic<bool>& gutkin_switch()
{
    static std::atomic<bool> on{true};
    return on;
}
} // namespace detail

/// Runtime switch; when off every entry point below throws GutkinDisabled.
inline void set_gutkin_enabled(bool on) { detail::gutkin_switch() = on; }
inline bool gutkin_enabled() { return detail::gutkin_switch(); }

namespace detail {

inline void require_gutkin()
{
    if (!gutkin_enabled())
        throw GutkinDisabled("monomial decomposition is switched off");
}

/// Vectors of F_q^k by index, first coordinate most significant.
inline FqVector vector_at(const FiniteField& f, std::size_t k, std::uint64_t idx)
{
    FqVector v(k);
    for (std::size_t i = k; i-- > 0;) {
        v[i] = f.element(static_cast<std::uint32_t>(idx % f.order()));
        idx /= f.order();
    }
    return v;
}

inline std::uint64_t index_of(const FiniteField& f, const FqVector& v)
{
    std::uint64_t idx = 0;
    for (const auto& x : v)
        idx = idx * f.order() + x.code;
    return idx;
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e)
{
    std::uint64_t r = 1;
    while (e--)
        r *= b;
    return r;
}

inline FqVector vadd(const FiniteField& f, FqVector a, const FqVector& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = f.add(a[i], b[i]);
    return a;
}

inline FqVector vscale(const FiniteField& f, FieldElement s, FqVector a)
{
    for (auto& x : a)
        x = f.mul(s, x);
    return a;
}

inline FieldElement dot(const FiniteField& f, const FqVector& a, const FqVector& b)
{
    auto s = f.zero();
    for (std::size_t i = 0; i < a.size(); ++i)
        s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

inline std::string describe(const FiniteField& f, const FqVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + f.format(v[i]);
    return s + ")";
}

} // namespace detail

/// V^k for a subalgebra V of A, in the coordinates of A.
inline Subspace subalgebra_power(const FqAlgebra& a, const Subspace& v, int k)
{
    if (k < 1)
        throw InvalidArgument("power index must be at least 1");
    Subspace cur = v;
    for (int level = 1; level < k && cur.dim() > 0; ++level) {
        Subspace next(a.ring(), a.dim());
        for (const auto& x : cur.basis())
            for (const auto& y : v.basis())
                next.insert(a.mul(x, y));
        cur = std::move(next);
    }
    return cur;
}

inline bool is_ideal_of(const FqAlgebra& a, const Subspace& v, const Subspace& i)
{
    if (!v.contains(i))
        return false;
    for (const auto& x : i.basis())
        for (const auto& y : v.basis())
            if (!i.contains(a.mul(x, y)) || !i.contains(a.mul(y, x)))
                return false;
    return true;
}

/// A subgroup 1+V of the ambient group together with its classes and table.
struct Level
{
    Subspace algebra;
    Subgroup group;
    ClassStructurePtr classes;
    std::shared_ptr<const CharacterTable> table;

    int nilpotence_class(const FqAlgebra& a) const
    {
        int n = 1;
        while (subalgebra_power(a, algebra, n).dim() > 0)
            ++n;
        return n;
    }
};

// ---------------------------------------------------------------------------
// One step of the recursion

struct ScalarLevel
{
    int m = 1;
    LinearCharacter zeta; // on 1+V^m
};

/// Smallest m >= 1 with chi scalar on 1+V^m. m = 1 exactly when chi is linear.
inline ScalarLevel minimal_scalar_level(const ClassFunction& chi, const Level& lv)
{
    detail::require_gutkin();
    const auto& a = lv.group.group().algebra();
    for (int m = 1;; ++m) {
        const auto vm = subalgebra_power(a, lv.algebra, m);
        const auto s = m == 1 ? lv.group : Subgroup::from_subspace(lv.group.ambient(), vm);
        auto zeta = scalar_on(chi, s);
        if (!zeta)
            continue;
        // conjugation invariance, on generators of 1+V against every element of 1+V^m
        for (Code g : lv.group.generators())
            for (Code h : s.elements())
                if (zeta->exponent(lv.group.group().conj(g, h)) != zeta->exponent(h))
                    throw VerificationFailed("scalar level", "zeta is not conjugation invariant");
        return {m, std::move(*zeta)};
    }
}

/// C_zeta(x, y) = zeta((1+x)(1+y)(1+x)^{-1}(1+y)^{-1}) on V/V^2 x V^{m-1}/V^m,
/// stored as exponents of zeta_order.
struct CommutatorPairing
{
    int m = 2;
    QuotientSpace x_space; // V / V^2
    QuotientSpace y_space; // V^{m-1} / V^m
    std::uint64_t order = 1;
    std::uint64_t x_count = 1, y_count = 1;
    std::vector<unsigned> table;
    bool exhaustive_well_defined = false;

    unsigned operator()(std::uint64_t x, std::uint64_t y) const { return table[x * y_count + y]; }
    bool is_trivial() const
    {
        return std::all_of(table.begin(), table.end(), [](unsigned e) { return e == 0; });
    }
};

namespace detail {
constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 16;
}

inline CommutatorPairing commutator_pairing(const Level& lv, const ScalarLevel& sl)
{
    detail::require_gutkin();
    if (sl.m < 2)
        throw InvalidArgument("the commutator pairing needs m >= 2");
    const auto& g = lv.group.group();
    const auto& a = g.algebra();
    const auto& f = g.field();
    const auto v2 = subalgebra_power(a, lv.algebra, 2);
    const auto vm1 = subalgebra_power(a, lv.algebra, sl.m - 1);
    const auto vm = subalgebra_power(a, lv.algebra, sl.m);
    CommutatorPairing p{sl.m, QuotientSpace(lv.algebra, v2), QuotientSpace(vm1, vm), sl.zeta.order()};
    p.x_count = detail::ipow(f.order(), p.x_space.dim());
    p.y_count = detail::ipow(f.order(), p.y_space.dim());

    auto value = [&](const FqVector& x, const FqVector& y) -> unsigned {
        const Code c = g.encode(unit_comm(a, x, y));
        if (!sl.zeta.domain().contains(c))
            throw VerificationFailed("commutator pairing", "commutator outside 1+V^m");
        return sl.zeta.exponent(c);
    };

    std::vector<FqVector> xs, ys;
    for (std::uint64_t i = 0; i < p.x_count; ++i)
        xs.push_back(p.x_space.lift(detail::vector_at(f, p.x_space.dim(), i)));
    for (std::uint64_t j = 0; j < p.y_count; ++j)
        ys.push_back(p.y_space.lift(detail::vector_at(f, p.y_space.dim(), j)));
    p.table.resize(p.x_count * p.y_count);
    for (std::uint64_t i = 0; i < p.x_count; ++i)
        for (std::uint64_t j = 0; j < p.y_count; ++j)
            p.table[i * p.y_count + j] = value(xs[i], ys[j]);

    // factoring through V^2 and V^m
    auto check = [&](const FqVector& x, const FqVector& y) {
        const auto i = detail::index_of(f, p.x_space.project(x));
        const auto j = detail::index_of(f, p.y_space.project(y));
        if (value(x, y) != p(i, j))
            throw VerificationFailed("commutator pairing well-defined",
                                     "x = " + detail::describe(f, x) + ", y = " + detail::describe(f, y));
    };
    const auto vsize = detail::ipow(f.order(), lv.algebra.dim());
    const auto ysize = detail::ipow(f.order(), vm1.dim());
    if (vsize * ysize <= detail::kExhaustiveLimit) {
        p.exhaustive_well_defined = true;
        const auto vel = lv.algebra.elements();
        const auto yel = vm1.elements();
        for (const auto& x : vel)
            for (const auto& y : yel)
                check(x, y);
    } else {
        for (std::uint64_t i = 0; i < p.x_count; ++i)
            for (std::uint64_t j = 0; j < p.y_count; ++j) {
                for (const auto& b : v2.basis())
                    check(detail::vadd(f, xs[i], b), ys[j]);
                for (const auto& c : vm.basis())
                    check(xs[i], detail::vadd(f, ys[j], c));
            }
    }
    return p;
}

struct BilinearityReport
{
    bool additive_left = true;
    bool additive_right = true;
    bool balanced = true; // C(lambda x, y) = C(x, lambda y)
    std::uint64_t points = 0;
    bool ok() const { return additive_left && additive_right && balanced; }
};

/// The three bilinearity statements, over every F_q-point.
inline BilinearityReport check_bilinearity(const CommutatorPairing& p, const FiniteField& f)
{
    BilinearityReport r;
    const auto kx = p.x_space.dim(), ky = p.y_space.dim();
    std::vector<FqVector> xv, yv;
    for (std::uint64_t i = 0; i < p.x_count; ++i)
        xv.push_back(detail::vector_at(f, kx, i));
    for (std::uint64_t j = 0; j < p.y_count; ++j)
        yv.push_back(detail::vector_at(f, ky, j));
    const auto n = p.order;
    for (std::uint64_t y = 0; y < p.y_count; ++y)
        for (std::uint64_t x1 = 0; x1 < p.x_count; ++x1)
            for (std::uint64_t x2 = 0; x2 < p.x_count; ++x2) {
                ++r.points;
                const auto s = detail::index_of(f, detail::vadd(f, xv[x1], xv[x2]));
                if (p(s, y) != (p(x1, y) + p(x2, y)) % n)
                    r.additive_left = false;
            }
    for (std::uint64_t x = 0; x < p.x_count; ++x)
        for (std::uint64_t y1 = 0; y1 < p.y_count; ++y1)
            for (std::uint64_t y2 = 0; y2 < p.y_count; ++y2) {
                ++r.points;
                const auto s = detail::index_of(f, detail::vadd(f, yv[y1], yv[y2]));
                if (p(x, s) != (p(x, y1) + p(x, y2)) % n)
                    r.additive_right = false;
            }
    for (std::uint32_t l = 0; l < f.order(); ++l)
        for (std::uint64_t x = 0; x < p.x_count; ++x)
            for (std::uint64_t y = 0; y < p.y_count; ++y) {
                ++r.points;
                const auto lam = f.element(l);
                const auto lx = detail::index_of(f, detail::vscale(f, lam, xv[x]));
                const auto ly = detail::index_of(f, detail::vscale(f, lam, yv[y]));
                if (p(lx, y) != p(x, ly))
                    r.balanced = false;
            }
    return r;
}

/// Phi(x) is the functional f on V^{m-1}/V^m with C(x, y) = psi_a(f(y)).
/// Row i holds Phi(e_i) in the dual basis.
struct PhiMap
{
    std::vector<FqVector> rows;
    FieldElement psi_parameter;

    FieldElement apply(const FiniteField& f, const FqVector& x, const FqVector& y) const
    {
        auto s = f.zero();
        for (std::size_t i = 0; i < rows.size(); ++i)
            s = f.add(s, f.mul(x[i], detail::dot(f, rows[i], y)));
        return s;
    }
    bool is_zero() const
    {
        for (const auto& r : rows)
            for (const auto& x : r)
                if (x.code != 0)
                    return false;
        return true;
    }
    std::size_t rank(const FiniteField& f) const
    {
        if (rows.empty())
            return 0;
        return Subspace::span(f, rows[0].size(), rows).dim();
    }
};

inline PhiMap phi_map(const CommutatorPairing& p, const FiniteField& f, std::optional<FieldElement> psi = std::nullopt)
{
    detail::require_gutkin();
    const auto a = psi.value_or(f.one());
    if (f.is_zero(a))
        throw InvalidArgument("psi must be nontrivial");
    const auto psi_a = additive_character(f, a);
    const auto prime = f.characteristic();
    if (p.order % prime != 0 && !p.is_trivial())
        throw VerificationFailed("phi map", "pairing values are not p-th roots of unity");
    // psi_a(t) as an exponent of zeta_order
    auto as_psi = [&](FieldElement t) -> unsigned {
        return p.order % prime == 0 ? static_cast<unsigned>(psi_a.exponent(t) * (p.order / prime)) : 0u;
    };
    const auto kx = p.x_space.dim(), ky = p.y_space.dim();
    PhiMap phi{{}, a};
    for (std::size_t i = 0; i < kx; ++i) {
        FqVector ei(kx, f.zero());
        ei[i] = f.one();
        const auto xi = detail::index_of(f, ei);
        FqVector row(ky, f.zero());
        for (std::size_t j = 0; j < ky; ++j) {
            FqVector ej(ky, f.zero());
            ej[j] = f.one();
            std::optional<FieldElement> found;
            for (std::uint32_t c = 0; c < f.order() && !found; ++c) {
                bool ok = true;
                for (std::uint32_t l = 0; l < f.order() && ok; ++l) {
                    const auto lam = f.element(l);
                    ok = p(xi, detail::index_of(f, detail::vscale(f, lam, ej))) ==
                         as_psi(f.mul(lam, f.element(c)));
                }
                if (ok)
                    found = f.element(c);
            }
            if (!found)
                throw VerificationFailed("phi map", "C(e_" + std::to_string(i) + ", -) is not psi of a functional");
            row[j] = *found;
        }
        phi.rows.push_back(std::move(row));
    }
    for (std::uint64_t x = 0; x < p.x_count; ++x)
        for (std::uint64_t y = 0; y < p.y_count; ++y) {
            const auto xv = detail::vector_at(f, kx, x), yv = detail::vector_at(f, ky, y);
            if (p(x, y) != as_psi(phi.apply(f, xv, yv)))
                throw VerificationFailed("phi map", "not F-linear at x = " + detail::describe(f, xv) +
                                                        ", y = " + detail::describe(f, yv));
        }
    return phi;
}

/// Normalised direction vectors of F_q^k (first nonzero entry 1), ordered by
/// the position of that entry and then lexicographically.
inline std::vector<FqVector> projective_points(const FiniteField& f, std::size_t k)
{
    std::vector<FqVector> out;
    for (std::size_t lead = 0; lead < k; ++lead) {
        const auto tail = detail::ipow(f.order(), k - lead - 1);
        for (std::uint64_t t = 0; t < tail; ++t) {
            FqVector v(k, f.zero());
            v[lead] = f.one();
            const auto rest = detail::vector_at(f, k - lead - 1, t);
            std::copy(rest.begin(), rest.end(), v.begin() + static_cast<std::ptrdiff_t>(lead + 1));
            out.push_back(std::move(v));
        }
    }
    return out;
}

/// First line L of V^{m-1}/V^m with x -> Phi(x)|_L onto L^*; coordinates of a
/// spanning vector.
inline FqVector choose_line(const PhiMap& phi, const FiniteField& f, std::size_t y_dim)
{
    detail::require_gutkin();
    for (const auto& l : projective_points(f, y_dim))
        for (const auto& row : phi.rows)
            if (!f.is_zero(detail::dot(f, row, l)))
                return l;
    throw VerificationFailed("choose line", "Phi is zero");
}

struct Ideals
{
    Subspace a1; // preimage of ker(x -> Phi(x)(l))
    Subspace u;  // preimage of L in V^{m-1}
};

inline Ideals build_ideals(const Level& lv, const CommutatorPairing& p, const PhiMap& phi, const FqVector& line)
{
    detail::require_gutkin();
    const auto& a = lv.group.group().algebra();
    const auto& f = a.ring();
    const auto kx = p.x_space.dim();
    FqVector c(kx);
    for (std::size_t i = 0; i < kx; ++i)
        c[i] = detail::dot(f, phi.rows[i], line);
    std::size_t pivot = kx;
    for (std::size_t i = 0; i < kx && pivot == kx; ++i)
        if (!f.is_zero(c[i]))
            pivot = i;
    if (pivot == kx)
        throw VerificationFailed("build ideals", "line is annihilated by Phi");

    Subspace a1 = p.x_space.kernel();
    const auto ip = f.inv(c[pivot]);
    for (std::size_t i = 0; i < kx; ++i) {
        if (i == pivot)
            continue;
        FqVector k(kx, f.zero());
        k[i] = f.one();
        k[pivot] = f.neg(f.mul(c[i], ip));
        a1.insert(p.x_space.lift(k));
    }
    Subspace u = p.y_space.kernel();
    u.insert(p.y_space.lift(line));

    if (a1.dim() + 1 != lv.algebra.dim())
        throw VerificationFailed("build ideals", "A1 does not have codimension 1");
    if (!is_ideal_of(a, lv.algebra, a1))
        throw VerificationFailed("build ideals", "A1 is not a two-sided ideal");
    if (!is_ideal_of(a, lv.algebra, u))
        throw VerificationFailed("build ideals", "U is not a two-sided ideal");
    if (!a1.contains(u))
        throw VerificationFailed("build ideals", "U is not contained in A1");
    return {std::move(a1), std::move(u)};
}

struct ExtensionSet
{
    std::vector<LinearCharacter> extensions; // characters of 1+U restricting to zeta
    std::size_t orbit_size = 0;
    bool single_orbit = false;
    bool stabilizers_ok = false;
};

namespace detail {

inline bool agree_on(const LinearCharacter& a, const LinearCharacter& b, const std::vector<Code>& where)
{
    const auto m = std::lcm(a.order(), b.order());
    for (Code c : where)
        if (a.exponent(c) * (m / a.order()) % m != b.exponent(c) * (m / b.order()) % m)
            return false;
    return true;
}

/// chi(x u x^{-1}) = chi(u) on generators of the domain.
inline bool fixes(const LinearCharacter& chi, Code x)
{
    const auto& g = chi.domain().group();
    for (Code u : chi.domain().generators())
        if (chi.exponent(g.conj(x, u)) != chi.exponent(u))
            return false;
    return true;
}

} // namespace detail

/// All extensions of zeta from 1+V^m to 1+U, with the orbit and stabilizer checks.
inline ExtensionSet extension_set(const Level& lv, const Subspace& u, const Subspace& a1, const ScalarLevel& sl)
{
    detail::require_gutkin();
    const auto& gp = lv.group.ambient();
    const auto nu = Subgroup::from_subspace(gp, u);
    const auto derived = commutator_subgroup(nu, nu);
    for (Code c : derived.elements())
        if (sl.zeta.exponent(c) != 0)
            throw VerificationFailed("extension set", "zeta is nontrivial on (1+U, 1+U)");

    ExtensionSet es;
    for (auto& chi : linear_characters(nu))
        if (detail::agree_on(chi, sl.zeta, sl.zeta.domain().elements()))
            es.extensions.push_back(std::move(chi));
    if (es.extensions.empty())
        throw VerificationFailed("extension set", "no character of 1+U extends zeta");

    // orbit of the first extension under 1+V
    std::vector<bool> reached(es.extensions.size(), false);
    reached[0] = true;
    std::vector<std::size_t> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (Code x : lv.group.generators()) {
            const auto conj = es.extensions[queue[qi]].conjugate(x);
            bool found = false;
            for (std::size_t k = 0; k < es.extensions.size() && !found; ++k)
                if (es.extensions[k] == conj) {
                    found = true;
                    if (!reached[k]) {
                        reached[k] = true;
                        queue.push_back(k);
                    }
                }
            if (!found)
                throw VerificationFailed("extension set", "conjugate of an extension is not an extension");
        }
    es.orbit_size = queue.size();
    es.single_orbit = es.orbit_size == es.extensions.size();

    const auto h = Subgroup::from_subspace(gp, a1);
    es.stabilizers_ok = true;
    for (const auto& chi : es.extensions) {
        std::vector<Code> stab;
        for (Code x : lv.group.elements())
            if (detail::fixes(chi, x))
                stab.push_back(x);
        if (stab != h.elements())
            es.stabilizers_ok = false;
    }
    return es;
}

struct GutkinStep
{
    std::size_t algebra_dim = 0;
    ScalarLevel scalar;
    std::shared_ptr<const CommutatorPairing> pairing;
    BilinearityReport bilinearity;
    PhiMap phi;
    FqVector line;        // coordinates in V^{m-1}/V^m
    FqVector line_vector; // its representative in A
    Subspace a1, u;
    ExtensionSet extensions;
    std::size_t rho_index = 0;     // in the table of 1+A1
    std::uint64_t multiplicity = 0; // of rho in Res chi
    ClassFunction rho;
    bool mackey = false;
};

/// Ind_{1+B}^{1+A} alpha = chi, with the chain A = A_0 > A_1 > ... > A_r = B.
struct MonomialDatum
{
    std::vector<Subspace> chain;
    LinearCharacter alpha;
    std::vector<GutkinStep> steps;
    std::uint64_t degree = 1;
    bool induction_matches = false;
    bool degree_formula = false;
    bool transitivity = false;
    bool verified() const { return induction_matches && degree_formula && transitivity; }
    const Subspace& b() const { return chain.back(); }
};

class GutkinEngine
{
public:
    explicit GutkinEngine(UnitGroupPtr g) : g_(std::move(g)) {}

    const UnitGroupPtr& group() const { return g_; }

    /// Classes and table of 1+V, computed once per subalgebra.
    const Level& level(const Subspace& v)
    {
        const auto key = subspace_to_json(v).dump();
        auto it = cache_.find(key);
        if (it != cache_.end())
            return *it->second;
        auto sub = Subgroup::from_subspace(g_, v);
        auto cs = conjugacy_classes(sub);
        auto table = std::make_shared<const CharacterTable>(character_table(cs));
        auto lv = std::make_shared<Level>(Level{v, std::move(sub), std::move(cs), std::move(table)});
        return *cache_.emplace(key, std::move(lv)).first->second;
    }

    /// Makes `classes` and `table` the ones used for the whole group.
    void seed(ClassStructurePtr classes, std::shared_ptr<const CharacterTable> table)
    {
        const Subspace full = Subspace::full(g_->field(), g_->dim());
        auto lv = std::make_shared<Level>(Level{full, classes->group(), classes, std::move(table)});
        cache_[subspace_to_json(full).dump()] = std::move(lv);
    }

    const Level& top() { return level(Subspace::full(g_->field(), g_->dim())); }

    MonomialDatum decompose(const ClassFunction& chi)
    {
        detail::require_gutkin();
        if (!(chi.group().ambient() == g_) || !chi.group().is_whole())
            throw InvalidArgument("character is not on the engine's group");
        if (rational_inner_product(chi, chi) != Rational(1))
            throw InvalidArgument("character is not irreducible");
        const auto& top_level = top();
        const ClassFunction chi_top(top_level.classes, chi.values());
        auto d = decompose_in(top_level, chi_top);

        // final checks against the top group
        const auto& a = g_->algebra();
        const auto q = g_->field().order();
        d.degree = chi.integer_degree();
        d.degree_formula = d.degree == detail::ipow(q, a.dim() - d.b().dim());
        const auto& lb = level(d.b());
        const auto alpha_cf = d.alpha.as_class_function(lb.classes);
        d.induction_matches = induce(alpha_cf, top_level.classes) == chi_top;
        // Ind through every intermediate level, compared with the character found there
        d.transitivity = true;
        auto cur = alpha_cf;
        for (std::size_t i = d.chain.size() - 1; i-- > 0;) {
            const auto& li = level(d.chain[i]);
            cur = induce(cur, li.classes);
            const auto& expected = i == 0 ? chi_top : d.steps[i - 1].rho;
            if (!(cur == expected))
                d.transitivity = false;
        }
        if (!d.induction_matches)
            throw VerificationFailed("induction", "Ind alpha differs from chi");
        if (!d.degree_formula)
            throw VerificationFailed("degree formula", "deg chi = " + std::to_string(d.degree) +
                                                           " but dim A - dim B = " +
                                                           std::to_string(a.dim() - d.b().dim()));
        if (!d.transitivity)
            throw VerificationFailed("transitivity", "induction through the chain disagrees");
        return d;
    }

private:
    MonomialDatum decompose_in(const Level& lv, const ClassFunction& chi)
    {
        const auto sl = minimal_scalar_level(chi, lv);
        if (sl.m == 1)
            return MonomialDatum{{lv.algebra}, sl.zeta, {}, 1, false, false, false};

        const auto& f = g_->field();
        auto pairing = std::make_shared<const CommutatorPairing>(commutator_pairing(lv, sl));
        if (pairing->is_trivial())
            throw VerificationFailed("commutator pairing", "trivial pairing at the minimal level");
        const auto bilinearity = check_bilinearity(*pairing, f);
        if (!bilinearity.ok())
            throw VerificationFailed("commutator pairing", "bilinearity fails");
        auto phi = phi_map(*pairing, f);
        auto line = choose_line(phi, f, pairing->y_space.dim());
        auto line_vector = pairing->y_space.lift(line);
        auto ideals = build_ideals(lv, *pairing, phi, line);
        auto ext = extension_set(lv, ideals.u, ideals.a1, sl);
        if (!ext.single_orbit)
            throw VerificationFailed("extension set", "extensions form more than one orbit");
        if (!ext.stabilizers_ok)
            throw VerificationFailed("extension set", "stabilizer differs from 1+A1");

        const auto& h = level(ideals.a1);
        const auto res = restrict_to(chi, h.classes);
        std::optional<std::size_t> rho_index;
        Rational mult(0);
        for (std::size_t i = 0; i < h.table->size() && !rho_index; ++i) {
            mult = rational_inner_product(res, (*h.table)[i]);
            if (mult.numerator() != 0)
                rho_index = i;
        }
        if (!rho_index)
            throw VerificationFailed("constituent", "restriction to 1+A1 is zero");
        const auto& rho = (*h.table)[*rho_index];

        // rho is scalar on 1+U through one of the extensions
        const auto nu = Subgroup::from_subspace(g_, ideals.u);
        const auto on_u = scalar_on(rho, nu);
        if (!on_u || std::none_of(ext.extensions.begin(), ext.extensions.end(), [&](const LinearCharacter& e) {
                return detail::agree_on(e, *on_u, nu.elements());
            }))
            throw VerificationFailed("constituent", "rho is not scalar on 1+U through an extension of zeta");
        if (!mackey_irreducible(rho, lv.classes))
            throw VerificationFailed("Mackey criterion", "Ind rho is reducible");
        if (!(induce(rho, lv.classes) == chi))
            throw VerificationFailed("induction", "Ind rho differs from chi");

        GutkinStep st{lv.algebra.dim(), sl, std::move(pairing), bilinearity, std::move(phi),
                      std::move(line), std::move(line_vector), std::move(ideals.a1), std::move(ideals.u),
                      std::move(ext), *rho_index, static_cast<std::uint64_t>(mult.numerator()), rho, true};
        auto sub = decompose_in(h, rho);
        sub.chain.insert(sub.chain.begin(), lv.algebra);
        sub.steps.insert(sub.steps.begin(), std::move(st));
        return sub;
    }

    UnitGroupPtr g_;
    std::map<std::string, std::shared_ptr<Level>> cache_;
};

// ---------------------------------------------------------------------------
// Reports

inline nlohmann::json datum_to_json(const MonomialDatum& d, const FiniteField& f)
{
    using nlohmann::json;
    const auto& g = d.alpha.domain().group();
    json chain = json::array();
    for (const auto& s : d.chain)
        chain.push_back(subspace_to_json(s));
    json alpha = json::array();
    for (Code c : d.alpha.domain().generators())
        alpha.push_back({{"element", vector_to_json(f, g.decode(c))},
                         {"value", d.alpha(c).to_string()}});
    json steps = json::array();
    for (const auto& st : d.steps) {
        json zeta = json::array();
        for (Code c : st.scalar.zeta.domain().generators())
            zeta.push_back({{"element", vector_to_json(f, g.decode(c))},
                            {"value", st.scalar.zeta(c).to_string()}});
        json phi = json::array();
        for (const auto& r : st.phi.rows)
            phi.push_back(vector_to_json(f, r));
        steps.push_back({{"m", st.scalar.m},
                         {"zeta", zeta},
                         {"phi", phi},
                         {"line", vector_to_json(f, st.line_vector)},
                         {"dims", {{"algebra", st.algebra_dim}, {"a1", st.a1.dim()}, {"u", st.u.dim()}}},
                         {"bilinearity_points", st.bilinearity.points},
                         {"extensions", st.extensions.extensions.size()},
                         {"rho", st.rho_index},
                         {"multiplicity", st.multiplicity}});
    }
    return {{"degree", d.degree},
            {"dim_b", d.b().dim()},
            {"chain", chain},
            {"alpha", alpha},
            {"transcript", steps},
            {"verified", d.verified()}};
}

struct GutkinReport
{
    std::vector<std::uint64_t> degrees;
    std::vector<MonomialDatum> data;
    bool degrees_are_powers_of_q = true;
    bool all_verified() const
    {
        return degrees_are_powers_of_q &&
               std::all_of(data.begin(), data.end(), [](const MonomialDatum& d) { return d.verified(); });
    }
};

inline bool is_power_of(std::uint64_t d, std::uint64_t q)
{
    while (d > 1 && d % q == 0)
        d /= q;
    return d == 1;
}

/// Decomposes every irreducible of the oracle table.
inline GutkinReport verify_gutkin_all(const UnitGroupPtr& g)
{
    detail::require_gutkin();
    GutkinEngine engine(g);
    const auto& top = engine.top();
    GutkinReport r;
    for (const auto& chi : top.table->characters) {
        r.data.push_back(engine.decompose(chi));
        r.degrees.push_back(chi.integer_degree());
        if (!is_power_of(r.degrees.back(), g->field().order()))
            r.degrees_are_powers_of_q = false;
    }
    return r;
}

} // namespace nilchar

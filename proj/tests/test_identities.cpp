#include <gtest/gtest.h>

#include <random>

#include "nilchar/catalog.hpp"
#include "nilchar/identities.hpp"
#include "nilchar/linear_characters.hpp"

using namespace nilchar;

namespace {

using ZAlg = WordAlgebra<IntegerRing>;

ZAlg xy(int n) { return ZAlg(IntegerRing{}, {"x", "y", "z"}, n); }

} // namespace

TEST(WordAlgebra, Arithmetic)
{
    const auto a = xy(4);
    EXPECT_EQ(a.dimension(), 3u + 9u + 27u);
    const auto x = a.generator(0), y = a.generator(1);
    // (1+x)^{-1} = 1 - x + x^2 - x^3, truncated at class 4
    EXPECT_EQ(a.format(a.unit_inv(x)), "(-1)x + (1)xx + (-1)xxx");
    EXPECT_TRUE(a.unit_mul(x, a.unit_inv(x)).empty());
    EXPECT_TRUE(a.mul(a.mul(x, y), a.mul(x, y)).empty());
    EXPECT_EQ(a.lowest_degree(a.mul(x, y)), 2);
    EXPECT_EQ(a.lowest_degree(a.zero()), 4);
    EXPECT_THROW(ZAlg(IntegerRing{}, {"x", "y"}, 10, 400), CapExceeded);
}

TEST(WordAlgebra, CommutatorClosedForm)
{
    // beta(1+x, 1+y) - 1 = [x, y] (1+x)^{-1} (1+y)^{-1}
    const auto a = xy(5);
    std::mt19937_64 rng(11);
    auto random_element = [&] {
        ZAlg::Element e;
        for (int t = 0; t < 4; ++t) {
            ZAlg::Word w;
            const auto len = 1 + rng() % 2;
            for (std::size_t i = 0; i < len; ++i)
                w.push_back(static_cast<std::uint8_t>(rng() % 3));
            e = a.add(e, a.word(w, BigInt(static_cast<long long>(rng() % 7) - 3)));
        }
        return e;
    };
    for (int t = 0; t < 10; ++t) {
        const auto x = random_element(), y = random_element();
        // (1+u)(1+v) - 1 = u + v + uv, so [x,y](1+x)^{-1}(1+y)^{-1} = c + c*ix + c*iy + c*ix*iy
        const auto c = a.bracket(x, y);
        const auto ix = a.unit_inv(x), iy = a.unit_inv(y);
        const auto rhs = a.add(a.add(c, a.mul(c, ix)), a.add(a.mul(c, iy), a.mul(a.mul(c, ix), iy)));
        EXPECT_EQ(a.unit_comm(x, y), rhs);
    }
}

TEST(Identities, LemmaHoldsOnGrid)
{
    for (std::size_t g = 1; g <= 3; ++g)
        for (int n = 2; n <= 5; ++n)
            for (int m = 2; m <= 5; ++m) {
                const auto r = lemma_auxiliary_check(g, n, m);
                EXPECT_FALSE(r.skipped) << g << n << m;
                EXPECT_TRUE(r.passed) << r.to_json().dump();
                EXPECT_EQ(r.cases, g * detail::power_of(g, static_cast<std::size_t>(m - 1)));
            }
}

TEST(Identities, LemmaNeedsLongEnoughY)
{
    // m = 3 in class 4 but y of length 1: the residual survives in degree 3
    ZAlg a(IntegerRing{}, {"x", "y"}, 4);
    const auto x = a.generator(0), y = a.generator(1);
    const auto residual = a.sub(a.unit_comm(x, y), a.bracket(x, y));
    EXPECT_EQ(a.lowest_degree(residual), 3);
    // degree-3 part is -[x, y](x + y)
    EXPECT_EQ(a.below(residual, 4), a.neg(a.mul(a.bracket(x, y), a.add(x, y))));
}

TEST(Identities, AdditivityDefect)
{
    for (int m = 2; m <= 3; ++m) {
        const auto r = additivity_defect_check(m);
        EXPECT_TRUE(r.passed) << r.to_json().dump();
        EXPECT_EQ(r.params["n"], m + 2);
    }
    const auto capped = additivity_defect_check(4);
    EXPECT_TRUE(capped.skipped);
    EXPECT_EQ(capped.to_json()["status"], "skipped");
}

TEST(Identities, AdditivityDefectWithRaisedCap)
{
    const auto r = additivity_defect_check(4, 800);
    EXPECT_FALSE(r.skipped);
    EXPECT_EQ(r.params["n"], 5);
    EXPECT_TRUE(r.passed) << r.to_json().dump();
}

TEST(Identities, AdditivityDefectDegenerateCases)
{
    ZAlg a(IntegerRing{}, {"x1", "x2", "a1", "a2"}, 5);
    const auto y = a.mul(a.generator(2), a.generator(3));
    EXPECT_TRUE(additivity_defect(a, a.generator(0), a.zero(), y).empty());
    EXPECT_TRUE(additivity_defect(a, a.zero(), a.generator(1), y).empty());
    // y of length one: the defect starts in degree 3, below m+1 = 4
    const auto d = additivity_defect(a, a.generator(0), a.generator(1), a.generator(2));
    EXPECT_EQ(a.lowest_degree(d), 3);
    // degree-3 part is -[x1, a1] x2 - [x2, a1] x1
    const auto x1 = a.generator(0), x2 = a.generator(1), a1 = a.generator(2);
    const auto expected = a.neg(a.add(a.mul(a.bracket(x1, a1), x2), a.mul(a.bracket(x2, a1), x1)));
    EXPECT_EQ(a.below(d, 4), expected);
}

TEST(Identities, ScalingDefect)
{
    for (int m = 2; m <= 4; ++m) {
        const auto r = scaling_defect_check(m);
        EXPECT_FALSE(r.skipped);
        EXPECT_TRUE(r.passed) << r.to_json().dump();
    }
}

TEST(Identities, ScalingDefectSpecializations)
{
    const int m = 3;
    WordAlgebra<PolynomialRing> a(PolynomialRing{}, {"x", "a1", "a2"}, 5);
    const auto x = a.generator(0);
    const auto y = a.mul(a.generator(1), a.generator(2));
    const auto d = scaling_defect(a, a.ring().lambda(), x, y);
    EXPECT_FALSE(d.empty()); // not identically 1 over Z[lambda]
    EXPECT_GE(a.lowest_degree(d), m + 1);
    for (long long at : {0, 1}) {
        for (const auto& [w, c] : d)
            EXPECT_TRUE(c.evaluate(BigInt(at)).is_zero()) << a.word_name(w) << " at " << at;
    }
    // lambda = 2 by direct computation over Z agrees with evaluating at 2
    ZAlg z(IntegerRing{}, {"x", "a1", "a2"}, 5);
    const auto dz = scaling_defect(z, BigInt(2), z.generator(0), z.mul(z.generator(1), z.generator(2)));
    ZAlg::Element evaluated;
    for (const auto& [w, c] : d)
        evaluated = z.add(evaluated, z.word(w, c.evaluate(BigInt(2))));
    EXPECT_EQ(dz, evaluated);
}

TEST(Identities, FinitePairingOnCatalog)
{
    for (const auto& e : builtin_catalog()) {
        const auto g = make_unit_group(e.build());
        for (int m = 2; m <= g->algebra().nilpotence_class(); ++m) {
            const auto r = finite_pairing_check(g, m);
            EXPECT_TRUE(r.ok()) << e.name << " " << r.to_json().dump();
            EXPECT_TRUE(r.exhaustive);
        }
    }
}

TEST(Identities, PairingQuotientOrders)
{
    // ul(3,q): 1+A^2 is central so Q = 1+A^2, and A^3 = 0
    for (unsigned q : {2u, 3u, 4u}) {
        const auto g = make_unit_group(ul(3, q));
        EXPECT_EQ(pairing_quotient(g, 2).order(), q);
        EXPECT_EQ(pairing_quotient(g, 3).order(), 1u);
    }
    // ul(4,q), m = 2: (1+A, 1+A^2) = 1+A^3, so Q = (1+A^2)/(1+A^3) of order q^2
    for (unsigned q : {2u, 3u}) {
        const auto g = make_unit_group(ul(4, q));
        EXPECT_EQ(pairing_quotient(g, 2).order(), q * q);
        EXPECT_EQ(pairing_quotient(g, 2).k, power_subgroup(g, 3));
    }
}

TEST(Identities, PairingSampledPathAgrees)
{
    const auto g = make_unit_group(free_algebra(2, 2, 4));
    const auto r = finite_pairing_check(g, 2);
    EXPECT_FALSE(r.exhaustive);
    EXPECT_TRUE(r.ok()) << r.to_json().dump();
    EXPECT_TRUE(finite_pairing_check(g, 3).ok());
}

TEST(Identities, CharacterPairing)
{
    const auto g = make_unit_group(ul(4, 2));
    for (int m = 2; m <= 4; ++m) {
        const auto am = power_subgroup(g, m);
        std::size_t invariant = 0;
        for (const auto& zeta : linear_characters(am)) {
            const auto r = character_pairing_check(g, m, zeta);
            if (r.invariant) {
                ++invariant;
                EXPECT_TRUE(r.bilinear);
            }
        }
        // invariant characters are those of Q
        EXPECT_EQ(invariant, pairing_quotient(g, m).order());
    }
}

TEST(Identities, HalasiExplorer)
{
    for (int k = 2; k <= 3; ++k) {
        const auto r = halasi_explore(2, 2, 3, k);
        EXPECT_TRUE(r.contains) << r.to_json().dump();
        EXPECT_LE(r.rhs_order, r.lhs_order);
    }
    const auto r = halasi_explore(2, 2, 4, 3);
    EXPECT_TRUE(r.contains) << r.to_json().dump();
    EXPECT_THROW(halasi_explore(2, 2, 3, 4), InvalidArgument);
    EXPECT_THROW(halasi_explore(2, 2, 6, 3), CapExceeded);
}

#include <gtest/gtest.h>

#include <vector>

#include "nilchar/exactfield.hpp"

using namespace nilchar;

namespace {

// Schoolbook product of coefficient vectors reduced by a monic modulus,
// independent of the log tables used by FiniteField.
std::vector<unsigned> slow_mul(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                               const std::vector<unsigned>& modulus, unsigned p)
{
    const std::size_t k = modulus.size() - 1;
    std::vector<unsigned> r(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    for (std::size_t d = r.size(); d-- > k;) {
        const unsigned c = r[d];
        if (!c)
            continue;
        for (std::size_t i = 0; i <= k; ++i)
            r[d - k + i] = (r[d - k + i] + p * p - c * modulus[i]) % p;
    }
    r.resize(k);
    return r;
}

std::vector<FiniteField> small_fields()
{
    std::vector<FiniteField> out;
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{
             {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2}})
        out.push_back(FiniteField::make(p, k));
    return out;
}

} // namespace

TEST(FiniteField, PrimeFields)
{
    auto f2 = FiniteField::make(2, 1);
    EXPECT_EQ(f2.order(), 2u);
    EXPECT_EQ(f2.add(f2.one(), f2.one()), f2.zero());
    auto f3 = FiniteField::make(3, 1);
    EXPECT_EQ(f3.inv(f3.from_int(2)), f3.from_int(2));
    EXPECT_THROW(f3.inv(f3.zero()), DivisionByZero);
}

TEST(FiniteField, ModulusIsOnlyIrreducibleQuadraticOverF2)
{
    // monic quadratics x^2 + b x + c over Z/2 with no root
    std::vector<std::vector<unsigned>> irreducible;
    for (unsigned c = 0; c < 2; ++c)
        for (unsigned b = 0; b < 2; ++b) {
            bool root = false;
            for (unsigned x = 0; x < 2; ++x)
                root = root || (x * x + b * x + c) % 2 == 0;
            if (!root)
                irreducible.push_back({c, b, 1});
        }
    ASSERT_EQ(irreducible.size(), 1u);
    EXPECT_EQ(FiniteField::make(2, 2).modulus(), irreducible[0]);
    EXPECT_EQ(FiniteField::make(2, 2).modulus(), (std::vector<unsigned>{1, 1, 1}));
}

TEST(FiniteField, Gf4Arithmetic)
{
    auto f = FiniteField::make(2, 2);
    const auto x = f.parse("a");
    EXPECT_EQ(f.mul(x, x), f.parse("a+1"));
    EXPECT_EQ(f.trace(f.one()), 0u);
    EXPECT_EQ(f.trace(x), 1u);
    EXPECT_EQ(f.format(f.mul(x, x)), "a+1");
}

TEST(FiniteField, RejectsBadParameters)
{
    EXPECT_THROW(FiniteField::make(4, 1), NotPrime);
    EXPECT_THROW(FiniteField::make(2, 17), CapExceeded);
    EXPECT_THROW(FiniteField::with_modulus(2, {1, 0, 1}), InvalidArgument);
}

TEST(FiniteField, MultiplicationMatchesPolynomialReduction)
{
    for (const auto& f : small_fields()) {
        if (f.order() > 64)
            continue;
        for (std::uint32_t a = 0; a < f.order(); ++a)
            for (std::uint32_t b = 0; b < f.order(); ++b) {
                const auto expect = slow_mul(f.coeffs({a}), f.coeffs({b}), f.modulus(), f.characteristic());
                ASSERT_EQ(f.coeffs(f.mul({a}, {b})), expect) << f.order() << " " << a << " " << b;
            }
    }
}

TEST(FiniteField, FieldAxiomsExhaustive)
{
    for (const auto& f : small_fields()) {
        if (f.order() > 27)
            continue;
        const auto q = f.order();
        for (std::uint32_t a = 0; a < q; ++a) {
            if (a)
                ASSERT_EQ(f.mul({a}, f.inv({a})), f.one());
            ASSERT_EQ(f.add({a}, f.neg({a})), f.zero());
            for (std::uint32_t b = 0; b < q; ++b)
                for (std::uint32_t c = 0; c < q; ++c) {
                    ASSERT_EQ(f.mul({a}, f.add({b}, {c})), f.add(f.mul({a}, {b}), f.mul({a}, {c})));
                    ASSERT_EQ(f.mul(f.mul({a}, {b}), {c}), f.mul({a}, f.mul({b}, {c})));
                }
        }
    }
}

TEST(FiniteField, FrobeniusIsAdditive)
{
    for (const auto& f : small_fields())
        for (std::uint32_t a = 0; a < f.order(); ++a)
            for (std::uint32_t b = 0; b < f.order(); ++b)
                ASSERT_EQ(f.frobenius(f.add({a}, {b})), f.add(f.frobenius({a}), f.frobenius({b})));
}

TEST(FiniteField, TraceIsSumOfConjugates)
{
    for (const auto& f : small_fields())
        for (std::uint32_t a = 0; a < f.order(); ++a) {
            FieldElement sum = f.zero(), conj{a};
            for (unsigned i = 0; i < f.degree(); ++i) {
                sum = f.add(sum, conj);
                conj = f.frobenius(conj);
            }
            ASSERT_EQ(sum, f.from_int(f.trace({a})));
        }
}

TEST(FiniteField, FormatParseRoundTrip)
{
    for (const auto& f : small_fields())
        for (std::uint32_t a = 0; a < f.order(); ++a)
            ASSERT_EQ(f.parse(f.format({a})), FieldElement{a});
}

TEST(AdditiveCharacter, Values)
{
    auto f2 = FiniteField::make(2, 1);
    EXPECT_EQ(additive_character(f2, f2.one())(f2.one()), Cyclotomic(-1));
    auto f3 = FiniteField::make(3, 1);
    EXPECT_EQ(additive_character(f3, f3.one())(f3.one()), Cyclotomic::root_of_unity(3));
    auto f9 = FiniteField::make(3, 2);
    for (std::uint32_t x = 0; x < 9; ++x)
        EXPECT_EQ(additive_character(f9, f9.zero())({x}), Cyclotomic(1));
}

TEST(AdditiveCharacter, CharacterSumsAndHomomorphism)
{
    for (const auto& f : small_fields()) {
        for (std::uint32_t a = 0; a < f.order(); ++a) {
            const auto psi = additive_character(f, {a});
            Cyclotomic sum;
            for (std::uint32_t x = 0; x < f.order(); ++x)
                sum += psi({x});
            ASSERT_EQ(sum, Cyclotomic(a == 0 ? static_cast<std::int64_t>(f.order()) : 0));
            if (f.order() <= 16)
                for (std::uint32_t x = 0; x < f.order(); ++x)
                    for (std::uint32_t y = 0; y < f.order(); ++y)
                        ASSERT_EQ(psi(f.add({x}, {y})), psi({x}) * psi({y}));
        }
    }
}

TEST(AdditiveCharacter, ParameterMapIsInjective)
{
    for (const auto& f : small_fields()) {
        if (f.order() > 49)
            continue;
        std::vector<std::vector<unsigned>> seen;
        for (std::uint32_t a = 0; a < f.order(); ++a) {
            std::vector<unsigned> values;
            for (std::uint32_t x = 0; x < f.order(); ++x)
                values.push_back(additive_character(f, {a}).exponent({x}));
            for (const auto& s : seen)
                ASSERT_NE(s, values);
            seen.push_back(values);
        }
    }
}

TEST(Cyclotomic, BasicIdentities)
{
    const auto z4 = Cyclotomic::root_of_unity(4);
    EXPECT_EQ(z4 * z4, Cyclotomic(-1));
    const auto z3 = Cyclotomic::root_of_unity(3);
    EXPECT_TRUE((Cyclotomic(1) + z3 + z3 * z3).is_zero());
    EXPECT_EQ(conj(Cyclotomic::root_of_unity(8)), Cyclotomic::root_of_unity(8, 7));
    EXPECT_EQ(Cyclotomic::root_of_unity(6, 3), Cyclotomic(-1));
    EXPECT_EQ(Cyclotomic::root_of_unity(8, 2), Cyclotomic::root_of_unity(4));
}

TEST(Cyclotomic, Rendering)
{
    EXPECT_EQ(Cyclotomic(-1).to_string(), "-1");
    EXPECT_EQ(Cyclotomic::root_of_unity(3, 2).to_string(), "zeta3^2");
    EXPECT_EQ((Cyclotomic::root_of_unity(4) * Rational(1, 2)).to_string(), "1/2*zeta4");
    EXPECT_EQ(Cyclotomic::root_of_unity(9, 4).root_of_unity_exponent(9), 4);
    EXPECT_FALSE(Cyclotomic(2).root_of_unity_exponent(4).has_value());
}

TEST(Cyclotomic, ProductAgreesWithUnreducedConvolution)
{
    // u, v given as dense exponent vectors mod x^N - 1; multiplying those first and
    // reducing afterwards must agree with reducing first.
    for (int n : {1, 2, 3, 4, 8, 9, 12, 16, 27}) {
        for (int s = 0; s < 12; ++s) {
            std::vector<Rational> u(n, Rational(0)), v(n, Rational(0)), uv(n, Rational(0));
            for (int e = 0; e < n; ++e) {
                u[e] = Rational((e * 7 + s * 3) % 5 - 2, 1 + (e + s) % 3);
                v[e] = Rational((e * 5 + s) % 7 - 3);
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    uv[(i + j) % n] += u[i] * v[j];
            const auto a = Cyclotomic::from_exponents(n, u), b = Cyclotomic::from_exponents(n, v);
            ASSERT_EQ(a * b, Cyclotomic::from_exponents(n, uv)) << n;
            ASSERT_EQ((a * b).embed(2 * n), a.embed(2 * n) * b.embed(2 * n));
            ASSERT_EQ((a + b).embed(3 * n), a.embed(3 * n) + b.embed(3 * n));
            ASSERT_EQ(conj(a * b), conj(a) * conj(b));
        }
    }
}

TEST(Cyclotomic, MixedOrders)
{
    const auto z3 = Cyclotomic::root_of_unity(3), z4 = Cyclotomic::root_of_unity(4);
    EXPECT_EQ(z3 * z4, Cyclotomic::root_of_unity(12, 7));
    EXPECT_EQ(z3 + z4 - z4, z3);
    EXPECT_EQ(compare(z3, z3.embed(12)), 0);
}

#include <gtest/gtest.h>

#include "nilchar/catalog.hpp"
#include "nilchar/io.hpp"
#include "nilchar/subspace.hpp"

using namespace nilchar;

namespace {

const FiniteField& f2()
{
    static const FiniteField f = FiniteField::make(2, 1);
    return f;
}

FqVector vec(std::initializer_list<unsigned> codes)
{
    FqVector v;
    for (auto c : codes)
        v.push_back({c});
    return v;
}

std::vector<std::pair<std::string, FqAlgebra>> catalog_algebras()
{
    std::vector<std::pair<std::string, FqAlgebra>> out;
    for (const auto& e : builtin_catalog())
        out.emplace_back(e.name, e.build());
    return out;
}

} // namespace

TEST(Algebra, FromStructureConstants)
{
    auto ul3 = FqAlgebra::from_structure_constants(f2(), 3, {{0, 1, 2, f2().one()}}, {"e12", "e23", "e13"});
    EXPECT_EQ(ul3.nilpotence_class(), 3);
    EXPECT_THROW(FqAlgebra::from_structure_constants(f2(), 1, {{0, 0, 0, f2().one()}}), NotNilpotent);
    EXPECT_EQ(FqAlgebra::from_structure_constants(f2(), 1, {}).nilpotence_class(), 2);
    // e1 e1 = e2, e2 e1 = e1 is not associative
    EXPECT_THROW(FqAlgebra::from_structure_constants(f2(), 2, {{0, 0, 1, f2().one()}, {1, 0, 0, f2().one()}}),
                 NotAssociative);
    EXPECT_THROW(FqAlgebra::from_structure_constants(f2(), 2, {{0, 5, 1, f2().one()}}), InvalidArgument);
}

TEST(Algebra, UpperTriangular)
{
    EXPECT_EQ(ul(2, 2).dim(), 1u);
    EXPECT_EQ(power_ideal(ul(2, 2), 2).dim(), 0u);
    auto a = ul(3, 2);
    EXPECT_EQ(a.dim(), 3u);
    EXPECT_EQ(a.nilpotence_class(), 3);
    EXPECT_EQ(a.labels(), (std::vector<std::string>{"e12", "e23", "e13"}));
    EXPECT_EQ(power_ideal(a, 2), Subspace::span(f2(), 3, {vec({0, 0, 1})}));
    auto b = ul(4, 2);
    EXPECT_EQ(b.dim(), 6u);
    EXPECT_EQ(b.nilpotence_class(), 4);
    EXPECT_EQ(power_ideal(b, 3).dim(), 1u);
    EXPECT_TRUE(power_ideal(b, 3).contains(b.basis(5)));
    // the trusted class agrees with the validating constructor
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned n : {2u, 3u, 4u}) {
            auto u = ul(n, q);
            auto checked = FqAlgebra::from_structure_constants(u.ring(), u.dim(), u.structure_constants());
            EXPECT_EQ(checked.nilpotence_class(), static_cast<int>(n));
        }
}

TEST(Algebra, ProductsAndBrackets)
{
    auto a = ul(3, 2);
    EXPECT_EQ(a.bracket(a.basis(0), a.basis(1)), a.basis(2));
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_TRUE(a.is_zero(a.bracket(a.basis(i), a.basis(i))));

    auto fz = free_nilpotent(IntegerRing{}, {"x", "y"}, 3);
    const auto& z = fz.algebra;
    EXPECT_EQ(z.dim(), 6u);
    EXPECT_EQ(z.labels(), (std::vector<std::string>{"x", "y", "xx", "xy", "yx", "yy"}));
    auto br = z.bracket(z.basis(0), z.basis(1));
    auto expect = z.zero();
    expect[fz.index_of({0, 1})] = 1;
    expect[fz.index_of({1, 0})] = -1;
    EXPECT_EQ(br, expect);

    auto fx = free_nilpotent(IntegerRing{}, {"x"}, 4);
    EXPECT_EQ(fx.algebra.dim(), 3u);
    EXPECT_EQ(fx.algebra.mul(fx.algebra.basis(0), fx.algebra.basis(1)), fx.algebra.basis(2));
    EXPECT_TRUE(fx.algebra.is_zero(fx.algebra.mul(fx.algebra.basis(1), fx.algebra.basis(1))));

    auto ff = free_algebra(2, 2, 3);
    EXPECT_EQ(ff.dim(), 6u);
    EXPECT_EQ(ff.labels(), z.labels());
    EXPECT_THROW(free_nilpotent(IntegerRing{}, {"a", "b", "c"}, 7), CapExceeded);
}

TEST(Algebra, JacobiIdentity)
{
    for (const auto& [name, a] : catalog_algebras()) {
        if (a.dim() > 6)
            continue;
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                for (std::size_t k = 0; k < a.dim(); ++k) {
                    const auto x = a.basis(i), y = a.basis(j), z = a.basis(k);
                    auto s = a.add(a.bracket(x, a.bracket(y, z)), a.bracket(y, a.bracket(z, x)));
                    s = a.add(s, a.bracket(z, a.bracket(x, y)));
                    ASSERT_TRUE(a.is_zero(s)) << name;
                }
    }
}

TEST(Subspaces, Closures)
{
    auto a = ul(3, 2);
    EXPECT_EQ(subalgebra_closure(a, {a.basis(0)}), Subspace::span(f2(), 3, {a.basis(0)}));
    EXPECT_EQ(subalgebra_closure(a, {a.basis(0), a.basis(1), a.basis(2)}).dim(), 3u);
    EXPECT_EQ(ideal_closure(a, {a.basis(0)}), Subspace::span(f2(), 3, {a.basis(0), a.basis(2)}));
    for (const auto& [name, b] : catalog_algebras()) {
        const std::vector<FqVector> seed{b.basis(0)};
        auto s = subalgebra_closure(b, seed);
        EXPECT_EQ(subalgebra_closure(b, s.basis()), s) << name;
        auto i = ideal_closure(b, seed);
        EXPECT_EQ(ideal_closure(b, i.basis()), i) << name;
        EXPECT_TRUE(is_two_sided_ideal(b, i)) << name;
        EXPECT_TRUE(i.contains(s)) << name;
    }
}

TEST(Subspaces, EchelonFormIsCanonical)
{
    auto f = FiniteField::make(3, 1);
    auto s1 = Subspace::span(f, 3, {vec({1, 2, 0}), vec({0, 1, 1})});
    auto s2 = Subspace::span(f, 3, {vec({1, 0, 1}), vec({1, 1, 2})});
    EXPECT_EQ(s1.basis(), s2.basis());
    EXPECT_EQ(s1.cardinality(), 9u);
    EXPECT_TRUE(s1.contains(vec({2, 1, 0})));
    EXPECT_FALSE(s1.contains(vec({0, 0, 1})));
}

TEST(Subspaces, PowerIdealsMultiply)
{
    for (const auto& [name, a] : catalog_algebras()) {
        const int n = a.nilpotence_class();
        EXPECT_EQ(power_ideal(a, 1).dim(), a.dim());
        EXPECT_EQ(power_ideal(a, n).dim(), 0u) << name;
        EXPECT_GT(power_ideal(a, n - 1).dim(), 0u) << name;
        for (int m = 1; m <= n; ++m) {
            const auto am = power_ideal(a, m);
            EXPECT_TRUE(is_two_sided_ideal(a, am)) << name;
            EXPECT_TRUE(am.contains(power_ideal(a, m + 1))) << name;
            for (int k = 1; m + k <= n + 1; ++k) {
                const auto ak = power_ideal(a, k), amk = power_ideal(a, m + k);
                for (const auto& x : am.basis())
                    for (const auto& y : ak.basis())
                        ASSERT_TRUE(amk.contains(a.mul(x, y))) << name << " " << m << " " << k;
            }
        }
    }
}

TEST(Quotients, Basics)
{
    auto a = ul(3, 2);
    auto q = quotient_algebra(a, power_ideal(a, 2));
    EXPECT_EQ(q.algebra.dim(), 2u);
    EXPECT_TRUE(q.algebra.structure_constants().empty());
    EXPECT_EQ(quotient_algebra(a, Subspace::full(f2(), 3)).algebra.dim(), 0u);
    auto same = quotient_algebra(a, Subspace(f2(), 3));
    EXPECT_EQ(same.algebra.dim(), 3u);
    EXPECT_EQ(same.algebra.structure_constants().size(), a.structure_constants().size());
    EXPECT_THROW(quotient_algebra(a, Subspace::span(f2(), 3, {a.basis(0)})), NotAnIdeal);
}

TEST(Quotients, ProjectionIsMultiplicativeAndCommutesWithPowers)
{
    for (const auto& [name, a] : catalog_algebras()) {
        const int n = a.nilpotence_class();
        for (int k = 2; k <= n; ++k) {
            auto q = quotient_algebra(a, power_ideal(a, k));
            EXPECT_EQ(q.algebra.dim(), a.dim() - power_ideal(a, k).dim());
            for (std::size_t i = 0; i < a.dim(); ++i)
                for (std::size_t j = 0; j < a.dim(); ++j)
                    ASSERT_EQ(q.projection(a.mul(a.basis(i), a.basis(j))),
                              q.algebra.mul(q.projection(a.basis(i)), q.projection(a.basis(j))))
                        << name;
            for (int m = 1; m <= n; ++m) {
                std::vector<FqVector> img;
                const auto am = power_ideal(a, m);
                for (const auto& v : am.basis())
                    img.push_back(q.projection(v));
                EXPECT_EQ(power_ideal(q.algebra, m), Subspace::span(a.ring(), q.algebra.dim(), img))
                    << name << " k=" << k << " m=" << m;
            }
        }
    }
}

TEST(FreeNilpotent, UniversalProperty)
{
    // X -> targets extends to a multiplicative linear map on the word basis.
    auto fz = free_nilpotent(FiniteField::make(2, 1), {"x", "y"}, 4);
    for (const auto& [name, b] : catalog_algebras()) {
        if (b.nilpotence_class() > 4)
            continue;
        const std::vector<FqVector> targets{b.basis(0), b.basis(b.dim() > 1 ? 1 : 0)};
        if (!(b.ring() == fz.algebra.ring()))
            continue;
        std::vector<FqVector> images;
        for (const auto& w : fz.words) {
            FqVector img = targets[w[0]];
            for (std::size_t t = 1; t < w.size(); ++t)
                img = b.mul(img, targets[w[t]]);
            images.push_back(img);
        }
        for (std::size_t i = 0; i < fz.words.size(); ++i)
            for (std::size_t j = 0; j < fz.words.size(); ++j) {
                const auto prod = fz.algebra.mul(fz.algebra.basis(i), fz.algebra.basis(j));
                FqVector lhs = b.zero();
                for (std::size_t k = 0; k < prod.size(); ++k)
                    if (prod[k].code != 0)
                        lhs = b.add(lhs, images[k]);
                ASSERT_EQ(lhs, b.mul(images[i], images[j])) << name;
            }
    }
}

TEST(Json, RoundTrip)
{
    for (const auto& [name, a] : catalog_algebras()) {
        const auto j = algebra_to_json(a);
        const auto back = fq_algebra_from_json(j);
        EXPECT_EQ(algebra_to_json(back).dump(), j.dump()) << name;
        EXPECT_EQ(back.nilpotence_class(), a.nilpotence_class());
    }
    auto pz = free_nilpotent(PolynomialRing{}, {"x"}, 3);
    auto j = algebra_to_json(pz.algebra);
    EXPECT_EQ(j["ring"]["kind"], "integer-polynomials");
    auto back = algebra_from_json(PolynomialRing{}, j);
    EXPECT_EQ(algebra_to_json(back), j);
    EXPECT_THROW(fq_algebra_from_json(json::parse(R"({"ring":{"kind":"finite-field","p":2,"k":1},"dim":1,
        "sc":[[0,0,0,"1"]]})")),
                 NotNilpotent);
}

TEST(Catalog, Entries)
{
    auto cat = builtin_catalog();
    ASSERT_EQ(cat.size(), 6u);
    EXPECT_EQ(cat[0].name, "ul(3,2)");
    for (const auto& e : cat)
        EXPECT_EQ(algebra_to_json(e.build()).dump(), algebra_to_json(e.build()).dump());
    EXPECT_EQ(resolve_target("ul(4,2)").dim(), 6u);
    EXPECT_EQ(resolve_target("ul(4,2)").nilpotence_class(), 4);
    EXPECT_EQ(resolve_target("free(2,2,3)").dim(), 6u);
    EXPECT_THROW(resolve_target("bogus"), ParseError);
    EXPECT_THROW(resolve_target("ul(3,6)"), InvalidArgument);
}

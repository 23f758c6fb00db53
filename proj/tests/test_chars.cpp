#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "nilchar/catalog.hpp"
#include "nilchar/chars.hpp"
#include "nilchar/exactfield.hpp"

using namespace nilchar;

namespace {

FqVector vec(std::initializer_list<unsigned> codes)
{
    FqVector v;
    for (auto c : codes)
        v.push_back({c});
    return v;
}

struct Fixture
{
    UnitGroupPtr g;
    ClassStructurePtr classes;
    CharacterTable table;
};

Fixture make(const FqAlgebra& a)
{
    auto g = make_unit_group(a);
    auto cs = conjugacy_classes(Subgroup::whole(g));
    auto t = character_table(cs);
    return {g, cs, std::move(t)};
}

// Ind rho(g) = |H|^{-1} sum over x in G with x^{-1} g x in H of rho(x^{-1} g x)
ClassFunction literal_induce(const ClassFunction& rho, const ClassStructurePtr& g)
{
    const auto& grp = g->group().group();
    std::vector<Cyclotomic> values;
    for (const auto& cls : g->classes()) {
        Cyclotomic sum;
        for (Code x : g->group().elements()) {
            const Code y = grp.conj(grp.inv(x), cls.representative);
            if (rho.group().contains(y))
                sum += rho.at(y);
        }
        values.push_back(sum / Rational(static_cast<std::int64_t>(rho.group().size())));
    }
    return ClassFunction(g, values);
}

} // namespace

TEST(CharacterTable, HeisenbergGroups)
{
    for (unsigned q : {2u, 3u, 4u}) {
        auto f = make(ul(3, q));
        const auto counts = f.table.degree_counts();
        EXPECT_EQ(counts.size(), 2u) << q;
        EXPECT_EQ(counts.at(1), q * q) << q;
        EXPECT_EQ(counts.at(q), q - 1) << q;
        EXPECT_TRUE(check_table(f.table).ok());
        EXPECT_EQ(f.table.size(), f.classes->count());
    }
    auto f = make(ul(3, 2));
    EXPECT_EQ(f.table.degrees(), (std::vector<std::uint64_t>{1, 1, 1, 1, 2}));
    // trivial character first
    EXPECT_EQ(f.table[0], ClassFunction::trivial(f.classes));
}

TEST(CharacterTable, DixonPrimeChoice)
{
    auto f = make(ul(3, 3));
    // exponent 3, |G| = 27: smallest l = 1 mod 3 above 2 sqrt 27 = 10.39 is 13
    EXPECT_EQ(f.table.exponent, 3u);
    EXPECT_EQ(f.table.prime, 13u);
    EXPECT_EQ(f.table.primitive_root, 2u);
    EXPECT_EQ(detail::dixon_prime(4, 64), 17u);
    EXPECT_EQ(detail::dixon_prime(4, 64, 17), 29u);
}

TEST(CharacterTable, CatalogInvariantsAndDegreesArePowersOfQ)
{
    for (const auto& e : builtin_catalog()) {
        auto a = e.build();
        auto f = make(a);
        const auto check = check_table(f.table);
        EXPECT_TRUE(check.degree_sum) << e.name;
        EXPECT_TRUE(check.count) << e.name;
        EXPECT_TRUE(check.rows) << e.name;
        EXPECT_TRUE(check.columns) << e.name;
        const auto q = a.ring().order();
        for (auto d : f.table.degrees()) {
            auto x = d;
            while (x % q == 0)
                x /= q;
            EXPECT_EQ(x, 1u) << e.name << " degree " << d;
        }
        for (const auto& chi : f.table.characters)
            for (const auto& v : chi.values())
                EXPECT_EQ(f.table.exponent % static_cast<std::uint64_t>(v.order()), 0u);
        if (e.expected_degrees)
            EXPECT_EQ(f.table.degree_counts(), *e.expected_degrees) << e.name;
    }
}

TEST(CharacterTable, KnownDegreeMultisets)
{
    using M = std::map<std::uint64_t, std::size_t>;
    // UT_4(F_2): 16 classes
    EXPECT_EQ(make(ul(4, 2)).table.degree_counts(), (M{{1, 8}, {2, 6}, {4, 2}}));
    // class-3 free algebras: (G,G) = 1 + span{xy - yx} has order q
    EXPECT_EQ(make(free_algebra(2, 2, 3)).table.degree_counts(), (M{{1, 32}, {2, 8}}));
    EXPECT_EQ(make(free_algebra(3, 2, 3)).table.degree_counts(), (M{{1, 243}, {3, 54}}));
}

TEST(CharacterTable, AbelianGroupsGivePsiOfFunctionals)
{
    for (unsigned q : {2u, 3u, 4u}) {
        auto fld = field_of_order(q);
        auto a = FqAlgebra::from_structure_constants(fld, 2, {});
        auto f = make(a);
        ASSERT_EQ(f.table.size(), q * q);
        // x -> psi(f1 x1 + f2 x2) for all (f1, f2)
        std::set<std::vector<std::string>> expected, got;
        for (std::uint32_t f1 = 0; f1 < q; ++f1)
            for (std::uint32_t f2 = 0; f2 < q; ++f2) {
                std::vector<std::string> row;
                for (const auto& cls : f.classes->classes()) {
                    const auto x = f.g->decode(cls.representative);
                    const auto arg = fld.add(fld.mul({f1}, x[0]), fld.mul({f2}, x[1]));
                    row.push_back(additive_character(fld, fld.one())(arg).to_string());
                }
                expected.insert(row);
            }
        for (const auto& chi : f.table.characters) {
            std::vector<std::string> row;
            for (const auto& v : chi.values())
                row.push_back(v.to_string());
            got.insert(row);
        }
        EXPECT_EQ(got, expected) << q;
    }
}

TEST(InnerProduct, Basics)
{
    auto f = make(ul(3, 2));
    const auto triv = ClassFunction::trivial(f.classes);
    EXPECT_EQ(inner_product(triv, triv), Cyclotomic(1));
    const auto reg = ClassFunction::regular(f.classes);
    for (const auto& chi : f.table.characters) {
        EXPECT_EQ(inner_product(reg, chi), chi.degree());
        EXPECT_EQ(inner_product(chi, chi), Cyclotomic(1));
    }
}

TEST(Induction, MatchesLiteralFormulaAndReciprocity)
{
    for (const char* name : {"ul(3,2)", "ul(3,3)", "ul(4,2)", "free(2,2,3)"}) {
        auto f = make(resolve_target(name));
        const int n = f.g->algebra().nilpotence_class();
        std::vector<Subgroup> subs;
        for (int m = 1; m <= n; ++m)
            subs.push_back(power_subgroup(f.g, m));
        subs.push_back(subgroup_closure(f.g, {1}));
        subs.push_back(subgroup_closure(f.g, {2, 5}));
        for (const auto& h : subs) {
            auto hc = conjugacy_classes(h);
            auto ht = character_table(hc);
            for (const auto& rho : ht.characters) {
                const auto ind = induce(rho, f.classes);
                ASSERT_EQ(ind, literal_induce(rho, f.classes)) << name;
                EXPECT_EQ(ind.degree(), rho.degree() * Rational(static_cast<std::int64_t>(f.g->order() / h.size())));
                for (const auto& chi : f.table.characters)
                    ASSERT_EQ(inner_product(ind, chi), inner_product(rho, restrict_to(chi, hc))) << name;
            }
        }
    }
}

TEST(Induction, IndexTwoTrivial)
{
    auto f = make(ul(3, 2));
    // 1 + span{e12, e13} has index 2
    auto h = Subgroup::from_subspace(f.g, Subspace::span(f.g->field(), 3, {vec({1, 0, 0}), vec({0, 0, 1})}));
    auto hc = conjugacy_classes(h);
    EXPECT_EQ(induce(ClassFunction::trivial(hc), f.classes).degree(), Cyclotomic(2));
    EXPECT_THROW(induce(ClassFunction::trivial(f.classes), hc), NotASubgroup);
}

TEST(Restriction, Basics)
{
    auto f = make(ul(3, 2));
    auto hc = conjugacy_classes(power_subgroup(f.g, 2));
    EXPECT_EQ(restrict_to(ClassFunction::trivial(f.classes), hc), ClassFunction::trivial(hc));
    const auto& chi = f.table.characters.back();
    ASSERT_EQ(chi.integer_degree(), 2u);
    auto res = restrict_to(chi, hc);
    const Code e13 = f.g->encode(vec({0, 0, 1}));
    EXPECT_EQ(res.at(e13), Cyclotomic(-2));
    EXPECT_EQ(res.degree(), Cyclotomic(2));
}

TEST(LinearCharacters, CountsAndHomomorphism)
{
    for (const auto& e : builtin_catalog()) {
        auto g = make_unit_group(e.build());
        auto whole = Subgroup::whole(g);
        auto ab = abelianize(whole);
        const auto chars = linear_characters(ab);
        EXPECT_EQ(chars.size(), g->order() / ab.derived.size()) << e.name;
        std::uint64_t prod = 1;
        for (auto o : ab.orders)
            prod *= o;
        EXPECT_EQ(prod, ab.size());
        if (g->order() > 64)
            continue;
        std::set<std::vector<unsigned>> distinct;
        for (const auto& chi : chars) {
            distinct.insert(chi.exponents());
            for (Code x = 0; x < g->order(); ++x)
                for (Code y = 0; y < g->order(); ++y)
                    ASSERT_EQ((chi.exponent(x) + chi.exponent(y)) % chi.order(), chi.exponent(g->mul(x, y)))
                        << e.name;
        }
        EXPECT_EQ(distinct.size(), chars.size());
    }
    auto ul3 = make_unit_group(ul(3, 2));
    EXPECT_EQ(linear_characters(Subgroup::whole(ul3)).size(), 4u);
    auto ab = make_unit_group(FqAlgebra::from_structure_constants(FiniteField::make(3, 1), 3, {}));
    EXPECT_EQ(linear_characters(Subgroup::whole(ab)).size(), 27u);
}

TEST(LinearCharacters, MatchDegreeOneRowsOfTable)
{
    for (const char* name : {"ul(3,2)", "ul(3,3)", "ul(3,4)", "ul(4,2)", "free(2,2,3)"}) {
        auto f = make(resolve_target(name));
        std::set<std::vector<std::string>> from_table, from_linear;
        for (const auto& chi : f.table.characters)
            if (chi.integer_degree() == 1) {
                std::vector<std::string> row;
                for (const auto& v : chi.values())
                    row.push_back(v.to_string());
                from_table.insert(row);
            }
        for (const auto& lin : linear_characters(Subgroup::whole(f.g))) {
            std::vector<std::string> row;
            const auto cf = lin.as_class_function(f.classes);
            for (const auto& v : cf.values())
                row.push_back(v.to_string());
            from_linear.insert(row);
        }
        EXPECT_EQ(from_table, from_linear) << name;
    }
}

TEST(ScalarOn, Examples)
{
    auto f = make(ul(3, 2));
    const auto& chi = f.table.characters.back();
    auto trivial_sub = subgroup_closure(f.g, {});
    auto z1 = scalar_on(chi, trivial_sub);
    ASSERT_TRUE(z1.has_value());
    EXPECT_TRUE(z1->is_trivial());
    auto z2 = scalar_on(chi, power_subgroup(f.g, 2));
    ASSERT_TRUE(z2.has_value());
    EXPECT_EQ((*z2)(f.g->encode(vec({0, 0, 1}))), Cyclotomic(-1));
    EXPECT_FALSE(scalar_on(chi, Subgroup::whole(f.g)).has_value());
    // linear characters are scalar everywhere
    for (const auto& c : f.table.characters)
        if (c.integer_degree() == 1)
            EXPECT_TRUE(scalar_on(c, Subgroup::whole(f.g)).has_value());
}

TEST(Mackey, CriteriaAgree)
{
    auto f = make(ul(3, 2));
    auto a1 = Subgroup::from_subspace(f.g, Subspace::span(f.g->field(), 3, {vec({1, 0, 0}), vec({0, 0, 1})}));
    auto a1c = conjugacy_classes(a1);
    auto a1t = character_table(a1c);
    const Code e13 = f.g->encode(vec({0, 0, 1}));
    bool found = false;
    for (const auto& rho : a1t.characters) {
        const auto r = mackey_check(rho, f.classes);
        EXPECT_EQ(r.by_inner_product, r.by_conjugates);
        if (rho.at(e13) == Cyclotomic(-1)) {
            EXPECT_TRUE(r.by_inner_product);
            found = true;
        }
    }
    EXPECT_TRUE(found);
    EXPECT_FALSE(mackey_irreducible(ClassFunction::trivial(a1c), f.classes));
    auto not_normal = subgroup_closure(f.g, {f.g->encode(vec({1, 0, 0}))});
    EXPECT_THROW(mackey_check(ClassFunction::trivial(conjugacy_classes(not_normal)), f.classes), NotNormal);

    for (const char* name : {"ul(3,3)", "ul(4,2)", "free(2,2,3)"}) {
        auto ff = make(resolve_target(name));
        for (int m = 2; m < ff.g->algebra().nilpotence_class(); ++m) {
            auto hc = conjugacy_classes(power_subgroup(ff.g, m));
            for (const auto& rho : character_table(hc).characters) {
                const auto r = mackey_check(rho, ff.classes);
                EXPECT_EQ(r.by_inner_product, r.by_conjugates) << name;
            }
        }
    }
}

TEST(CharacterTable, Deterministic)
{
    auto a = make(ul(4, 2)).table.to_json().dump();
    auto b = make(ul(4, 2)).table.to_json().dump();
    EXPECT_EQ(a, b);
    auto csv = make(ul(3, 3)).table.to_csv();
    EXPECT_NE(csv.find("zeta3^2"), std::string::npos);
}

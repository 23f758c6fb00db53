#pragma once

// Verification suites over one algebra, each producing a JSON report. Used
// by the command-line tool and the acceptance runner.

#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "nilchar/catalog.hpp"
#include "nilchar/chars.hpp"
#include "nilchar/gutkin.hpp"
#include "nilchar/identities.hpp"
#include "nilchar/polarization.hpp"

namespace nilchar {

struct SuiteResult
{
    std::string name;
    bool passed = false;
    bool skipped = false;
    nlohmann::json report;

    nlohmann::json to_json() const
    {
        return {{"suite", name}, {"status", skipped ? "skipped" : passed ? "pass" : "fail"}, {"report", report}};
    }
};

namespace detail {

inline nlohmann::json degree_counts_json(const std::map<std::uint64_t, std::size_t>& m)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [d, c] : m)
        j[std::to_string(d)] = c;
    return j;
}

inline SuiteResult failed_with(std::string name, const VerificationFailed& e, nlohmann::json report = {})
{
    report["error"] = {{"stage", e.stage()}, {"witness", e.witness()}};
    return {std::move(name), false, false, std::move(report)};
}

} // namespace detail

/// Oracle table with its exact orthogonality checks.
inline SuiteResult table_suite(const UnitGroupPtr& g,
                               const std::optional<std::map<std::uint64_t, std::size_t>>& expected = std::nullopt)
{
    nlohmann::json rep;
    try {
        const auto t = character_table(Subgroup::whole(g), false);
        const auto c = check_table(t);
        rep = {{"order", g->order()},
               {"classes", t.classes->count()},
               {"degrees", detail::degree_counts_json(t.degree_counts())},
               {"degree_sum", c.degree_sum},
               {"count", c.count},
               {"row_orthogonality", c.rows},
               {"column_orthogonality", c.columns},
               {"dixon_prime", t.prime}};
        bool ok = c.ok();
        if (expected) {
            rep["expected"] = detail::degree_counts_json(*expected);
            ok = ok && t.degree_counts() == *expected;
        }
        return {"table", ok, false, rep};
    } catch (const VerificationFailed& e) {
        return detail::failed_with("table", e, rep);
    }
}

/// Monomial decomposition of every irreducible, with the per-step checks
/// (bilinearity of the pairing, the extension set, Mackey, induction).
inline SuiteResult gutkin_suite(const UnitGroupPtr& g)
{
    nlohmann::json rep;
    try {
        const auto r = verify_gutkin_all(g);
        nlohmann::json chars = nlohmann::json::array();
        std::size_t steps = 0, bilinear = 0, orbits = 0, stabilizers = 0, scaling_points = 0;
        bool ok = r.all_verified();
        for (const auto& d : r.data) {
            for (const auto& st : d.steps) {
                ++steps;
                bilinear += st.bilinearity.ok();
                orbits += st.extensions.single_orbit && !st.extensions.extensions.empty();
                stabilizers += st.extensions.stabilizers_ok;
                scaling_points += st.bilinearity.points;
            }
            chars.push_back(datum_to_json(d, g->field()));
        }
        ok = ok && bilinear == steps && orbits == steps && stabilizers == steps;
        std::map<std::uint64_t, std::size_t> counts;
        for (auto d : r.degrees)
            ++counts[d];
        rep = {{"degrees", detail::degree_counts_json(counts)},
               {"degrees_are_powers_of_q", r.degrees_are_powers_of_q},
               {"steps", steps},
               {"steps_bilinear", bilinear},
               {"steps_single_orbit", orbits},
               {"steps_stabilizer_ok", stabilizers},
               {"bilinearity_points", scaling_points},
               {"characters", chars}};
        return {"gutkin", ok, false, rep};
    } catch (const VerificationFailed& e) {
        return detail::failed_with("gutkin", e, rep);
    }
}

/// (1+A^m, 1+A^n) inside (1+A, 1+A^{m+n-1}) for every m, n with m+n-1 <= class.
inline SuiteResult commutator_suite(const UnitGroupPtr& g, std::uint64_t cap = UnitGroup::kDefaultCap)
{
    const int c = g->algebra().nilpotence_class();
    nlohmann::json checks = nlohmann::json::array();
    bool ok = true;
    for (int m = 1; m <= c; ++m)
        for (int n = 1; m + n - 1 <= c; ++n) {
            const auto r = check_commutator_theorem(g, m, n, cap);
            nlohmann::json j{{"m", m}, {"n", n}, {"lhs_order", r.lhs_order}, {"rhs_order", r.rhs_order},
                             {"holds", r.holds}};
            if (r.witness)
                j["witness"] = vector_to_json(g->field(), g->decode(*r.witness));
            checks.push_back(j);
            ok = ok && r.holds;
        }
    return {"commutators", ok, false, {{"class", c}, {"checks", checks}}};
}

/// The symbolic grid: the lemma for |X| <= 3, n <= 5, 2 <= m < n; the two
/// defects for m <= max_m within the dimension cap.
inline SuiteResult symbolic_suite(std::size_t dim_cap = 400, int max_m = 4)
{
    nlohmann::json checks = nlohmann::json::array();
    bool ok = true;
    std::size_t skipped = 0;
    auto record = [&](const IdentityCheck& r) {
        checks.push_back(r.to_json());
        ok = ok && (r.passed || r.skipped);
        skipped += r.skipped;
    };
    for (std::size_t x = 1; x <= 3; ++x)
        for (int n = 3; n <= 5; ++n)
            for (int m = 2; m < n; ++m)
                record(lemma_auxiliary_check(x, n, m, dim_cap));
    for (int m = 2; m <= max_m; ++m) {
        record(additivity_defect_check(m, dim_cap));
        record(scaling_defect_check(m, dim_cap));
    }
    return {"symbolic", ok, false, {{"dimension_cap", dim_cap}, {"skipped", skipped}, {"checks", checks}}};
}

/// The pairing into (1+A^m)/(1+A, 1+A^m) for every m, and C_zeta for every
/// invariant character zeta of 1+A^m.
inline SuiteResult pairing_suite(const UnitGroupPtr& g, std::uint64_t cap = UnitGroup::kDefaultCap)
{
    const int c = g->algebra().nilpotence_class();
    nlohmann::json checks = nlohmann::json::array();
    bool ok = true;
    try {
        for (int m = 2; m < c; ++m) {
            const auto r = finite_pairing_check(g, m, cap);
            auto j = r.to_json();
            std::size_t invariant = 0, bilinear = 0;
            for (const auto& zeta : linear_characters(power_subgroup(g, m))) {
                const auto z = character_pairing_check(g, m, zeta);
                invariant += z.invariant;
                bilinear += z.invariant && z.bilinear;
            }
            j["invariant_characters"] = invariant;
            j["bilinear_characters"] = bilinear;
            ok = ok && r.ok() && invariant == bilinear && invariant == r.q_order;
            checks.push_back(j);
        }
    } catch (const VerificationFailed& e) {
        return detail::failed_with("pairing", e, {{"checks", checks}});
    }
    return {"pairing", ok, false, {{"checks", checks}}};
}

/// Seeded random functionals; for dim <= 4 over F_2 also every functional
/// against exhaustive search.
inline SuiteResult polarize_suite(const FqAlgebra& a, std::uint64_t seed = 0, int samples = 100)
{
    const auto& f = a.ring();
    std::mt19937_64 rng(seed);
    std::size_t good = 0, total = 0, by_flag = 0, exhaustive = 0, exhaustive_good = 0;
    auto check = [&](const FqVector& fn) {
        const auto p = find_polarization(a, fn);
        ++total;
        by_flag += p.by_flag;
        good += is_subalgebra(a, p.b) && is_isotropic(a, fn, p.b) && p.b.dim() == a.dim() - p.form_rank / 2;
        return p;
    };
    for (int t = 0; t < samples; ++t) {
        FqVector fn(a.dim());
        for (auto& x : fn)
            x = f.element(static_cast<std::uint32_t>(rng() % f.order()));
        check(fn);
    }
    if (a.dim() <= 4 && f.order() == 2) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << a.dim()); ++code) {
            FqVector fn(a.dim());
            for (std::size_t i = 0; i < a.dim(); ++i)
                fn[i] = f.element(static_cast<std::uint32_t>((code >> i) & 1u));
            const auto p = check(fn);
            ++exhaustive;
            exhaustive_good += p.b.dim() == search_polarization(a, fn, p.b.dim()).dim() &&
                               [&] {
                                   try {
                                       search_polarization(a, fn, p.b.dim() + 1);
                                       return false;
                                   } catch (const SearchExhausted&) {
                                       return true;
                                   }
                               }();
        }
    }
    const bool ok = good == total && exhaustive_good == exhaustive;
    return {"polarize",
            ok,
            false,
            {{"seed", seed},
             {"functionals", total},
             {"valid", good},
             {"by_flag", by_flag},
             {"exhaustive_compared", exhaustive},
             {"exhaustive_agree", exhaustive_good}}};
}

} // namespace nilchar

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilchar/algebra.hpp"
#include "nilchar/subspace.hpp"

namespace nilchar {

using nlohmann::json;

inline json ring_to_json(const FiniteField& f)
{
    json j = f.descriptor();
    j["kind"] = "finite-field";
    return j;
}
inline json ring_to_json(const IntegerRing& r) { return r.descriptor(); }
inline json ring_to_json(const PolynomialRing& r) { return r.descriptor(); }

inline FiniteField field_from_json(const json& j)
{
    try {
        const auto p = j.at("p").get<unsigned>();
        if (j.contains("modulus"))
            return FiniteField::with_modulus(p, j.at("modulus").get<std::vector<unsigned>>());
        return FiniteField::make(p, j.at("k").get<unsigned>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad field descriptor: ") + e.what());
    }
}

/// {"ring": {...}, "dim": d, "sc": [[i, j, k, "coeff"], ...], "labels": [...]}
template <class Ring>
json algebra_to_json(const Algebra<Ring>& a)
{
    json sc = json::array();
    for (const auto& t : a.structure_constants())
        sc.push_back(json::array({t.i, t.j, t.k, a.ring().format(t.c)}));
    return {{"ring", ring_to_json(a.ring())}, {"dim", a.dim()}, {"sc", sc}, {"labels", a.labels()}};
}

template <class Ring>
Algebra<Ring> algebra_from_json(const Ring& ring, const json& j)
{
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        std::vector<typename Algebra<Ring>::Constant> sc;
        for (const auto& row : j.at("sc")) {
            if (!row.is_array() || row.size() != 4)
                throw ParseError("structure constant must be [i, j, k, coeff]");
            const auto& c = row[3];
            const std::string text = c.is_string() ? c.get<std::string>() : c.dump();
            sc.push_back({row[0].get<std::size_t>(), row[1].get<std::size_t>(), row[2].get<std::size_t>(),
                          ring.parse(text)});
        }
        std::vector<std::string> labels;
        if (j.contains("labels"))
            labels = j.at("labels").get<std::vector<std::string>>();
        return Algebra<Ring>::from_structure_constants(ring, dim, std::move(sc), std::move(labels));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad algebra JSON: ") + e.what());
    }
}

/// Algebras over a finite field, the only kind the group-level tools accept.
inline FqAlgebra fq_algebra_from_json(const json& j)
{
    const auto& ring = j.at("ring");
    const auto kind = ring.value("kind", std::string("finite-field"));
    if (kind != "finite-field")
        throw ParseError("expected an algebra over a finite field, got ring kind '" + kind + "'");
    return algebra_from_json(field_from_json(ring), j);
}

/// Field elements as integer coefficient lists (low to high).
inline json vector_to_json(const FiniteField& f, const FqVector& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(f.coeffs(x));
    return out;
}

inline json subspace_to_json(const Subspace& s)
{
    json out = json::array();
    for (const auto& row : s.basis())
        out.push_back(vector_to_json(s.field(), row));
    return out;
}

} // namespace nilchar

#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "nilchar/io.hpp"

namespace nilchar {

/// A named algebra over a finite field. `expected_degrees` maps degree to
/// multiplicity when the answer is known independently.
struct CatalogEntry
{
    std::string name;
    std::function<FqAlgebra()> build;
    std::optional<std::map<std::uint64_t, std::size_t>> expected_degrees;
};

inline unsigned prime_power_base(unsigned q, unsigned& k)
{
    for (unsigned p = 2; p <= q; ++p)
        if (q % p == 0) {
            k = 0;
            unsigned r = q;
            while (r % p == 0) {
                r /= p;
                ++k;
            }
            if (r != 1)
                throw InvalidArgument(std::to_string(q) + " is not a prime power");
            return p;
        }
    throw InvalidArgument(std::to_string(q) + " is not a prime power");
}

inline FiniteField field_of_order(unsigned q)
{
    unsigned k = 0;
    const unsigned p = prime_power_base(q, k);
    return FiniteField::make(p, k);
}

/// Strictly upper-triangular n x n over F_q.
inline FqAlgebra ul(unsigned n, unsigned q) { return strictly_upper_triangular(field_of_order(q), n); }

/// Free nilpotent algebra of class n on `gens` generators over F_q.
inline FqAlgebra free_algebra(unsigned q, unsigned gens, int n)
{
    static const char* names[] = {"x", "y", "z", "w"};
    std::vector<std::string> x;
    for (unsigned i = 0; i < gens; ++i)
        x.push_back(i < 4 ? names[i] : "x" + std::to_string(i + 1));
    return free_nilpotent(field_of_order(q), x, n).algebra;
}

inline std::vector<CatalogEntry> builtin_catalog()
{
    auto heisenberg = [](std::uint64_t q) {
        return std::map<std::uint64_t, std::size_t>{{1, q * q}, {q, q - 1}};
    };
    return {
        {"ul(3,2)", [] { return ul(3, 2); }, heisenberg(2)},
        {"ul(3,3)", [] { return ul(3, 3); }, heisenberg(3)},
        {"ul(3,4)", [] { return ul(3, 4); }, heisenberg(4)},
        {"ul(4,2)", [] { return ul(4, 2); }, std::map<std::uint64_t, std::size_t>{{1, 8}, {2, 6}, {4, 2}}},
        {"free(2,2,3)", [] { return free_algebra(2, 2, 3); }, std::map<std::uint64_t, std::size_t>{{1, 32}, {2, 8}}},
        {"free(3,2,3)", [] { return free_algebra(3, 2, 3); }, std::map<std::uint64_t, std::size_t>{{1, 243}, {3, 54}}},
    };
}

inline FqAlgebra load_algebra_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    return fq_algebra_from_json(j);
}

/// Resolves "ul(n,q)", "free(q,g,n)", "file(path)" or a bare path to a .json file.
inline FqAlgebra resolve_target(const std::string& target)
{
    std::smatch m;
    static const std::regex ul_re(R"(\s*ul\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
    static const std::regex free_re(R"(\s*free\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
    static const std::regex file_re(R"(\s*file\((.*)\)\s*)");
    if (std::regex_match(target, m, ul_re))
        return ul(std::stoul(m[1]), std::stoul(m[2]));
    if (std::regex_match(target, m, free_re))
        return free_algebra(std::stoul(m[1]), std::stoul(m[2]), std::stoi(m[3]));
    if (std::regex_match(target, m, file_re))
        return load_algebra_file(m[1]);
    if (target.size() > 5 && target.substr(target.size() - 5) == ".json")
        return load_algebra_file(target);
    throw ParseError("unknown target '" + target + "' (expected ul(n,q), free(q,g,n) or file(path))");
}

} // namespace nilchar

#pragma once

// Character tables by the Dixon-Schneider method: common eigenvectors of the
// class multiplication matrices over F_l, lifted to Q(zeta_e).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilchar/class_function.hpp"
#include "nilchar/io.hpp"

namespace nilchar {

namespace modp {

using u64 = std::uint64_t;

inline u64 mul(u64 a, u64 b, u64 l) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % l); }
inline u64 pow(u64 a, u64 e, u64 l)
{
    u64 r = 1 % l;
    a %= l;
    while (e) {
        if (e & 1)
            r = mul(r, a, l);
        a = mul(a, a, l);
        e >>= 1;
    }
    return r;
}
inline u64 inv(u64 a, u64 l) { return pow(a, l - 2, l); }
inline u64 sub(u64 a, u64 b, u64 l) { return a >= b ? a - b : a + l - b; }

inline std::vector<u64> prime_factors(u64 n)
{
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}

inline u64 smallest_primitive_root(u64 l)
{
    const auto fs = prime_factors(l - 1);
    for (u64 r = 2; r < l; ++r)
        if (std::all_of(fs.begin(), fs.end(), [&](u64 f) { return pow(r, (l - 1) / f, l) != 1; }))
            return r;
    return 1; // l = 2
}

using Matrix = std::vector<std::vector<u64>>;

/// Basis of {v : m v = 0} for a square matrix, as column vectors.
inline std::vector<std::vector<u64>> nullspace(Matrix m, u64 l)
{
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[r]);
        const u64 iv = inv(m[r][c], l);
        for (auto& x : m[r])
            x = mul(x, iv, l);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            const u64 f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (m[r][j])
                    m[i][j] = sub(m[i][j], mul(f, m[r][j], l), l);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col)
        is_pivot[c] = true;
    std::vector<std::vector<u64>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<u64> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = sub(0, m[i][f], l);
        out.push_back(std::move(v));
    }
    return out;
}

/// Characteristic polynomial det(x I - m), low to high, via Hessenberg reduction.
inline std::vector<u64> charpoly(Matrix h, u64 l)
{
    const std::size_t n = h.size();
    for (std::size_t c = 0; c + 2 <= n; ++c) {
        std::size_t piv = c + 1;
        while (piv < n && h[piv][c] == 0)
            ++piv;
        if (piv == n)
            continue;
        if (piv != c + 1) {
            std::swap(h[piv], h[c + 1]);
            for (auto& row : h)
                std::swap(row[piv], row[c + 1]);
        }
        const u64 iv = inv(h[c + 1][c], l);
        for (std::size_t i = c + 2; i < n; ++i) {
            if (h[i][c] == 0)
                continue;
            const u64 f = mul(h[i][c], iv, l);
            for (std::size_t j = 0; j < n; ++j)
                h[i][j] = sub(h[i][j], mul(f, h[c + 1][j], l), l);
            for (std::size_t j = 0; j < n; ++j)
                h[j][c + 1] = (h[j][c + 1] + mul(f, h[j][i], l)) % l;
        }
    }
    // p_k = char poly of the leading k x k block
    std::vector<std::vector<u64>> p(n + 1);
    p[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        // (x - h[k-1][k-1]) p_{k-1}
        std::vector<u64> cur(k + 1, 0);
        for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
            cur[i + 1] = (cur[i + 1] + p[k - 1][i]) % l;
            cur[i] = sub(cur[i], mul(h[k - 1][k - 1], p[k - 1][i], l), l);
        }
        u64 prod = 1;
        for (std::size_t i = k - 1; i-- > 0;) {
            prod = mul(prod, h[i + 1][i], l);
            if (prod == 0)
                break;
            const u64 f = mul(prod, h[i][k - 1], l);
            for (std::size_t t = 0; t < p[i].size(); ++t)
                cur[t] = sub(cur[t], mul(f, p[i][t], l), l);
        }
        p[k] = std::move(cur);
    }
    return p[n];
}

inline u64 eval(const std::vector<u64>& poly, u64 x, u64 l)
{
    u64 r = 0;
    for (std::size_t i = poly.size(); i-- > 0;)
        r = (mul(r, x, l) + poly[i]) % l;
    return r;
}

} // namespace modp

struct CharacterTable
{
    ClassStructurePtr classes;
    std::vector<ClassFunction> characters;
    std::uint64_t exponent = 1;      // values lie in Q(zeta_exponent)
    std::uint64_t prime = 0;         // the Dixon prime l
    std::uint64_t primitive_root = 0;
    std::uint64_t zeta_image = 0;    // zeta_exponent -> primitive_root^((l-1)/exponent)

    std::size_t size() const { return characters.size(); }
    const ClassFunction& operator[](std::size_t i) const { return characters[i]; }

    std::vector<std::uint64_t> degrees() const
    {
        std::vector<std::uint64_t> d;
        for (const auto& c : characters)
            d.push_back(c.integer_degree());
        return d;
    }

    /// degree -> number of irreducibles of that degree
    std::map<std::uint64_t, std::size_t> degree_counts() const
    {
        std::map<std::uint64_t, std::size_t> m;
        for (auto d : degrees())
            ++m[d];
        return m;
    }

    nlohmann::json to_json() const
    {
        const auto& g = classes->group();
        nlohmann::json cls = nlohmann::json::array();
        for (std::size_t i = 0; i < classes->count(); ++i)
            cls.push_back({{"representative", vector_to_json(g.group().field(),
                                                              g.group().decode((*classes)[i].representative))},
                           {"size", classes->class_size(i)}});
        nlohmann::json chars = nlohmann::json::array();
        for (const auto& c : characters) {
            nlohmann::json vals = nlohmann::json::array();
            for (const auto& v : c.values())
                vals.push_back(v.to_json());
            chars.push_back({{"degree", c.integer_degree()}, {"values", vals}});
        }
        return {{"order", classes->order()},
                {"exponent", exponent},
                {"dixon", {{"prime", prime}, {"primitive_root", primitive_root}, {"zeta_image", zeta_image}}},
                {"classes", cls},
                {"characters", chars}};
    }

    std::string to_csv() const
    {
        std::ostringstream out;
        out << "character,degree";
        for (std::size_t i = 0; i < classes->count(); ++i)
            out << ",C" << i;
        out << "\n";
        out << "class size,";
        for (std::size_t i = 0; i < classes->count(); ++i)
            out << "," << classes->class_size(i);
        out << "\n";
        for (std::size_t r = 0; r < characters.size(); ++r) {
            out << "chi" << r << "," << characters[r].integer_degree();
            for (const auto& v : characters[r].values())
                out << "," << v.to_string();
            out << "\n";
        }
        return out.str();
    }
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Smallest prime l = 1 mod e with l > 2 sqrt(order) and l > start.
inline std::uint64_t dixon_prime(std::uint64_t e, std::uint64_t order, std::uint64_t start = 0)
{
    std::uint64_t bound = static_cast<std::uint64_t>(2.0 * std::sqrt(static_cast<double>(order)));
    while (bound * bound < 4 * order)
        ++bound;
    std::uint64_t l = std::max(bound, start) + 1;
    l += (e - (l - 1) % e) % e;
    while (!is_prime_u64(l))
        l += e;
    return l;
}

/// Integer vectors in the power basis of Q(zeta_e), used for fast exact
/// orthogonality sums: characters have algebraic integer values.
struct DenseValue
{
    std::vector<std::int64_t> c; // length e, exponent-indexed
};

inline DenseValue dense(const Cyclotomic& v, int e)
{
    const auto w = v.embed(e);
    DenseValue d{std::vector<std::int64_t>(e, 0)};
    for (std::size_t i = 0; i < w.coeffs().size(); ++i) {
        const auto& r = w.coeffs()[i];
        if (r.denominator() != 1)
            throw VerificationFailed("character value", "non-integral value " + v.to_string());
        d.c[i] = r.numerator();
    }
    return d;
}

/// sum_C w_C a_C conj(b_C), reduced in Q(zeta_e).
inline Cyclotomic weighted_pairing(const std::vector<DenseValue>& a, const std::vector<DenseValue>& b,
                                   const std::vector<std::int64_t>& w, int e)
{
    std::vector<std::int64_t> acc(e, 0);
    for (std::size_t c = 0; c < a.size(); ++c) {
        const auto& x = a[c].c;
        const auto& y = b[c].c;
        for (int i = 0; i < e; ++i) {
            if (!x[i])
                continue;
            const auto xi = x[i] * w[c];
            for (int j = 0; j < e; ++j)
                if (y[j])
                    acc[((i - j) % e + e) % e] += xi * y[j];
        }
    }
    std::vector<Rational> r(e);
    for (int i = 0; i < e; ++i)
        r[i] = Rational(acc[i]);
    return Cyclotomic::from_exponents(e, r);
}

class DixonAttempt
{
public:
    DixonAttempt(const ClassStructurePtr& cs, std::uint64_t l) : cs_(*cs), l_(l), k_(cs->count())
    {
        const auto& g = cs_.group();
        inverse_class_.resize(k_);
        for (std::size_t j = 0; j < k_; ++j)
            inverse_class_[j] = cs_.class_of(g.group().inv(cs_[j].representative));
    }

    /// (M_j)_{a,b} = #{x in C_j : x^{-1} z_b in C_a}, so M_j w = omega(K_j) w.
    modp::Matrix class_matrix(std::size_t j) const
    {
        const auto& grp = cs_.group().group();
        modp::Matrix m(k_, std::vector<std::uint64_t>(k_, 0));
        for (Code x : cs_[j].members) {
            const Code xi = grp.inv(x);
            for (std::size_t b = 0; b < k_; ++b)
                ++m[cs_.class_of(grp.mul(xi, cs_[b].representative))][b];
        }
        for (auto& row : m)
            for (auto& v : row)
                v %= l_;
        return m;
    }

    /// Common eigenvectors, each normalised to 1 at the identity class.
    std::optional<std::vector<std::vector<std::uint64_t>>> eigenvectors() const
    {
        using modp::u64;
        // subspaces as lists of basis columns
        std::vector<std::vector<std::vector<u64>>> spaces;
        {
            std::vector<std::vector<u64>> id;
            for (std::size_t i = 0; i < k_; ++i) {
                std::vector<u64> v(k_, 0);
                v[i] = 1;
                id.push_back(std::move(v));
            }
            spaces.push_back(std::move(id));
        }
        auto all_split = [&] {
            return std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; });
        };
        for (std::size_t j = 1; j < k_ && !all_split(); ++j) {
            const auto m = class_matrix(j);
            std::vector<std::vector<std::vector<u64>>> next;
            for (auto& basis : spaces) {
                if (basis.size() == 1) {
                    next.push_back(std::move(basis));
                    continue;
                }
                auto split = split_space(m, basis);
                if (!split)
                    return std::nullopt;
                for (auto& s : *split)
                    next.push_back(std::move(s));
            }
            spaces = std::move(next);
        }
        if (!all_split())
            return std::nullopt;
        std::vector<std::vector<u64>> out;
        for (auto& s : spaces) {
            auto v = s[0];
            if (v[0] == 0)
                return std::nullopt;
            const auto iv = modp::inv(v[0], l_);
            for (auto& x : v)
                x = modp::mul(x, iv, l_);
            out.push_back(std::move(v));
        }
        return out;
    }

    const std::vector<std::size_t>& inverse_class() const { return inverse_class_; }

private:
    /// Splits span(basis) into eigenspaces of m restricted to it.
    std::optional<std::vector<std::vector<std::vector<std::uint64_t>>>>
    split_space(const modp::Matrix& m, const std::vector<std::vector<std::uint64_t>>& basis) const
    {
        using modp::u64;
        const std::size_t d = basis.size();
        // Bring the basis to reduced column-echelon form: rows piv[i] form an identity.
        auto b = basis;
        std::vector<std::size_t> piv;
        for (std::size_t i = 0; i < d; ++i) {
            std::size_t r = 0;
            while (r < k_ && b[i][r] == 0)
                ++r;
            if (r == k_)
                return std::nullopt;
            const u64 iv = modp::inv(b[i][r], l_);
            for (auto& x : b[i])
                x = modp::mul(x, iv, l_);
            for (std::size_t t = 0; t < d; ++t)
                if (t != i && b[t][r]) {
                    const u64 f = b[t][r];
                    for (std::size_t c = 0; c < k_; ++c)
                        b[t][c] = modp::sub(b[t][c], modp::mul(f, b[i][c], l_), l_);
                }
            piv.push_back(r);
        }
        // R with M B = B R: R[:, i] = (M b_i) at the pivot rows
        modp::Matrix rmat(d, std::vector<u64>(d, 0));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t t = 0; t < d; ++t) {
                u64 s = 0;
                const auto& row = m[piv[t]];
                for (std::size_t c = 0; c < k_; ++c)
                    if (row[c] && b[i][c])
                        s = (s + modp::mul(row[c], b[i][c], l_)) % l_;
                rmat[t][i] = s;
            }
        }
        const auto cp = modp::charpoly(rmat, l_);
        std::vector<u64> roots;
        for (u64 x = 0; x < l_; ++x)
            if (modp::eval(cp, x, l_) == 0)
                roots.push_back(x);
        if (roots.size() == 1) {
            // one eigenvalue: the space is already an eigenspace
            std::vector<std::vector<std::vector<u64>>> same{b};
            return same;
        }
        std::vector<std::vector<std::vector<u64>>> out;
        std::size_t total = 0;
        for (u64 lam : roots) {
            auto a = rmat;
            for (std::size_t t = 0; t < d; ++t)
                a[t][t] = modp::sub(a[t][t], lam, l_);
            const auto ns = modp::nullspace(a, l_);
            std::vector<std::vector<u64>> sub;
            for (const auto& coeffs : ns) {
                std::vector<u64> v(k_, 0);
                for (std::size_t i = 0; i < d; ++i)
                    if (coeffs[i])
                        for (std::size_t c = 0; c < k_; ++c)
                            if (b[i][c])
                                v[c] = (v[c] + modp::mul(coeffs[i], b[i][c], l_)) % l_;
                sub.push_back(std::move(v));
            }
            total += sub.size();
            out.push_back(std::move(sub));
        }
        if (total != d)
            return std::nullopt;
        return out;
    }

    const ClassStructure& cs_;
    std::uint64_t l_;
    std::size_t k_;
    std::vector<std::size_t> inverse_class_;
};

inline std::optional<CharacterTable> dixon_attempt(const ClassStructurePtr& cs, std::uint64_t l)
{
    using modp::u64;
    const auto& grp = cs->group().group();
    const std::size_t k = cs->count();
    const u64 order = cs->order();
    const u64 e = cs->exponent();
    DixonAttempt attempt(cs, l);
    auto vecs = attempt.eigenvectors();
    if (!vecs || vecs->size() != k)
        return std::nullopt;

    CharacterTable t;
    t.classes = cs;
    t.exponent = e;
    t.prime = l;
    t.primitive_root = modp::smallest_primitive_root(l);
    t.zeta_image = modp::pow(t.primitive_root, (l - 1) / e, l);

    // power maps: class of g^i for each class rep g, i < order(g)
    std::vector<std::vector<std::size_t>> powers(k);
    std::vector<u64> rep_order(k);
    for (std::size_t j = 0; j < k; ++j) {
        const Code g = (*cs)[j].representative;
        rep_order[j] = grp.element_order(g);
        Code cur = UnitGroup::identity();
        for (u64 i = 0; i < rep_order[j]; ++i) {
            powers[j].push_back(cs->class_of(cur));
            cur = grp.mul(cur, g);
        }
    }

    for (const auto& w : *vecs) {
        // d^2 = |G| / sum_j w_j w_{j*} / |C_j|
        u64 s = 0;
        for (std::size_t j = 0; j < k; ++j)
            s = (s + modp::mul(modp::mul(w[j], w[attempt.inverse_class()[j]], l),
                               modp::inv(cs->class_size(j) % l, l), l)) %
                l;
        if (s == 0)
            return std::nullopt;
        const u64 d2 = modp::mul(order % l, modp::inv(s, l), l);
        u64 d = 0;
        for (u64 c = 1; 2 * c < l; ++c)
            if (modp::mul(c, c, l) == d2) {
                d = c;
                break;
            }
        if (d == 0)
            return std::nullopt;
        std::vector<u64> chi(k);
        for (std::size_t j = 0; j < k; ++j)
            chi[j] = modp::mul(modp::mul(w[j], d, l), modp::inv(cs->class_size(j) % l, l), l);

        std::vector<Cyclotomic> values(k);
        for (std::size_t j = 0; j < k; ++j) {
            const u64 o = rep_order[j];
            const u64 zo = modp::pow(t.primitive_root, (l - 1) / o, l);
            const u64 inv_o = modp::inv(o % l, l);
            std::vector<Rational> mult(o, Rational(0));
            u64 total = 0;
            for (u64 kk = 0; kk < o; ++kk) {
                // m_k = (1/o) sum_i chi(g^i) zeta_o^{-ik}
                u64 sum = 0;
                const u64 step = modp::pow(zo, (o - kk) % o, l);
                u64 z = 1;
                for (u64 i = 0; i < o; ++i) {
                    sum = (sum + modp::mul(chi[powers[j][i]], z, l)) % l;
                    z = modp::mul(z, step, l);
                }
                const u64 m = modp::mul(sum, inv_o, l);
                if (m > d)
                    return std::nullopt;
                total += m;
                mult[kk] = Rational(static_cast<std::int64_t>(m));
            }
            if (total != d)
                return std::nullopt;
            values[j] = Cyclotomic::from_exponents(static_cast<int>(o), mult).embed(static_cast<int>(e));
        }
        t.characters.emplace_back(cs, std::move(values));
    }

    std::sort(t.characters.begin(), t.characters.end(), [](const ClassFunction& a, const ClassFunction& b) {
        const auto da = a.integer_degree(), db = b.integer_degree();
        if (da != db)
            return da < db;
        // decreasing on values, which puts the trivial character first
        for (std::size_t i = 0; i < a.values().size(); ++i) {
            const int c = compare(a[i], b[i]);
            if (c != 0)
                return c > 0;
        }
        return false;
    });
    return t;
}

} // namespace detail

struct TableCheck
{
    bool degree_sum = false;  // sum d^2 = |G|
    bool count = false;       // #irr = #classes
    bool rows = false;        // <chi_i, chi_j> = delta_ij
    bool columns = false;     // sum_i chi_i(C) conj chi_i(C') = delta |G|/|C|
    bool ok() const { return degree_sum && count && rows && columns; }
};

/// Exact verification of the table invariants.
inline TableCheck check_table(const CharacterTable& t)
{
    TableCheck r;
    const auto& cs = *t.classes;
    const std::size_t k = cs.count();
    const int e = static_cast<int>(t.exponent);
    std::uint64_t sq = 0;
    for (auto d : t.degrees())
        sq += d * d;
    r.degree_sum = sq == cs.order();
    r.count = t.size() == k;
    if (!r.count)
        return r;

    std::vector<std::vector<detail::DenseValue>> rows(k), cols(k, std::vector<detail::DenseValue>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < k; ++c) {
            rows[i].push_back(detail::dense(t[i][c], e));
            cols[c][i] = rows[i].back();
        }
    std::vector<std::int64_t> sizes(k), ones(k, 1);
    for (std::size_t c = 0; c < k; ++c)
        sizes[c] = static_cast<std::int64_t>(cs.class_size(c));
    const auto order = static_cast<std::int64_t>(cs.order());
    r.rows = true;
    for (std::size_t i = 0; i < k && r.rows; ++i)
        for (std::size_t j = i; j < k && r.rows; ++j)
            r.rows = detail::weighted_pairing(rows[i], rows[j], sizes, e) == Cyclotomic(i == j ? order : 0);
    r.columns = true;
    for (std::size_t a = 0; a < k && r.columns; ++a)
        for (std::size_t b = a; b < k && r.columns; ++b)
            r.columns = detail::weighted_pairing(cols[a], cols[b], ones, e) ==
                        Cyclotomic(a == b ? order / sizes[a] : 0);
    return r;
}

/// The irreducible characters of the group underlying `cs`. Tries successive
/// admissible primes if the eigenspaces fail to separate, then verifies the
/// result exactly.
inline CharacterTable character_table(const ClassStructurePtr& cs, bool verify = true)
{
    const auto e = cs->exponent();
    std::uint64_t l = detail::dixon_prime(e, cs->order());
    for (int attempt = 0; attempt < 8; ++attempt) {
        if (auto t = detail::dixon_attempt(cs, l)) {
            if (verify) {
                const auto c = check_table(*t);
                if (!c.ok())
                    throw VerificationFailed("character table", "orthogonality check failed for prime " +
                                                                    std::to_string(l));
            }
            return std::move(*t);
        }
        l = detail::dixon_prime(e, cs->order(), l);
    }
    throw VerificationFailed("character table", "eigenspaces did not split for eight primes");
}

inline CharacterTable character_table(const Subgroup& g, bool verify = true)
{
    return character_table(conjugacy_classes(g), verify);
}

} // namespace nilchar

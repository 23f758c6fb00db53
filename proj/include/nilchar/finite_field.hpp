#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilchar/error.hpp"

namespace nilchar {

/// An element of GF(p^k), stored as the base-p integer sum c_0 + c_1 p + ... of
/// its coordinates in the polynomial basis 1, a, ..., a^{k-1}. The numeric
/// order of codes is the canonical enumeration order of the field.
struct FieldElement
{
    std::uint32_t code = 0;

    friend constexpr bool operator==(FieldElement, FieldElement) = default;
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

namespace detail {

using ZpPoly = std::vector<unsigned>; // low to high, over Z/p

inline void trim(ZpPoly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

/// Remainder of f modulo a monic g over Z/p.
inline ZpPoly poly_mod(ZpPoly f, const ZpPoly& g, unsigned p)
{
    trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const unsigned lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i)
            f[shift + i] = (f[shift + i] + p - (lead * g[i]) % p) % p;
        trim(f);
    }
    return f;
}

inline ZpPoly monic_from_code(std::uint64_t code, unsigned p, unsigned degree)
{
    ZpPoly f(degree + 1, 0);
    for (unsigned i = 0; i < degree; ++i) {
        f[i] = static_cast<unsigned>(code % p);
        code /= p;
    }
    f[degree] = 1;
    return f;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const ZpPoly& f, unsigned p)
{
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t c = 0; c < count; ++c)
            if (poly_mod(f, monic_from_code(c, p, d), p).empty())
                return false;
    }
    return true;
}

} // namespace detail

/// GF(p^k) with a deterministic modulus: the irreducible monic polynomial of
/// degree k whose lower coefficients have the smallest base-p code.
/// Multiplication goes through discrete log tables, so the whole field is
/// materialised up front (q is capped).
class FiniteField
{
public:
    using value_type = FieldElement;

    static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 16;

    static FiniteField make(unsigned p, unsigned k, std::uint64_t cap = kDefaultCap)
    {
        if (!is_prime(p))
            throw NotPrime(std::to_string(p) + " is not prime");
        if (k == 0)
            throw InvalidArgument("field degree must be positive");
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i) {
            q *= p;
            if (q > cap)
                throw CapExceeded("field order " + std::to_string(p) + "^" + std::to_string(k) +
                                  " exceeds cap " + std::to_string(cap));
        }
        detail::ZpPoly modulus;
        if (k == 1) {
            modulus = {0, 1};
        } else {
            for (std::uint64_t c = 0; c < q; ++c) {
                auto f = detail::monic_from_code(c, p, k);
                if (detail::is_irreducible(f, p)) {
                    modulus = std::move(f);
                    break;
                }
            }
        }
        return FiniteField(p, k, std::move(modulus));
    }

    /// Builds GF(p^k) from an explicit modulus (low to high, monic, degree k).
    static FiniteField with_modulus(unsigned p, std::vector<unsigned> modulus)
    {
        if (!is_prime(p))
            throw NotPrime(std::to_string(p) + " is not prime");
        if (modulus.size() < 2 || modulus.back() != 1)
            throw InvalidArgument("modulus must be monic of positive degree");
        for (auto c : modulus)
            if (c >= p)
                throw InvalidArgument("modulus coefficient out of range");
        if (!detail::is_irreducible(modulus, p))
            throw InvalidArgument("modulus is reducible");
        const auto k = static_cast<unsigned>(modulus.size() - 1);
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i) {
            q *= p;
            if (q > kDefaultCap)
                throw CapExceeded("field order exceeds cap");
        }
        return FiniteField(p, k, std::move(modulus));
    }

    unsigned characteristic() const { return t_->p; }
    unsigned degree() const { return t_->k; }
    std::uint32_t order() const { return t_->q; }
    const std::vector<unsigned>& modulus() const { return t_->modulus; }
    FieldElement primitive_element() const { return {t_->q == 2 ? 1u : t_->exp[1]}; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement element(std::uint32_t code) const { return {code}; }
    FieldElement from_int(long long n) const
    {
        const long long p = t_->p;
        return {static_cast<std::uint32_t>(((n % p) + p) % p)};
    }
    FieldElement from_coeffs(std::span<const unsigned> c) const
    {
        std::uint32_t code = 0;
        for (std::size_t i = c.size(); i-- > 0;)
            code = code * t_->p + c[i] % t_->p;
        return {code};
    }
    std::vector<unsigned> coeffs(FieldElement a) const
    {
        std::vector<unsigned> c(t_->k);
        auto v = a.code;
        for (auto& x : c) {
            x = v % t_->p;
            v /= t_->p;
        }
        return c;
    }

    FieldElement add(FieldElement a, FieldElement b) const
    {
        if (!t_->add_table.empty())
            return {t_->add_table[a.code * t_->q + b.code]};
        std::uint32_t out = 0, pw = 1, x = a.code, y = b.code;
        for (unsigned i = 0; i < t_->k; ++i) {
            out += ((x % t_->p + y % t_->p) % t_->p) * pw;
            x /= t_->p;
            y /= t_->p;
            pw *= t_->p;
        }
        return {out};
    }
    FieldElement neg(FieldElement a) const { return {t_->neg[a.code]}; }
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement mul(FieldElement a, FieldElement b) const
    {
        if (a.code == 0 || b.code == 0)
            return {0};
        const auto s = t_->log[a.code] + t_->log[b.code];
        return {t_->exp[s % (t_->q - 1)]};
    }
    FieldElement inv(FieldElement a) const
    {
        if (a.code == 0)
            throw DivisionByZero("inverse of zero in GF(" + std::to_string(t_->q) + ")");
        const auto n = t_->q - 1;
        return {t_->exp[(n - t_->log[a.code]) % n]};
    }
    FieldElement pow(FieldElement a, std::uint64_t e) const
    {
        if (e == 0)
            return one();
        if (a.code == 0)
            return zero();
        const std::uint64_t n = t_->q - 1;
        return {t_->exp[(t_->log[a.code] * (e % n)) % n]};
    }
    bool is_zero(FieldElement a) const { return a.code == 0; }
    bool equal(FieldElement a, FieldElement b) const { return a == b; }

    /// Absolute trace to the prime field, as an integer in [0, p).
    unsigned trace(FieldElement a) const { return t_->trace[a.code]; }

    /// Frobenius a -> a^p.
    FieldElement frobenius(FieldElement a) const { return pow(a, t_->p); }

    /// Prime-field elements format as integers; others as polynomials in `a`,
    /// e.g. "a+1", "2*a^2+a".
    std::string format(FieldElement x) const
    {
        const auto c = coeffs(x);
        std::string out;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] == 0)
                continue;
            if (!out.empty())
                out += "+";
            if (i == 0) {
                out += std::to_string(c[i]);
                continue;
            }
            if (c[i] != 1)
                out += std::to_string(c[i]) + "*";
            out += "a";
            if (i > 1)
                out += "^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

    FieldElement parse(const std::string& text) const;

    nlohmann::json descriptor() const
    {
        return {{"p", t_->p}, {"k", t_->k}, {"modulus", t_->modulus}};
    }

    friend bool operator==(const FiniteField& a, const FiniteField& b)
    {
        return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->modulus == b.t_->modulus);
    }

private:
    struct Tables
    {
        unsigned p = 0, k = 0;
        std::uint32_t q = 0;
        std::vector<unsigned> modulus;
        std::vector<std::uint32_t> exp, log, neg, trace;
        std::vector<std::uint32_t> add_table; // only for q <= 256
    };

    FiniteField(unsigned p, unsigned k, detail::ZpPoly modulus)
    {
        auto t = std::make_shared<Tables>();
        t->p = p;
        t->k = k;
        t->modulus = std::move(modulus);
        t->q = 1;
        for (unsigned i = 0; i < k; ++i)
            t->q *= p;
        const auto q = t->q;

        auto encode = [&](const detail::ZpPoly& f) {
            std::uint32_t code = 0;
            for (std::size_t i = f.size(); i-- > 0;)
                code = code * p + f[i];
            return code;
        };
        auto decode = [&](std::uint32_t code) {
            detail::ZpPoly f(k);
            for (auto& c : f) {
                c = code % p;
                code /= p;
            }
            return f;
        };
        auto poly_mul = [&](const detail::ZpPoly& a, const detail::ZpPoly& b) {
            detail::ZpPoly r(a.size() + b.size(), 0);
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    r[i + j] = (r[i + j] + a[i] * b[j]) % p;
            auto m = detail::poly_mod(std::move(r), t->modulus, p);
            m.resize(k, 0);
            return m;
        };

        t->neg.resize(q);
        for (std::uint32_t c = 0; c < q; ++c) {
            auto f = decode(c);
            for (auto& x : f)
                x = (p - x) % p;
            t->neg[c] = encode(f);
        }

        // smallest generator of the multiplicative group
        t->exp.assign(q > 1 ? q - 1 : 1, 1);
        t->log.assign(q, 0);
        if (q == 2) {
            t->exp[0] = 1;
        } else {
            for (std::uint32_t g = 2; g < q; ++g) {
                const auto gf = decode(g);
                detail::ZpPoly cur = decode(1);
                std::vector<char> seen(q, 0);
                std::uint32_t n = 0;
                bool ok = true;
                for (; n < q - 1; ++n) {
                    const auto c = encode(cur);
                    if (seen[c]) {
                        ok = false;
                        break;
                    }
                    seen[c] = 1;
                    t->exp[n] = c;
                    cur = poly_mul(cur, gf);
                }
                if (ok)
                    break;
            }
        }
        for (std::uint32_t i = 0; i + 1 < q; ++i)
            t->log[t->exp[i]] = i;

        if (q <= 256) {
            t->add_table.resize(std::size_t{q} * q);
            for (std::uint32_t a = 0; a < q; ++a)
                for (std::uint32_t b = 0; b < q; ++b) {
                    auto fa = decode(a), fb = decode(b);
                    for (unsigned i = 0; i < k; ++i)
                        fa[i] = (fa[i] + fb[i]) % p;
                    t->add_table[a * q + b] = encode(fa);
                }
        }
        t_ = std::move(t);

        auto tr = std::vector<std::uint32_t>(q);
        for (std::uint32_t c = 0; c < q; ++c) {
            FieldElement acc = zero(), x{c};
            for (unsigned i = 0; i < k; ++i) {
                acc = add(acc, x);
                x = frobenius(x);
            }
            tr[c] = acc.code;
        }
        std::const_pointer_cast<Tables>(t_)->trace = std::move(tr);
    }

    std::shared_ptr<const Tables> t_;
};

inline FieldElement FiniteField::parse(const std::string& text) const
{
    // terms separated by '+' or '-': [coef][*]a[^e] or integer
    std::vector<long long> c(t_->k, 0);
    std::string s;
    for (char ch : text)
        if (ch != ' ')
            s += ch;
    if (s.empty())
        throw ParseError("empty field element");
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        long long coef = 1;
        bool have_coef = false;
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        if (j > i) {
            coef = std::stoll(s.substr(i, j - i));
            have_coef = true;
            i = j;
        }
        unsigned power = 0;
        if (i < s.size() && s[i] == '*')
            ++i;
        if (i < s.size() && s[i] == 'a') {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                    ++j;
                if (j == i)
                    throw ParseError("bad exponent in '" + text + "'");
                power = static_cast<unsigned>(std::stoul(s.substr(i, j - i)));
                i = j;
            }
        } else if (!have_coef) {
            throw ParseError("cannot parse field element '" + text + "'");
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw ParseError("cannot parse field element '" + text + "'");
        // reduce a^power by the modulus
        detail::ZpPoly mono(power + 1, 0);
        mono[power] = 1;
        auto red = detail::poly_mod(mono, t_->modulus, t_->p);
        for (std::size_t r = 0; r < red.size(); ++r)
            c[r] += sign * coef * static_cast<long long>(red[r]);
    }
    std::vector<unsigned> u(t_->k);
    const long long p = t_->p;
    for (unsigned r = 0; r < t_->k; ++r)
        u[r] = static_cast<unsigned>(((c[r] % p) + p) % p);
    return from_coeffs(u);
}

} // namespace nilchar

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

#include "nilchar/error.hpp"

namespace nilchar {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace detail {

/// Reduction data for Q(zeta_N): phi(N) and, for every exponent e in [0, N),
/// the integer coordinates of zeta^e in the basis 1, zeta, ..., zeta^{phi-1}.
struct CyclotomicBasis
{
    int order = 1;
    int phi = 1;
    std::vector<std::vector<std::int64_t>> power;
};

using IntPoly = std::vector<std::int64_t>; // low to high

inline IntPoly cyclotomic_polynomial(int n)
{
    // x^n - 1 divided by Phi_d for every proper divisor d
    IntPoly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0)
            continue;
        const IntPoly den = cyclotomic_polynomial(d);
        // exact division by a monic polynomial
        IntPoly quo(num.size() - den.size() + 1, 0);
        for (std::size_t i = quo.size(); i-- > 0;) {
            const auto c = num[i + den.size() - 1];
            quo[i] = c;
            for (std::size_t j = 0; j < den.size(); ++j)
                num[i + j] -= c * den[j];
        }
        num = std::move(quo);
    }
    return num;
}

inline const CyclotomicBasis& cyclotomic_basis(int n)
{
    thread_local std::unordered_map<int, std::unique_ptr<CyclotomicBasis>> cache;
    auto& slot = cache[n];
    if (slot)
        return *slot;
    auto b = std::make_unique<CyclotomicBasis>();
    const IntPoly phi_poly = cyclotomic_polynomial(n);
    b->order = n;
    b->phi = static_cast<int>(phi_poly.size()) - 1;
    b->power.assign(n, std::vector<std::int64_t>(b->phi, 0));
    std::vector<std::int64_t> cur(b->phi, 0);
    cur[0] = 1;
    for (int e = 0; e < n; ++e) {
        b->power[e] = cur;
        // multiply by x, reduce x^phi = -sum phi_poly[i] x^i
        std::vector<std::int64_t> next(b->phi, 0);
        const auto top = cur[b->phi - 1];
        for (int i = b->phi - 1; i > 0; --i)
            next[i] = cur[i - 1];
        for (int i = 0; i < b->phi; ++i)
            next[i] -= top * phi_poly[i];
        cur = std::move(next);
    }
    slot = std::move(b);
    return *slot;
}

} // namespace detail

/// An exact element of Q(zeta_N), reduced to the basis 1, zeta_N, ...,
/// zeta_N^{phi(N)-1}. Values of different orders compare and combine through
/// the embedding into Q(zeta_lcm).
class Cyclotomic
{
public:
    Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}
    Cyclotomic(Rational r) : order_(1), coeffs_(1, r) {}
    Cyclotomic(std::int64_t n) : Cyclotomic(Rational(n)) {}

    /// zeta_N^k.
    static Cyclotomic root_of_unity(int n, long long k = 1)
    {
        if (n <= 0)
            throw InvalidArgument("cyclotomic order must be positive");
        const auto& b = detail::cyclotomic_basis(n);
        Cyclotomic z;
        z.order_ = n;
        const auto e = static_cast<int>(((k % n) + n) % n);
        z.coeffs_.assign(b.phi, Rational(0));
        for (int i = 0; i < b.phi; ++i)
            z.coeffs_[i] = b.power[e][i];
        return z;
    }

    /// sum_e c[e] zeta_N^e for a dense exponent vector of length N.
    static Cyclotomic from_exponents(int n, const std::vector<Rational>& by_exponent)
    {
        const auto& b = detail::cyclotomic_basis(n);
        Cyclotomic z;
        z.order_ = n;
        z.coeffs_.assign(b.phi, Rational(0));
        for (int e = 0; e < n; ++e) {
            if (by_exponent[e].numerator() == 0)
                continue;
            for (int i = 0; i < b.phi; ++i)
                if (b.power[e][i] != 0)
                    z.coeffs_[i] += by_exponent[e] * b.power[e][i];
        }
        return z;
    }

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const
    {
        for (const auto& c : coeffs_)
            if (c.numerator() != 0)
                return false;
        return true;
    }

    bool is_rational() const
    {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i].numerator() != 0)
                return false;
        return true;
    }

    Rational rational_part() const { return coeffs_[0]; }

    /// The same value viewed in Q(zeta_M); requires N | M.
    Cyclotomic embed(int m) const
    {
        if (m == order_)
            return *this;
        if (m % order_ != 0)
            throw InvalidArgument("cannot embed Q(zeta_" + std::to_string(order_) + ") in Q(zeta_" +
                                  std::to_string(m) + ")");
        const int step = m / order_;
        std::vector<Rational> by_exp(m, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            by_exp[i * step] = coeffs_[i];
        return from_exponents(m, by_exp);
    }

    Cyclotomic conj() const
    {
        std::vector<Rational> by_exp(order_, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            by_exp[(order_ - static_cast<int>(i)) % order_] += coeffs_[i];
        return from_exponents(order_, by_exp);
    }

    Cyclotomic& operator+=(const Cyclotomic& o)
    {
        const int m = std::lcm(order_, o.order_);
        if (m != order_)
            *this = embed(m);
        if (o.order_ == m) {
            for (std::size_t i = 0; i < coeffs_.size(); ++i)
                coeffs_[i] += o.coeffs_[i];
        } else {
            const Cyclotomic e = o.embed(m);
            for (std::size_t i = 0; i < coeffs_.size(); ++i)
                coeffs_[i] += e.coeffs_[i];
        }
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }

    Cyclotomic operator-() const
    {
        Cyclotomic r = *this;
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b)
    {
        const int m = std::lcm(a.order_, b.order_);
        const Cyclotomic x = a.embed(m), y = b.embed(m);
        std::vector<Rational> by_exp(m, Rational(0));
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            if (x.coeffs_[i].numerator() == 0)
                continue;
            for (std::size_t j = 0; j < y.coeffs_.size(); ++j)
                if (y.coeffs_[j].numerator() != 0)
                    by_exp[(i + j) % m] += x.coeffs_[i] * y.coeffs_[j];
        }
        return from_exponents(m, by_exp);
    }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    friend Cyclotomic operator*(Cyclotomic a, const Rational& r)
    {
        for (auto& c : a.coeffs_)
            c *= r;
        return a;
    }
    friend Cyclotomic operator/(Cyclotomic a, const Rational& r)
    {
        if (r.numerator() == 0)
            throw DivisionByZero("cyclotomic divided by zero");
        for (auto& c : a.coeffs_)
            c /= r;
        return a;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b)
    {
        if (a.order_ == b.order_)
            return a.coeffs_ == b.coeffs_;
        const int m = std::lcm(a.order_, b.order_);
        return a.embed(m).coeffs_ == b.embed(m).coeffs_;
    }

    /// Total order: lexicographic on coordinates in the common field.
    friend int compare(const Cyclotomic& a, const Cyclotomic& b)
    {
        const int m = std::lcm(a.order_, b.order_);
        const Cyclotomic x = a.embed(m), y = b.embed(m);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            if (x.coeffs_[i] < y.coeffs_[i])
                return -1;
            if (y.coeffs_[i] < x.coeffs_[i])
                return 1;
        }
        return 0;
    }

    /// If this value is zeta_N^k, returns k in [0, N).
    std::optional<int> root_of_unity_exponent(int n) const
    {
        const int m = std::lcm(order_, n);
        const Cyclotomic v = embed(m);
        const auto& b = detail::cyclotomic_basis(m);
        const int step = m / n;
        for (int k = 0; k < m; k += step) {
            bool eq = true;
            for (int i = 0; i < b.phi && eq; ++i)
                eq = v.coeffs_[i] == Rational(b.power[k][i]);
            if (eq)
                return k / step;
        }
        return std::nullopt;
    }

    /// Human-readable exact form: "-1", "zeta3^2", "1/2*zeta4", "1+zeta8-zeta8^3".
    std::string to_string() const
    {
        if (is_rational())
            return nilchar::to_string(coeffs_[0]);
        // a rational multiple of a single root of unity prints as such
        for (int k = 1; k < order_; ++k) {
            const Cyclotomic shifted = *this * root_of_unity(order_, -k);
            if (shifted.is_rational())
                return scaled_power(shifted.coeffs_[0], k);
        }
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].numerator() == 0)
                continue;
            std::string term = i == 0 ? nilchar::to_string(coeffs_[i])
                                      : scaled_power(coeffs_[i], static_cast<int>(i));
            if (!out.empty() && term[0] != '-')
                out += "+";
            out += term;
        }
        return out;
    }

    /// {"order": N, "coeffs": {"i": "r", ...}} with zero coordinates omitted.
    nlohmann::json to_json() const
    {
        nlohmann::json c = nlohmann::json::object();
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i].numerator() != 0)
                c[std::to_string(i)] = nilchar::to_string(coeffs_[i]);
        return {{"order", order_}, {"coeffs", c}};
    }

private:
    std::string scaled_power(const Rational& r, int k) const
    {
        std::string z = "zeta" + std::to_string(order_) + (k == 1 ? "" : "^" + std::to_string(k));
        if (r == Rational(1))
            return z;
        if (r == Rational(-1))
            return "-" + z;
        return nilchar::to_string(r) + "*" + z;
    }

    int order_;
    std::vector<Rational> coeffs_;
};

inline Cyclotomic conj(const Cyclotomic& z) { return z.conj(); }

} // namespace nilchar

#pragma once

#include <cctype>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "nilchar/error.hpp"

namespace nilchar {

using BigInt = boost::multiprecision::cpp_int;

/// Z with arbitrary precision.
struct IntegerRing
{
    using value_type = BigInt;

    BigInt zero() const { return 0; }
    BigInt one() const { return 1; }
    BigInt from_int(long long n) const { return n; }
    BigInt add(const BigInt& a, const BigInt& b) const { return a + b; }
    BigInt sub(const BigInt& a, const BigInt& b) const { return a - b; }
    BigInt neg(const BigInt& a) const { return -a; }
    BigInt mul(const BigInt& a, const BigInt& b) const { return a * b; }
    bool is_zero(const BigInt& a) const { return a.is_zero(); }
    bool equal(const BigInt& a, const BigInt& b) const { return a == b; }

    std::string format(const BigInt& a) const { return a.str(); }
    BigInt parse(const std::string& s) const
    {
        try {
            return BigInt(s);
        } catch (const std::exception&) {
            throw ParseError("not an integer: '" + s + "'");
        }
    }
    nlohmann::json descriptor() const { return {{"kind", "integers"}}; }

    friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

/// An element of Z[lambda], coefficients low to high with no trailing zeros.
struct IntPolynomial
{
    std::vector<BigInt> c;

    void normalize()
    {
        while (!c.empty() && c.back().is_zero())
            c.pop_back();
    }

    /// Evaluation homomorphism Z[lambda] -> Z.
    BigInt evaluate(const BigInt& at) const
    {
        BigInt r = 0;
        for (std::size_t i = c.size(); i-- > 0;)
            r = r * at + c[i];
        return r;
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

/// Z[lambda], the one-variable integer polynomial ring.
struct PolynomialRing
{
    using value_type = IntPolynomial;

    std::string variable = "lambda";

    IntPolynomial zero() const { return {}; }
    IntPolynomial one() const { return {{BigInt(1)}}; }
    IntPolynomial from_int(long long n) const
    {
        IntPolynomial r{{BigInt(n)}};
        r.normalize();
        return r;
    }
    IntPolynomial lambda() const { return {{BigInt(0), BigInt(1)}}; }

    IntPolynomial add(const IntPolynomial& a, const IntPolynomial& b) const
    {
        IntPolynomial r = a.c.size() >= b.c.size() ? a : b;
        const auto& s = a.c.size() >= b.c.size() ? b : a;
        for (std::size_t i = 0; i < s.c.size(); ++i)
            r.c[i] += s.c[i];
        r.normalize();
        return r;
    }
    IntPolynomial neg(const IntPolynomial& a) const
    {
        IntPolynomial r = a;
        for (auto& x : r.c)
            x = -x;
        return r;
    }
    IntPolynomial sub(const IntPolynomial& a, const IntPolynomial& b) const { return add(a, neg(b)); }
    IntPolynomial mul(const IntPolynomial& a, const IntPolynomial& b) const
    {
        if (a.c.empty() || b.c.empty())
            return {};
        IntPolynomial r;
        r.c.assign(a.c.size() + b.c.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        r.normalize();
        return r;
    }
    bool is_zero(const IntPolynomial& a) const { return a.c.empty(); }
    bool equal(const IntPolynomial& a, const IntPolynomial& b) const { return a == b; }

    /// e.g. "2*lambda^2-lambda+3"
    std::string format(const IntPolynomial& a) const
    {
        if (a.c.empty())
            return "0";
        std::string out;
        for (std::size_t i = a.c.size(); i-- > 0;) {
            const BigInt& x = a.c[i];
            if (x.is_zero())
                continue;
            const bool negative = x < 0;
            const BigInt mag = negative ? BigInt(-x) : x;
            if (negative)
                out += "-";
            else if (!out.empty())
                out += "+";
            if (i == 0) {
                out += mag.str();
                continue;
            }
            if (mag != 1)
                out += mag.str() + "*";
            out += variable;
            if (i > 1)
                out += "^" + std::to_string(i);
        }
        return out;
    }

    IntPolynomial parse(const std::string& text) const
    {
        std::string s;
        for (char ch : text)
            if (ch != ' ')
                s += ch;
        if (s.empty())
            throw ParseError("empty polynomial");
        IntPolynomial r;
        std::size_t i = 0;
        while (i < s.size()) {
            bool negative = false;
            if (s[i] == '+' || s[i] == '-') {
                negative = s[i] == '-';
                ++i;
            }
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            BigInt coef = 1;
            const bool have_coef = j > i;
            if (have_coef) {
                coef = BigInt(s.substr(i, j - i));
                i = j;
            }
            std::size_t power = 0;
            if (i < s.size() && s[i] == '*')
                ++i;
            if (s.compare(i, variable.size(), variable) == 0) {
                i += variable.size();
                power = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    j = i;
                    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                        ++j;
                    if (j == i)
                        throw ParseError("bad exponent in '" + text + "'");
                    power = std::stoul(s.substr(i, j - i));
                    i = j;
                }
            } else if (!have_coef) {
                throw ParseError("cannot parse polynomial '" + text + "'");
            }
            if (i < s.size() && s[i] != '+' && s[i] != '-')
                throw ParseError("cannot parse polynomial '" + text + "'");
            if (r.c.size() <= power)
                r.c.resize(power + 1, BigInt(0));
            r.c[power] += negative ? BigInt(-coef) : coef;
        }
        r.normalize();
        return r;
    }

    nlohmann::json descriptor() const { return {{"kind", "integer-polynomials"}, {"variable", variable}}; }

    friend bool operator==(const PolynomialRing& a, const PolynomialRing& b) { return a.variable == b.variable; }
};

} // namespace nilchar

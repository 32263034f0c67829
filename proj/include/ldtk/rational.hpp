#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ldtk {

// Exact rational arithmetic for the martingale tower check. Intermediate
// products run through 128-bit integers; anything that cannot be reduced back
// into 64 bits throws instead of overflowing silently.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) { assign(n, d); }

    void assign(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational: value does not fit in 64 bits");
        num = static_cast<std::int64_t>(n);
        den = static_cast<std::int64_t>(d);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        r.assign(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                 static_cast<__int128>(a.den) * b.den);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        r.assign(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                 static_cast<__int128>(a.den) * b.den);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        r.assign(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("rational: division by zero");
        Rational r;
        r.assign(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
        return r;
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    bool is_zero() const { return num == 0; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace ldtk

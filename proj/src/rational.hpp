#pragma once
// Exact rational arithmetic on int64 numerator/denominator.
// Every operation goes through 128-bit intermediates and throws
// std::overflow_error if the reduced result does not fit in int64.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace twistchar {

inline long long checked_i64(__int128 v, const char* ctx) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error(std::string("int64 overflow in ") + ctx);
    return static_cast<long long>(v);
}

inline long long checked_add(long long a, long long b) {
    return checked_i64(static_cast<__int128>(a) + b, "add");
}

inline long long checked_mul(long long a, long long b) {
    return checked_i64(static_cast<__int128>(a) * b, "mul");
}

struct Rational {
    long long num = 0;
    long long den = 1;  // den > 0 and gcd(|num|, den) == 1 always

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        __int128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        __int128 g = gcd128(nn < 0 ? -nn : nn, dd);
        if (g > 1) { nn /= g; dd /= g; }
        num = checked_i64(nn, "Rational");
        den = checked_i64(dd, "Rational");
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    static Rational make128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num = checked_i64(n, "Rational");
        r.den = checked_i64(d, "Rational");
        return r;
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    Rational operator-() const { Rational r; r.num = checked_i64(-static_cast<__int128>(num), "neg"); r.den = den; return r; }

    Rational operator+(const Rational& o) const {
        return make128(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                       static_cast<__int128>(den) * o.den);
    }
    Rational operator-(const Rational& o) const {
        return make128(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                       static_cast<__int128>(den) * o.den);
    }
    Rational operator*(const Rational& o) const {
        return make128(static_cast<__int128>(num) * o.num,
                       static_cast<__int128>(den) * o.den);
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("Rational: division by zero");
        return make128(static_cast<__int128>(num) * o.den,
                       static_cast<__int128>(den) * o.num);
    }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    // largest integer <= value
    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    long long ceil() const {
        long long q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // accepts "n" or "n/d", optional leading '-'
    static Rational parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
        auto slash = s.find('/');
        auto parse_ll = [](const std::string& t) {
            if (t.empty()) throw std::invalid_argument("Rational::parse: bad integer");
            size_t pos = 0;
            long long v;
            try {
                v = std::stoll(t, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("Rational::parse: bad integer '" + t + "'");
            }
            if (pos != t.size()) throw std::invalid_argument("Rational::parse: trailing junk in '" + t + "'");
            return v;
        };
        if (slash == std::string::npos) return Rational(parse_ll(s));
        return Rational(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
    }
};

}  // namespace twistchar

#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace statsolve {

// Exact rational arithmetic on 64-bit numerator/denominator with 128-bit
// intermediates. Values are kept normalized: den > 0, gcd(|num|, den) = 1.
// An operation whose reduced result does not fit in int64 throws
// RationalOverflow; everything in this library operates at desk scale where
// that never triggers, but the check keeps failures loud instead of silent.
class RationalOverflow : public std::overflow_error {
public:
    RationalOverflow() : std::overflow_error("rational overflow: value outside 64-bit range") {}
};

class RationalParseError : public std::invalid_argument {
public:
    explicit RationalParseError(const std::string& what) : std::invalid_argument(what) {}
};

class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    // "p/q", or just "p" when the denominator is 1.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p" and "p/q" with optional leading '-'. Rejects q = 0.
    static Rational parse(std::string_view s) {
        if (s.empty()) throw RationalParseError("empty rational literal");
        const auto slash = s.find('/');
        const std::int64_t n = parse_int(s.substr(0, slash), s);
        if (slash == std::string_view::npos) return Rational(n);
        const std::int64_t d = parse_int(s.substr(slash + 1), s);
        if (d == 0) throw RationalParseError("zero denominator in \"" + std::string(s) + "\"");
        return Rational(n, d);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    std::int64_t ceil() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

private:
    using i128 = __int128;

    std::int64_t num_;
    std::int64_t den_;

    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        *this = from_i128(i128(n), i128(d));
    }

    static Rational from_i128(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            Rational r;
            return r;
        }
        const i128 g = gcd128(n < 0 ? -n : n, d);
        n /= g;
        d /= g;
        constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
        constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
        if (n < lo || n > hi || d > hi) throw RationalOverflow();
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            const i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static std::int64_t parse_int(std::string_view part, std::string_view whole) {
        if (part.empty()) throw RationalParseError("malformed rational \"" + std::string(whole) + "\"");
        std::size_t i = 0;
        bool neg = false;
        if (part[0] == '-') {
            neg = true;
            i = 1;
            if (part.size() == 1) throw RationalParseError("malformed rational \"" + std::string(whole) + "\"");
        }
        i128 v = 0;
        for (; i < part.size(); ++i) {
            const char c = part[i];
            if (c < '0' || c > '9')
                throw RationalParseError("malformed rational \"" + std::string(whole) + "\"");
            v = v * 10 + (c - '0');
            if (v > i128(std::numeric_limits<std::int64_t>::max())) throw RationalOverflow();
        }
        return neg ? static_cast<std::int64_t>(-v) : static_cast<std::int64_t>(v);
    }
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace statsolve

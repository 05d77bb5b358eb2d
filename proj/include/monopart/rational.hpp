#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "monopart/errors.hpp"

namespace monopart {

// Exact rational arithmetic for edge densities and thresholds. Densities are
// ratios of integers bounded by n^2, so int64 components with __int128
// intermediates never overflow at the scales this library handles.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw precondition_error("Rational: zero denominator");
        normalize();
    }
    // NOLINTNEXTLINE: implicit conversion from integers is intended
    Rational(std::int64_t num) : num_(num), den_(1) {}

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    static Rational from_decimal(const std::string& text);

    Rational operator-() const { return raw(-num_, den_); }
    Rational abs() const { return raw(num_ < 0 ? -num_ : num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw precondition_error("Rational: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

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

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using i128 = __int128;

    static Rational make(i128 num, i128 den) {
        if (den < 0) { num = -num; den = -den; }
        i128 a = num < 0 ? -num : num;
        i128 b = den;
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        if (a != 0) { num /= a; den /= a; }
        Rational r;
        r.num_ = clamp64(num, "numerator");
        r.den_ = clamp64(den, "denominator");
        return r;
    }
    static std::int64_t clamp64(i128 v, const char* what) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw precondition_error(std::string("Rational: ") + what + " overflow");
        return static_cast<std::int64_t>(v);
    }
    static Rational raw(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Accepts "3", "0.25", ".5", "1/4".
inline Rational Rational::from_decimal(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational literal");
    auto to_int = [&text](const std::string& s) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            throw parse_error("bad rational literal: " + text);
        }
        if (used != s.size()) throw parse_error("bad rational literal: " + text);
        return v;
    };
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t n = to_int(text.substr(0, slash));
        std::int64_t d = to_int(text.substr(slash + 1));
        if (d == 0) throw parse_error("bad rational literal: " + text);
        return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(to_int(text), 1);
    bool neg = text[0] == '-';
    std::string whole = text.substr(neg ? 1 : 0, dot - (neg ? 1 : 0));
    std::string frac = text.substr(dot + 1);
    if (frac.size() > 18) frac.resize(18);
    for (char c : frac)
        if (c < '0' || c > '9') throw parse_error("bad rational literal: " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t num = (whole.empty() ? 0 : to_int(whole)) * den + (frac.empty() ? 0 : to_int(frac));
    return Rational(neg ? -num : num, den);
}

}  // namespace monopart

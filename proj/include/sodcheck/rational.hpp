#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sodcheck {

namespace detail {

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow (add)");
    return r;
}

inline long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow (sub)");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow (mul)");
    return r;
}

} // namespace detail

/* Exact rational on 64-bit integers, always normalized: gcd(num,den) = 1,
   den > 0. Arithmetic throws std::overflow_error rather than wrapping;
   every quantity in this toolkit is a small integer or small fraction. */
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    /* Value as integer; throws if the rational is not integral. */
    long long as_integer() const {
        if (den_ != 1)
            throw std::domain_error("rational is not an integer: " + str());
        return num_;
    }

    Rational operator-() const {
        Rational r;
        r.num_ = detail::checked_sub(0, num_);
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        using detail::checked_add;
        using detail::checked_mul;
        const long long g = std::gcd(a.den_, b.den_);
        const long long bd = b.den_ / g;
        const long long n =
            checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g));
        return Rational(n, checked_mul(a.den_, bd));
    }

    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    friend Rational operator*(const Rational& a, const Rational& b) {
        // Cross-reduce first to keep intermediates small.
        const long long g1 = std::gcd(std::abs(a.num_), b.den_);
        const long long g2 = std::gcd(std::abs(b.num_), a.den_);
        Rational r;
        r.num_ = detail::checked_mul(a.num_ / g1, b.num_ / g2);
        r.den_ = detail::checked_mul(a.den_ / g2, b.den_ / g1);
        return r;
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0)
            throw std::domain_error("rational division by zero");
        return a * Rational(b.den_, b.num_);
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
        return detail::checked_mul(a.num_, b.den_) < detail::checked_mul(b.num_, a.den_);
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    void normalize() {
        if (den_ == 0)
            throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = detail::checked_sub(0, num_);
            den_ = detail::checked_sub(0, den_);
        }
        const long long g = std::gcd(std::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0)
            den_ = 1;
    }

    long long num_;
    long long den_;
};

} // namespace sodcheck

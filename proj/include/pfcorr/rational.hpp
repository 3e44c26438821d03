#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "pfcorr/errors.hpp"

namespace pfcorr {

/// Arbitrary-precision rational, always reduced, denominator > 0.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT: implicit by design
    Rational(long num, long den);
    /// Parses "n", "-n", or "n/d".
    static Rational parse(const std::string& s);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const;
    /// Integer power; pow(0,0) = 1 by convention.
    Rational pow(long k) const;

    /// "n" or "n/d", denominator positive, lowest terms.
    std::string str() const;
    std::string numerator_str() const;
    std::string denominator_str() const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class v_;
};

inline Rational factorial_inverse(long n) {
    Rational r(1);
    for (long k = 2; k <= n; ++k) r /= Rational(k);
    return r;
}

inline Rational factorial(long n) {
    Rational r(1);
    for (long k = 2; k <= n; ++k) r *= Rational(k);
    return r;
}

}  // namespace pfcorr

#pragma once

#include <iosfwd>
#include <string>

#include "pfcorr/rational.hpp"

namespace pfcorr {

/// Element of Q(i): re + im*i with exact rational parts.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design
    GaussianRational(long n) : re(n) {}                 // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational nr = re * o.re - im * o.im;
        Rational ni = re * o.im + im * o.re;
        re = std::move(nr);
        im = std::move(ni);
        return *this;
    }
    GaussianRational inverse() const {
        if (is_zero()) throw InvertNonUnit("inverse of zero Gaussian rational");
        Rational n = norm();
        return {re / n, -im / n};
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// "0", "3/4", "1/2i", "(1+1/2i)", "(1/3-2i)"
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g);
};

/// i^k for any integer k.
GaussianRational i_power(long k);

}  // namespace pfcorr

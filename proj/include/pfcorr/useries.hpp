#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pfcorr/gaussian.hpp"

namespace pfcorr {

/// Truncated formal power series in u over Q(i), exact modulo u^(order+1).
///
/// Binary operations truncate the result to the smaller operand order;
/// equality compares coefficients up to the smaller order.
class USeries {
public:
    USeries() : order_(0), c_(1) {}
    explicit USeries(int order) : order_(order), c_(order + 1) {}
    USeries(int order, GaussianRational constant) : order_(order), c_(order + 1) {
        c_[0] = std::move(constant);
    }

    static USeries zero(int order) { return USeries(order); }
    static USeries one(int order) { return USeries(order, GaussianRational(1)); }
    static USeries monomial(GaussianRational coeff, long degree, int order);

    int order() const { return order_; }
    bool is_zero() const;
    /// Valuation: index of first nonzero coefficient; order()+1 when zero mod u^(order+1).
    int ord() const;

    const GaussianRational& coeff(int k) const;
    GaussianRational& coeff_mut(int k);
    GaussianRational constant_term() const { return c_[0]; }

    USeries truncated(int order) const;
    /// Substitutes u -> u^s (coefficients move to degree s*k), same truncation order.
    USeries stretched(int s) const;

    USeries operator-() const;
    USeries& operator+=(const USeries& o);
    USeries& operator-=(const USeries& o);
    friend USeries operator+(const USeries& a, const USeries& b);
    friend USeries operator-(const USeries& a, const USeries& b);
    friend USeries operator*(const USeries& a, const USeries& b);

    USeries& operator*=(const USeries& o) { return *this = *this * o; }
    USeries scaled(const GaussianRational& c) const;

    /// Multiplicative inverse; requires nonzero constant term.
    USeries inverted() const;
    USeries operator/(const USeries& o) const { return *this * o.inverted(); }

    /// Square root with prescribed constant term c0 (c0^2 must equal the constant term).
    USeries sqrt_with_constant(const GaussianRational& c0) const;

    friend bool operator==(const USeries& a, const USeries& b);
    friend bool operator!=(const USeries& a, const USeries& b) { return !(a == b); }

    /// Human-readable polynomial form, e.g. "1 - u^2 + 3/4u^4".
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const USeries& s);

private:
    int order_;
    std::vector<GaussianRational> c_;
};

}  // namespace pfcorr
